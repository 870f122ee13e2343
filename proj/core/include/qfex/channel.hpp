#pragma once

// Kraus-operator channel algebra on prime-dimensional systems: the unitary
// error basis N_(i,j) = X^i Z^j, expansion coefficients in that basis, the
// induced error distribution P_A, Choi states, and Kraus recovery from a
// Choi state.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qfex/errors.hpp"
#include "qfex/gfsym.hpp"

namespace qfex {

using Complex = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

constexpr double kTpTolerance = 1e-9;
constexpr double kCpTolerance = 1e-10;
constexpr double kReconstructTolerance = 1e-12;

/// The d^2 unitaries N_(i,j) = X^i Z^j where X lowers the basis index
/// cyclically (X|j> = |j-1 mod d>) and Z|j> = omega^j |j>. Orthonormal under
/// <N,M> = Tr(N^dag M)/d. The basis may be built over any orthonormal frame
/// {|b_j>} (columns of a unitary) and any primitive d-th root of unity.
class ErrorBasis {
 public:
  /// Computational basis, omega = exp(2 pi i k / d), gcd(k, d) = 1.
  static ErrorBasis standard(std::uint32_t d, std::uint32_t root_index = 1);
  /// Basis kets |b_j> = columns of the unitary V.
  static ErrorBasis from_frame(const DenseOperator& V,
                               std::uint32_t root_index = 1);

  std::uint32_t d() const { return d_; }
  Complex omega() const { return omega_; }
  /// N_(i,j); also addressable by flat symbol index i*d + j.
  const DenseOperator& op(std::uint32_t i, std::uint32_t j) const {
    return ops_[i * d_ + j];
  }
  const DenseOperator& op(std::uint32_t symbol) const { return ops_[symbol]; }
  Ket ket(std::uint32_t j) const { return frame_.col(j); }
  const DenseOperator& frame() const { return frame_; }

 private:
  ErrorBasis(std::uint32_t d, DenseOperator frame, std::uint32_t root_index);
  std::uint32_t d_;
  DenseOperator frame_;
  Complex omega_;
  std::vector<DenseOperator> ops_;
};

/// Probability distribution on the error alphabet X = {0..d-1}^2, indexed by
/// symbol i*d + j.
struct ErrorDistribution {
  std::uint32_t d = 2;
  std::vector<double> p;

  ErrorDistribution() = default;
  /// Validates size d^2, nonnegativity and normalization within 1e-9.
  ErrorDistribution(std::uint32_t d, std::vector<double> probs);
  static ErrorDistribution point_mass(std::uint32_t d, std::uint32_t symbol = 0);
  static ErrorDistribution uniform(std::uint32_t d);

  std::size_t size() const { return p.size(); }
  double operator()(std::uint32_t i, std::uint32_t j) const {
    return p[i * d + j];
  }
  double operator[](std::uint32_t symbol) const { return p[symbol]; }
};

/// A trace-preserving channel given by Kraus operators on (C^d)^{tensor m}.
struct QuantumChannel {
  std::uint32_t d = 2;  // prime single-system dimension
  std::uint32_t m = 1;  // number of tensor factors
  std::vector<DenseOperator> kraus;

  /// Validates: d prime, all operators d^m x d^m with finite entries, at most
  /// (d^m)^2 of them, and sum A^dag A = I within 1e-9 (the diagnostic reports
  /// the max-norm deviation).
  QuantumChannel(std::uint32_t d, std::uint32_t m,
                 std::vector<DenseOperator> kraus);

  std::uint64_t dim() const;

  static QuantumChannel identity(std::uint32_t d = 2);
  /// P(0) = 1 - p, every other symbol p / (d^2 - 1).
  static QuantumChannel depolarizing(double p, std::uint32_t d = 2);
  static QuantumChannel amplitude_damping(double gamma);
  /// Kraus {sqrt(1-q) I, sqrt(q) Z}.
  static QuantumChannel dephasing(double q);
  /// Kraus {sqrt(P(u)) N_u} over the given basis.
  static QuantumChannel pauli(const ErrorDistribution& P,
                              const ErrorBasis& basis);
  static QuantumChannel pauli(const ErrorDistribution& P);

  QuantumChannel tensor_power(std::uint32_t n) const;
};

/// Coefficients a_v = Tr(N_v^dag A)/d of A = sum_v a_v N_v, indexed by symbol.
std::vector<Complex> expand_in_error_basis(const DenseOperator& A,
                                           const ErrorBasis& basis);

/// P_A(v) = sum_u |a_uv|^2 for a single-system channel. Independent of the
/// chosen Kraus representation.
ErrorDistribution error_distribution(const QuantumChannel& ch,
                                     const ErrorBasis& basis);
ErrorDistribution error_distribution(const QuantumChannel& ch);

/// The memoryless product P^n over X^n, evaluated lazily.
class ProductDistribution {
 public:
  ProductDistribution(ErrorDistribution base, std::uint32_t n);

  std::uint32_t n() const { return n_; }
  const ErrorDistribution& base() const { return base_; }
  /// P^n(y) for a tuple of symbols (one per factor).
  double operator()(const std::vector<std::uint32_t>& symbols) const;
  /// P^n of the error vector encoded in a SymplecticVector of length 2n.
  double operator()(const SymplecticVector& x) const;
  /// Exhaustive sum over X^n; requires d^{2n} <= 2^20.
  double total() const;

 private:
  ErrorDistribution base_;
  std::uint32_t n_;
};

/// [I tensor A](|Phi+><Phi+|) with |Phi+> = d^{-1/2} sum_j |jj>. Hermitian,
/// PSD within 1e-10 and unit trace; a negative eigenvalue below tolerance
/// throws validation_error.
DenseOperator choi_state(const QuantumChannel& ch);

/// Kraus set recovered from a Choi state by eigendecomposition of d*M.
/// Round-trips with choi_state within 1e-9; trace preservation of the result
/// is validated.
QuantumChannel kraus_from_choi(const DenseOperator& M, std::uint32_t d);

/// Channel {U A_u}: apply ch, then the unitary map rho -> U rho U^dag.
QuantumChannel compose_unitary(const DenseOperator& U,
                               const QuantumChannel& ch);

DenseOperator apply_channel(const QuantumChannel& ch, const DenseOperator& rho);

/// N_x = N_(u_1,v_1) tensor ... tensor N_(u_n,v_n) for x in F_d^{2n}.
DenseOperator error_operator(const ErrorBasis& basis,
                             const SymplecticVector& x);

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

bool is_unitary(const DenseOperator& U, double tol = kTpTolerance);

}  // namespace qfex
