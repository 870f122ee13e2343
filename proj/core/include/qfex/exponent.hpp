#pragma once

// Scalar information quantities and bounds: base-d entropy and divergence,
// the error exponent E(R,P) = min_Q [ D(Q||P) + |1 - H(Q) - R|^+ ] with two
// independent solvers, the capacity lower bound 1 - H(P), the hashing-bound
// entropy H1 and its threshold, the entangled-overlap parameter p', and the
// finite-n fidelity bound.

#include <cstdint>

#include "qfex/channel.hpp"

namespace qfex {

/// Entropy of Q in base-d logarithms; 0 log 0 = 0.
double entropy(const ErrorDistribution& Q);

/// D(Q||P) in base-d logarithms; +infinity when supp Q is not inside supp P.
double divergence(const ErrorDistribution& Q, const ErrorDistribution& P);

struct ExponentResult {
  double value = 0.0;             // E(R,P), base-d exponent, >= 0
  ErrorDistribution minimizer;    // Q*
  bool positive_branch = false;   // whether |1 - H(Q*) - R|^+ > 0 at Q*
  int iterations = 0;
};

struct ExponentOptions {
  double objective_tol = 1e-12;
  int max_iterations = 100000;
};

/// Primal solver: mirror descent on the simplex restricted to supp(P), with
/// annealed smoothing of the positive-part kink. Authoritative value.
ExponentResult error_exponent(double rate, const ErrorDistribution& P,
                              const ExponentOptions& options = {});

/// Independent cross-check: scan the one-parameter family
/// Q_s(v) proportional to P(v)^{1/(1+s)}, s in [0,1], for the minimum of the
/// same objective. With cross_validate set, also runs the primal solver and
/// throws solver_inconsistency if the two values differ by more than 1e-6.
ExponentResult error_exponent_tilted(double rate, const ErrorDistribution& P,
                                     bool cross_validate = true);

/// 1 - H(P); may be negative, returned raw.
double capacity_lower_bound(const ErrorDistribution& P);

/// H1(p) = -p log2 p - (1-p) log2(1-p) + p log2 3, in bits.
double hashing_entropy(double p);

/// Root p* of 1 - H1(p) on (0, 1/2), located by bisection.
double hashing_threshold();

/// Binary entropy h(x) in bits.
double binary_entropy(double x);

/// Closed form of 1 - H(P_A) for the amplitude-damping channel:
/// 1 - h(g/2) - (1 - g/2) h(1/2 + sqrt(1-g)/(2-g)) - g/2.
double amplitude_damping_capacity_formula(double gamma);

struct EntangledMaximum {
  double p_prime = 0.0;      // 1 - max_eta <eta| Choi |eta>
  double overlap = 0.0;      // the attained maximum
  Eigen::Vector4cd eta;      // maximizer, a maximally entangled state
};

/// Maximize <eta|[I tensor A](Phi+)|eta> over maximally entangled eta
/// parameterized as (x, y, -y*, x*)^t with |x|^2 + |y|^2 = 1/2 (d = 2 only).
/// Multi-start projected ascent over the 4 real parameters.
EntangledMaximum entangled_overlap_maximum(const QuantumChannel& ch,
                                           std::uint64_t seed = 1,
                                           int starts = 16);

struct BoundReport {
  double capacity_lb = 0.0;               // 1 - H(P_A), standard basis
  double capacity_lb_preprocessed = 0.0;  // 1 - H(P_{UA}) for the built U
  double rival_lb = 0.0;                  // 1 - H1(p')
  double p_prime = 0.0;
  double p_ua_identity = 0.0;             // P_{UA}((0,0)); equals 1 - p'
  Eigen::Vector4cd eta;                   // maximizing entangled state
};

/// Builds the unitary preprocessing from the p' maximizer, forms UA, and
/// checks 1 - H(P_{UA}) >= 1 - H1(p') - 1e-8 as well as
/// P_{UA}((0,0)) = 1 - p' within 1e-6; violations throw invariant_violation.
/// d = 2 only.
BoundReport bound_comparison(const QuantumChannel& ch, std::uint64_t seed = 1);

/// Right-hand side 1 - 2 d^2 (n+1)^{2(d^2-1)} d^{-n E(R,P)}; may be negative
/// for small n and is returned as-is. Preconditions: 0 <= R <= 1 and
/// 0 <= k <= ceil(R n).
double fidelity_bound(std::uint32_t n, std::uint32_t k, double rate,
                      const ErrorDistribution& P,
                      const ExponentOptions& options = {});

struct BasisSearchResult {
  double capacity_lb = 0.0;      // best found 1 - H(P_{UA,N})
  DenseOperator frame;           // basis frame of the best N
  std::uint32_t root_index = 1;  // omega choice of the best N
  DenseOperator preprocessing;   // Kraus operator of the best unitary map
  int samples = 0;
};

/// Random search over error bases N (random frames and primitive roots) and
/// unitary preprocessing maps for the largest 1 - H(P_{UA,N}). The identity
/// baseline and, at d = 2, the overlap-aligned preprocessing are always
/// among the candidates, so the result never falls below either. Exhaustive
/// maximization is not attempted.
BasisSearchResult random_basis_search(const QuantumChannel& ch, int samples,
                                      std::uint64_t seed);

}  // namespace qfex
