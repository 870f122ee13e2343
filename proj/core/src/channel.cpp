#include "qfex/channel.hpp"

#include <cmath>
#include <numbers>

namespace qfex {

namespace {

void require_finite(const DenseOperator& A, const char* what) {
  if (!A.allFinite())
    throw validation_error(std::string(what) + ": non-finite matrix entry");
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_unitary(const DenseOperator& U, double tol) {
  if (U.rows() != U.cols()) return false;
  return (U.adjoint() * U - DenseOperator::Identity(U.rows(), U.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

ErrorBasis::ErrorBasis(std::uint32_t d, DenseOperator frame,
                       std::uint32_t root_index)
    : d_(d), frame_(std::move(frame)) {
  if (!is_prime(d)) throw argument_error("error basis needs a prime dimension");
  if (root_index == 0 || root_index % d == 0)
    throw argument_error("root index must be coprime to d");
  if (frame_.rows() != d_ || frame_.cols() != d_ || !is_unitary(frame_))
    throw argument_error("basis frame must be a d x d unitary");

  omega_ = std::exp(Complex(0.0, 2.0 * std::numbers::pi * root_index / d));
  DenseOperator x_shift = DenseOperator::Zero(d, d);
  DenseOperator z_phase = DenseOperator::Zero(d, d);
  for (std::uint32_t j = 0; j < d; ++j) {
    x_shift((j + d - 1) % d, j) = 1.0;  // X|j> = |j-1 mod d>
    z_phase(j, j) = std::pow(omega_, static_cast<double>(j));
  }
  ops_.reserve(static_cast<std::size_t>(d) * d);
  DenseOperator xi = DenseOperator::Identity(d, d);
  for (std::uint32_t i = 0; i < d; ++i) {
    DenseOperator xizj = xi;
    for (std::uint32_t j = 0; j < d; ++j) {
      ops_.push_back(frame_ * xizj * frame_.adjoint());
      xizj = xizj * z_phase;
    }
    xi = xi * x_shift;
  }
}

ErrorBasis ErrorBasis::standard(std::uint32_t d, std::uint32_t root_index) {
  return ErrorBasis(d, DenseOperator::Identity(d, d), root_index);
}

ErrorBasis ErrorBasis::from_frame(const DenseOperator& V,
                                  std::uint32_t root_index) {
  return ErrorBasis(static_cast<std::uint32_t>(V.rows()), V, root_index);
}

ErrorDistribution::ErrorDistribution(std::uint32_t d_in,
                                     std::vector<double> probs)
    : d(d_in), p(std::move(probs)) {
  if (!is_prime(d)) throw argument_error("distribution needs a prime d");
  if (p.size() != static_cast<std::size_t>(d) * d)
    throw dimension_error("distribution must have d^2 entries");
  double sum = 0.0;
  for (double& x : p) {
    if (x < 0.0) {
      if (x < -1e-12) throw validation_error("negative probability");
      x = 0.0;
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kTpTolerance)
    throw validation_error("probabilities sum to " + std::to_string(sum));
}

ErrorDistribution ErrorDistribution::point_mass(std::uint32_t d,
                                                std::uint32_t symbol) {
  std::vector<double> p(static_cast<std::size_t>(d) * d, 0.0);
  p.at(symbol) = 1.0;
  return ErrorDistribution(d, std::move(p));
}

ErrorDistribution ErrorDistribution::uniform(std::uint32_t d) {
  std::vector<double> p(static_cast<std::size_t>(d) * d,
                        1.0 / (static_cast<double>(d) * d));
  return ErrorDistribution(d, std::move(p));
}

QuantumChannel::QuantumChannel(std::uint32_t d_in, std::uint32_t m_in,
                               std::vector<DenseOperator> kraus_in)
    : d(d_in), m(m_in), kraus(std::move(kraus_in)) {
  if (!is_prime(d)) throw argument_error("channel dimension must be prime");
  if (m == 0) throw argument_error("channel needs at least one factor");
  const std::uint64_t dm = ipow(d, m);
  if (dm > 4096) throw resource_error("channel dimension d^m too large");
  if (kraus.empty()) throw argument_error("channel needs Kraus operators");
  if (kraus.size() > dm * dm)
    throw argument_error("more than (d^m)^2 Kraus operators");
  DenseOperator acc = DenseOperator::Zero(dm, dm);
  for (const auto& A : kraus) {
    require_finite(A, "Kraus operator");
    if (A.rows() != static_cast<Eigen::Index>(dm) ||
        A.cols() != static_cast<Eigen::Index>(dm))
      throw dimension_error("Kraus operator has wrong dimension");
    acc += A.adjoint() * A;
  }
  const double dev =
      (acc - DenseOperator::Identity(dm, dm)).cwiseAbs().maxCoeff();
  if (dev > kTpTolerance)
    throw validation_error(
        "channel is not trace preserving: max|sum A^dag A - I| = " +
        std::to_string(dev));
}

std::uint64_t QuantumChannel::dim() const { return ipow(d, m); }

QuantumChannel QuantumChannel::identity(std::uint32_t d) {
  return QuantumChannel(d, 1, {DenseOperator::Identity(d, d)});
}

QuantumChannel QuantumChannel::depolarizing(double p, std::uint32_t d) {
  if (p < 0.0 || p > 1.0) throw argument_error("depolarizing needs p in [0,1]");
  const std::size_t symbols = static_cast<std::size_t>(d) * d;
  std::vector<double> probs(symbols, p / (symbols - 1));
  probs[0] = 1.0 - p;
  return pauli(ErrorDistribution(d, std::move(probs)));
}

QuantumChannel QuantumChannel::amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw argument_error("amplitude damping needs gamma in [0,1]");
  DenseOperator a0(2, 2), a1(2, 2);
  a0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - gamma);
  a1 << 0.0, std::sqrt(gamma), 0.0, 0.0;
  return QuantumChannel(2, 1, {a0, a1});
}

QuantumChannel QuantumChannel::dephasing(double q) {
  if (q < 0.0 || q > 1.0) throw argument_error("dephasing needs q in [0,1]");
  DenseOperator z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  return QuantumChannel(
      2, 1,
      {std::sqrt(1.0 - q) * DenseOperator::Identity(2, 2), std::sqrt(q) * z});
}

QuantumChannel QuantumChannel::pauli(const ErrorDistribution& P,
                                     const ErrorBasis& basis) {
  if (P.d != basis.d()) throw dimension_error("distribution/basis mismatch");
  std::vector<DenseOperator> ops;
  for (std::uint32_t s = 0; s < P.size(); ++s)
    if (P[s] > 0.0) ops.push_back(std::sqrt(P[s]) * basis.op(s));
  return QuantumChannel(P.d, 1, std::move(ops));
}

QuantumChannel QuantumChannel::pauli(const ErrorDistribution& P) {
  return pauli(P, ErrorBasis::standard(P.d));
}

QuantumChannel QuantumChannel::tensor_power(std::uint32_t n) const {
  if (n == 0) throw argument_error("tensor power needs n >= 1");
  const std::uint64_t dn = ipow(ipow(d, m), n);
  if (dn > 4096) throw resource_error("tensor power dimension too large");
  std::vector<DenseOperator> ops = {DenseOperator::Identity(1, 1)};
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<DenseOperator> next;
    next.reserve(ops.size() * kraus.size());
    for (const auto& a : ops)
      for (const auto& b : kraus) next.push_back(kron(a, b));
    ops = std::move(next);
  }
  return QuantumChannel(d, m * n, std::move(ops));
}

std::vector<Complex> expand_in_error_basis(const DenseOperator& A,
                                           const ErrorBasis& basis) {
  const std::uint32_t d = basis.d();
  if (A.rows() != d || A.cols() != d)
    throw dimension_error("operator dimension does not match the basis");
  require_finite(A, "expand_in_error_basis");
  std::vector<Complex> coeff(static_cast<std::size_t>(d) * d);
  for (std::uint32_t s = 0; s < coeff.size(); ++s)
    coeff[s] = (basis.op(s).adjoint() * A).trace() / static_cast<double>(d);
  return coeff;
}

ErrorDistribution error_distribution(const QuantumChannel& ch,
                                     const ErrorBasis& basis) {
  if (ch.m != 1)
    throw argument_error("error distribution is defined per single factor");
  if (ch.d != basis.d()) throw dimension_error("channel/basis mismatch");
  std::vector<double> p(static_cast<std::size_t>(ch.d) * ch.d, 0.0);
  for (const auto& A : ch.kraus) {
    const auto coeff = expand_in_error_basis(A, basis);
    for (std::size_t s = 0; s < p.size(); ++s) p[s] += std::norm(coeff[s]);
  }
  return ErrorDistribution(ch.d, std::move(p));
}

ErrorDistribution error_distribution(const QuantumChannel& ch) {
  return error_distribution(ch, ErrorBasis::standard(ch.d));
}

ProductDistribution::ProductDistribution(ErrorDistribution base,
                                         std::uint32_t n)
    : base_(std::move(base)), n_(n) {
  if (n == 0) throw argument_error("product distribution needs n >= 1");
}

double ProductDistribution::operator()(
    const std::vector<std::uint32_t>& symbols) const {
  if (symbols.size() != n_)
    throw dimension_error("product distribution expects n symbols");
  double v = 1.0;
  for (std::uint32_t s : symbols) v *= base_.p.at(s);
  return v;
}

double ProductDistribution::operator()(const SymplecticVector& x) const {
  if (x.n() != n_ || x.d() != base_.d)
    throw dimension_error("vector does not match the product distribution");
  double v = 1.0;
  for (std::uint32_t i = 0; i < n_; ++i) v *= base_.p[x.symbol(i)];
  return v;
}

double ProductDistribution::total() const {
  const std::size_t symbols = base_.size();
  double count = std::pow(static_cast<double>(symbols), n_);
  if (count > static_cast<double>(1 << 20))
    throw resource_error("exhaustive product sum exceeds the 2^20 cap");
  std::vector<std::uint32_t> tuple(n_, 0);
  double sum = 0.0;
  while (true) {
    sum += (*this)(tuple);
    std::size_t k = n_;
    while (k > 0) {
      if (++tuple[k - 1] < symbols) break;
      tuple[k - 1] = 0;
      --k;
    }
    if (k == 0) return sum;
  }
}

DenseOperator choi_state(const QuantumChannel& ch) {
  if (ch.m != 1) throw argument_error("Choi state is defined per single factor");
  const std::uint32_t d = ch.d;
  DenseOperator M = DenseOperator::Zero(d * d, d * d);
  // [I tensor A](|Phi+><Phi+|), index layout (i,k) = i*d + k with i the
  // reference index and k the channel output index.
  for (const auto& A : ch.kraus)
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t j = 0; j < d; ++j)
        for (std::uint32_t k = 0; k < d; ++k)
          for (std::uint32_t l = 0; l < d; ++l)
            M(i * d + k, j * d + l) +=
                A(k, i) * std::conj(A(l, j)) / static_cast<double>(d);

  Eigen::SelfAdjointEigenSolver<DenseOperator> es(0.5 * (M + M.adjoint()));
  if (es.eigenvalues().minCoeff() < -kCpTolerance)
    throw validation_error("Choi state has a negative eigenvalue: CP violated");
  return M;
}

QuantumChannel kraus_from_choi(const DenseOperator& M, std::uint32_t d) {
  if (M.rows() != static_cast<Eigen::Index>(d) * d ||
      M.cols() != static_cast<Eigen::Index>(d) * d)
    throw dimension_error("Choi matrix must be d^2 x d^2");
  require_finite(M, "kraus_from_choi");
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(0.5 * (M + M.adjoint()));
  if (es.eigenvalues().minCoeff() < -kCpTolerance)
    throw validation_error("Choi matrix is not PSD: CP violated");

  // d*M = sum_x a_x^dag a_x with rows a_x; the operator recovered from the
  // eigenpair (lambda, v) has entries A(k, i) = sqrt(d lambda) v_(i*d+k).
  std::vector<DenseOperator> ops;
  for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e) {
    const double lam = es.eigenvalues()(e);
    if (lam <= kCpTolerance) continue;
    const double scale = std::sqrt(static_cast<double>(d) * lam);
    DenseOperator A(d, d);
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t k = 0; k < d; ++k)
        A(k, i) = scale * es.eigenvectors()(i * d + k, e);
    ops.push_back(std::move(A));
  }
  // The channel constructor re-validates trace preservation.
  return QuantumChannel(d, 1, std::move(ops));
}

QuantumChannel compose_unitary(const DenseOperator& U,
                               const QuantumChannel& ch) {
  if (U.rows() != static_cast<Eigen::Index>(ch.dim()) || !is_unitary(U))
    throw argument_error("preprocessing operator must be unitary");
  std::vector<DenseOperator> ops;
  ops.reserve(ch.kraus.size());
  for (const auto& A : ch.kraus) ops.push_back(U * A);
  return QuantumChannel(ch.d, ch.m, std::move(ops));
}

DenseOperator apply_channel(const QuantumChannel& ch,
                            const DenseOperator& rho) {
  const auto dm = static_cast<Eigen::Index>(ch.dim());
  if (rho.rows() != dm || rho.cols() != dm)
    throw dimension_error("state dimension does not match the channel");
  DenseOperator out = DenseOperator::Zero(dm, dm);
  for (const auto& A : ch.kraus) out += A * rho * A.adjoint();
  return out;
}

DenseOperator error_operator(const ErrorBasis& basis,
                             const SymplecticVector& x) {
  if (x.d() != basis.d()) throw dimension_error("vector/basis modulus mismatch");
  DenseOperator out = basis.op(x.symbol(0));
  for (std::uint32_t i = 1; i < x.n(); ++i)
    out = kron(out, basis.op(x.symbol(i)));
  return out;
}

}  // namespace qfex
