#include "qfex/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "qfex/util.hpp"

namespace qfex {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Compressed composed Kraus set: M_{ij} = E^dag R_i A_j E, one K x K matrix
// per (recovery, channel) pair. The fidelity of psi = E c in the code space
// is sum_m |c^dag M_m c|^2.
std::vector<DenseOperator> compress_composed(const DenseOperator& frame,
                                             const QuantumChannel& ch_n,
                                             const RecoveryMap& rec) {
  std::vector<DenseOperator> left;  // E^dag R_i
  left.reserve(rec.kraus.size());
  for (const auto& R : rec.kraus) left.push_back(frame.adjoint() * R);
  std::vector<DenseOperator> right;  // A_j E
  right.reserve(ch_n.kraus.size());
  for (const auto& A : ch_n.kraus) right.push_back(A * frame);
  std::vector<DenseOperator> out;
  out.reserve(left.size() * right.size());
  for (const auto& l : left)
    for (const auto& r : right) out.push_back(l * r);
  return out;
}

double compressed_fidelity(const std::vector<DenseOperator>& mats,
                           const Eigen::VectorXcd& c) {
  double f = 0.0;
  for (const auto& M : mats) f += std::norm((c.adjoint() * (M * c))(0));
  return f;
}

// Wirtinger gradient d f / d c-bar of sum_m |c^dag M c|^2.
Eigen::VectorXcd compressed_gradient(const std::vector<DenseOperator>& mats,
                                     const Eigen::VectorXcd& c) {
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(c.size());
  for (const auto& M : mats) {
    const Eigen::VectorXcd mc = M * c;
    const Eigen::VectorXcd mtc = M.adjoint() * c;
    const Complex z = (c.adjoint() * mc)(0);
    g += std::conj(z) * mc + z * mtc;
  }
  return g;
}

struct StateMinimum {
  double value = 1.0;
  Eigen::VectorXcd coeff;
  double gradient_norm = 0.0;
  int iterations = 0;
};

// Projected gradient descent on the unit sphere of C^K with backtracking.
StateMinimum minimize_state(const std::vector<DenseOperator>& mats,
                            Eigen::Index K, const OptimizerOptions& options,
                            const std::vector<Eigen::VectorXcd>& extra_starts) {
  Rng rng(options.seed);
  StateMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  int total_iterations = 0;

  std::vector<Eigen::VectorXcd> starts = extra_starts;
  for (int s = 0; s < options.starts; ++s) {
    Eigen::VectorXcd c(K);
    for (Eigen::Index i = 0; i < K; ++i) c(i) = Complex(rng.normal(), rng.normal());
    starts.push_back(c.normalized());
  }

  for (auto& c : starts) {
    c.normalize();
    double f = compressed_fidelity(mats, c);
    double step = 1.0;
    double gnorm = 0.0;
    for (int it = 0; it < options.max_iterations; ++it) {
      ++total_iterations;
      Eigen::VectorXcd g = compressed_gradient(mats, c);
      g -= (c.adjoint() * g)(0) * c;  // tangent component
      gnorm = g.norm();
      if (gnorm <= options.gradient_tol) break;
      bool accepted = false;
      double eta = step;
      for (int bt = 0; bt < 50; ++bt) {
        const Eigen::VectorXcd trial = (c - eta * g).normalized();
        const double ftrial = compressed_fidelity(mats, trial);
        if (ftrial <= f - 1e-4 * eta * gnorm * gnorm) {
          c = trial;
          f = ftrial;
          step = std::min(eta * 1.5, 1000.0);
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) break;
    }
    if (f < best.value) {
      best.value = f;
      best.coeff = c;
      best.gradient_norm = gnorm;
    }
  }
  best.iterations = total_iterations;
  return best;
}

struct BasisMinimum {
  double value = 1.0;
  DenseOperator unitary;  // K x K, columns are the attaining coefficients
  double gradient_norm = 0.0;
  int iterations = 0;
};

DenseOperator reorthonormalize(const DenseOperator& V) {
  Eigen::HouseholderQR<DenseOperator> qr(V);
  DenseOperator Q = qr.householderQ() * DenseOperator::Identity(V.rows(), V.cols());
  return Q;
}

double basis_average(const std::vector<DenseOperator>& mats,
                     const DenseOperator& V) {
  double f = 0.0;
  for (Eigen::Index j = 0; j < V.cols(); ++j)
    f += compressed_fidelity(mats, V.col(j));
  return f / static_cast<double>(V.cols());
}

// Riemannian descent over the unitary group U(K) with QR retraction; the
// per-column phase freedom is harmless because the objective is phase
// invariant.
BasisMinimum minimize_basis(const std::vector<DenseOperator>& mats,
                            Eigen::Index K, const OptimizerOptions& options,
                            const std::vector<DenseOperator>& extra_starts) {
  Rng rng(options.seed ^ 0x9e3779b97f4a7c15ull);
  BasisMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  int total_iterations = 0;

  std::vector<DenseOperator> starts = extra_starts;
  starts.push_back(DenseOperator::Identity(K, K));
  for (int s = 0; s < options.starts; ++s) {
    DenseOperator G(K, K);
    for (Eigen::Index i = 0; i < K; ++i)
      for (Eigen::Index j = 0; j < K; ++j) G(i, j) = Complex(rng.normal(), rng.normal());
    starts.push_back(reorthonormalize(G));
  }

  for (auto& V0 : starts) {
    DenseOperator V = reorthonormalize(V0);
    double f = basis_average(mats, V);
    double step = 1.0;
    double gnorm = 0.0;
    for (int it = 0; it < options.max_iterations; ++it) {
      ++total_iterations;
      DenseOperator G(K, K);
      for (Eigen::Index j = 0; j < K; ++j)
        G.col(j) = compressed_gradient(mats, V.col(j)) / static_cast<double>(K);
      const DenseOperator vg = V.adjoint() * G;
      const DenseOperator tangent = G - V * (0.5 * (vg + vg.adjoint()));
      gnorm = tangent.norm();
      if (gnorm <= options.gradient_tol) break;
      bool accepted = false;
      double eta = step;
      for (int bt = 0; bt < 50; ++bt) {
        const DenseOperator trial = reorthonormalize(V - eta * tangent);
        const double ftrial = basis_average(mats, trial);
        if (ftrial <= f - 1e-4 * eta * gnorm * gnorm) {
          V = trial;
          f = ftrial;
          step = std::min(eta * 1.5, 1000.0);
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) break;
    }
    if (f < best.value) {
      best.value = f;
      best.unitary = V;
      best.gradient_norm = gnorm;
    }
  }
  best.iterations = total_iterations;
  return best;
}

void require_product_compatible(const StabilizerCode& code,
                                const QuantumChannel& ch_n,
                                const RecoveryMap& rec) {
  const auto dn = static_cast<Eigen::Index>(ipow(code.d, code.n));
  if (ch_n.dim() != static_cast<std::uint64_t>(dn))
    throw dimension_error("channel dimension does not match the code");
  if (rec.kraus.empty() || rec.kraus.front().rows() != dn)
    throw dimension_error("recovery dimension does not match the code");
}

}  // namespace

std::uint64_t StabilizerCode::index() const {
  std::uint64_t idx = 0, scale = 1;
  for (std::uint16_t s : syndrome) {
    idx += scale * s;
    scale *= d;
  }
  return idx;
}

std::vector<StabilizerCode> build_codes(const SymplecticSubspace& L,
                                        const ErrorBasis& basis,
                                        const CodeBuildOptions& options) {
  const std::uint32_t d = L.d(), n = L.ambient_n();
  if (basis.d() != d) throw dimension_error("basis/stabilizer modulus mismatch");
  if (!is_self_orthogonal(L))
    throw argument_error("stabilizer subspace must be self-orthogonal");
  const std::uint64_t dn = ipow(d, n);
  if (dn > kDenseDimensionCap)
    throw resource_error("dense simulation cap d^n <= 64 exceeded");

  const std::uint32_t r = L.dim();
  const auto& generators = L.basis();

  // Per generator: matrix powers N^t and the principal d-th root of the
  // scalar N^d = c I, so the admissible eigenvalues are zeta * omega^s.
  std::vector<std::vector<DenseOperator>> powers(r);
  std::vector<Complex> principal(r);
  for (std::uint32_t g = 0; g < r; ++g) {
    const DenseOperator N = error_operator(basis, generators[g]);
    powers[g].resize(d + 1);
    powers[g][0] = DenseOperator::Identity(dn, dn);
    for (std::uint32_t t = 1; t <= d; ++t) powers[g][t] = powers[g][t - 1] * N;
    Complex c = powers[g][d](0, 0);
    c /= std::abs(c);
    principal[g] = std::exp(Complex(0.0, std::arg(c) / d));
  }

  const std::vector<SymplecticVector> leaders =
      min_entropy_coset_leaders(L, options.leaders);

  const std::uint64_t num_codes = ipow(d, r);
  const std::uint64_t code_dim = dn / num_codes;
  std::vector<StabilizerCode> codes;
  codes.reserve(num_codes);
  for (std::uint64_t idx = 0; idx < num_codes; ++idx) {
    StabilizerCode code{L, {}, {}, DenseOperator(), leaders, d, n};
    DenseOperator proj = DenseOperator::Identity(dn, dn);
    std::uint64_t rest = idx;
    for (std::uint32_t g = 0; g < r; ++g) {
      const auto s = static_cast<std::uint16_t>(rest % d);
      rest /= d;
      const Complex lambda =
          principal[g] * std::pow(basis.omega(), static_cast<double>(s));
      DenseOperator pg = DenseOperator::Zero(dn, dn);
      Complex lam_pow = 1.0;
      for (std::uint32_t t = 0; t < d; ++t) {
        pg += powers[g][t] / lam_pow;
        lam_pow *= lambda;
      }
      pg /= static_cast<double>(d);
      proj = proj * pg;
      code.syndrome.push_back(s);
      code.eigenvalues.push_back(lambda);
    }

    Eigen::SelfAdjointEigenSolver<DenseOperator> es(
        0.5 * (proj + proj.adjoint()));
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > 0.5) kept.push_back(i);
    if (kept.size() != code_dim)
      throw invariant_violation("eigenspace has unexpected dimension");
    code.code_basis.resize(dn, code_dim);
    for (std::size_t i = 0; i < kept.size(); ++i)
      code.code_basis.col(i) = es.eigenvectors().col(kept[i]);

    // Eigenvalue equations, checked at 1e-10.
    for (std::uint32_t g = 0; g < r; ++g) {
      const DenseOperator& N = powers[g][1];
      const double dev = (N * code.code_basis -
                          code.eigenvalues[g] * code.code_basis)
                             .cwiseAbs()
                             .maxCoeff();
      if (dev > 1e-10)
        throw invariant_violation("code ket violates an eigenvalue equation");
    }
    codes.push_back(std::move(code));
  }
  return codes;
}

RecoveryMap build_recovery(const StabilizerCode& code,
                           const ErrorBasis& basis) {
  const std::uint64_t dn = ipow(code.d, code.n);
  const SymplecticSubspace dual = dual_space(code.stabilizer);
  for (std::size_t i = 0; i < code.leaders.size(); ++i)
    for (std::size_t j = i + 1; j < code.leaders.size(); ++j)
      if (dual.contains(code.leaders[i] - code.leaders[j]))
        throw argument_error(
            "leaders are not distinct coset representatives of L_perp");

  const DenseOperator pc = code.projector();
  std::vector<DenseOperator> images;
  std::vector<DenseOperator> kraus;
  kraus.emplace_back();  // placeholder for the rest projector
  DenseOperator sum = DenseOperator::Zero(dn, dn);
  for (const auto& r : code.leaders) {
    const DenseOperator nr = error_operator(basis, r);
    const DenseOperator pi_r = nr * pc * nr.adjoint();
    kraus.push_back(nr.adjoint() * pi_r);
    images.push_back(pi_r);
    sum += pi_r;
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if ((images[i] * images[j]).cwiseAbs().maxCoeff() > 1e-9)
        throw invariant_violation("leader images are not orthogonal");
  kraus.front() = DenseOperator::Identity(dn, dn) - sum;

  DenseOperator tp = DenseOperator::Zero(dn, dn);
  for (const auto& K : kraus) tp += K.adjoint() * K;
  if ((tp - DenseOperator::Identity(dn, dn)).cwiseAbs().maxCoeff() >
      kTpTolerance)
    throw invariant_violation("recovery map is not trace preserving");
  return RecoveryMap{std::move(kraus)};
}

double state_fidelity(const Ket& psi, const QuantumChannel& ch_n,
                      const RecoveryMap& rec) {
  const auto dn = static_cast<Eigen::Index>(ch_n.dim());
  if (psi.size() != dn)
    throw dimension_error("state dimension does not match the channel");
  if (std::abs(psi.norm() - 1.0) > 1e-6)
    throw argument_error("state must be normalized");
  if (rec.kraus.empty() || rec.kraus.front().rows() != dn)
    throw dimension_error("recovery dimension does not match the channel");

  std::vector<Eigen::RowVectorXcd> rows;
  rows.reserve(rec.kraus.size());
  for (const auto& R : rec.kraus) rows.push_back(psi.adjoint() * R);
  double f = 0.0;
  for (const auto& A : ch_n.kraus) {
    const Ket col = A * psi;
    for (const auto& row : rows) f += std::norm((row * col)(0));
  }
  return f;
}

FidelityMinimum min_fidelity(const StabilizerCode& code,
                             const QuantumChannel& ch_n,
                             const RecoveryMap& rec,
                             const OptimizerOptions& options) {
  require_product_compatible(code, ch_n, rec);
  const Eigen::Index K = code.code_basis.cols();
  if (K > 8) throw resource_error("minimum-fidelity search needs dim <= 8");

  const auto mats = compress_composed(code.code_basis, ch_n, rec);
  // Code-basis kets join the random starts; they are frequent exact minima.
  std::vector<Eigen::VectorXcd> extra;
  for (Eigen::Index i = 0; i < K; ++i)
    extra.push_back(Eigen::VectorXcd::Unit(K, i));
  const StateMinimum sm = minimize_state(mats, K, options, extra);

  FidelityMinimum out;
  out.value = sm.value;
  out.argmin = code.code_basis * sm.coeff;
  out.gradient_norm = sm.gradient_norm;
  out.iterations = sm.iterations;
  return out;
}

AvgFidelityMinimum min_avg_fidelity(const StabilizerCode& code,
                                    const QuantumChannel& ch_n,
                                    const RecoveryMap& rec,
                                    const OptimizerOptions& options) {
  require_product_compatible(code, ch_n, rec);
  const Eigen::Index K = code.code_basis.cols();
  if (K > 4)
    throw resource_error("minimum-average-fidelity search needs dim <= 4");

  const auto mats = compress_composed(code.code_basis, ch_n, rec);
  const BasisMinimum bm = minimize_basis(mats, K, options, {});

  double fe = 0.0;
  for (const auto& M : mats) fe += std::norm(M.trace() / static_cast<double>(K));
  if (bm.value < fe - 1e-7)
    throw invariant_violation(
        "basis-average fell below the entanglement fidelity");

  AvgFidelityMinimum out;
  out.value = bm.value;
  out.basis = code.code_basis * bm.unitary;
  out.gradient_norm = bm.gradient_norm;
  out.iterations = bm.iterations;
  return out;
}

double entanglement_fidelity(const StabilizerCode& code,
                             const QuantumChannel& ch_n,
                             const RecoveryMap& rec) {
  require_product_compatible(code, ch_n, rec);
  const auto mats = compress_composed(code.code_basis, ch_n, rec);
  const double K = static_cast<double>(code.code_basis.cols());
  double fe = 0.0;
  for (const auto& M : mats) fe += std::norm(M.trace() / K);
  return fe;
}

double preskill_lower_bound(const Ket& psi, const QuantumChannel& ch,
                            std::uint32_t n,
                            const std::vector<SymplecticVector>& correctable,
                            const ErrorBasis& basis) {
  if (ch.m != 1)
    throw argument_error("pass the single-system channel and the power n");
  if (ch.d != basis.d()) throw dimension_error("channel/basis mismatch");
  const std::uint64_t dn = ipow(ch.d, n);
  if (psi.size() != static_cast<Eigen::Index>(dn))
    throw dimension_error("state dimension does not match d^n");
  const double tuples = std::pow(static_cast<double>(ch.kraus.size()), n);
  if (tuples > static_cast<double>(1 << 20) ||
      std::pow(static_cast<double>(ch.d), 2.0 * n) >
          static_cast<double>(1 << 20))
    throw resource_error("Preskill bound iteration exceeds the 2^20 cap");

  // Per-factor expansion coefficients a_{u v}.
  std::vector<std::vector<Complex>> coeff;
  coeff.reserve(ch.kraus.size());
  for (const auto& A : ch.kraus)
    coeff.push_back(expand_in_error_basis(A, basis));

  // N_y psi for the correctable set.
  std::vector<Ket> correctable_kets;
  correctable_kets.reserve(correctable.size());
  for (const auto& y : correctable) {
    if (y.n() != n || y.d() != ch.d)
      throw dimension_error("correctable vector does not live in F_d^{2n}");
    correctable_kets.push_back(error_operator(basis, y) * psi);
  }

  const std::size_t r = ch.kraus.size();
  std::vector<std::uint32_t> tuple(n, 0);
  double leak = 0.0;
  while (true) {
    // A_x psi and the correctable part sum_{y in J} a_xy N_y psi.
    DenseOperator ax = ch.kraus[tuple[0]];
    for (std::uint32_t i = 1; i < n; ++i) ax = kron(ax, ch.kraus[tuple[i]]);
    Ket w = ax * psi;
    for (std::size_t yi = 0; yi < correctable.size(); ++yi) {
      Complex a = 1.0;
      for (std::uint32_t i = 0; i < n; ++i)
        a *= coeff[tuple[i]][correctable[yi].symbol(i)];
      w -= a * correctable_kets[yi];
    }
    leak += w.squaredNorm();

    std::uint32_t k = n;
    while (k > 0) {
      if (++tuple[k - 1] < r) break;
      tuple[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return 1.0 - leak;
}

std::vector<SymplecticVector> enlarge_correctable_set(
    const SymplecticSubspace& L, const std::vector<SymplecticVector>& J0) {
  const auto members = L.elements();
  std::vector<SymplecticVector> J;
  J.reserve(J0.size() * members.size());
  std::unordered_set<std::uint64_t> seen;
  for (const auto& z : J0)
    for (const auto& w : members) {
      SymplecticVector s = z + w;
      if (!seen.insert(s.rank()).second)
        throw invariant_violation("degenerate correctable set has collisions");
      J.push_back(std::move(s));
    }

  const SymplecticSubspace dual = dual_space(L);
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = i + 1; j < J.size(); ++j) {
      const SymplecticVector diff = J[i] - J[j];
      if (dual.contains(diff) && !L.contains(diff))
        throw invariant_violation(
            "correctable-set difference landed in L_perp \\ L");
    }
  std::sort(J.begin(), J.end());
  return J;
}

EnsembleReport check_ensemble_bound(const SymplecticSubspace& L,
                                    const QuantumChannel& ch,
                                    const ErrorBasis& basis,
                                    const EnsembleOptions& options) {
  if (ch.m != 1)
    throw argument_error("ensemble check expects the single-system channel");
  const std::uint32_t n = L.ambient_n();
  const auto codes = build_codes(L, basis, options.build);
  const QuantumChannel ch_n = ch.tensor_power(n);

  const std::vector<SymplecticVector>& leaders = codes.front().leaders;
  std::vector<SymplecticVector> correctable =
      options.degenerate_set ? enlarge_correctable_set(L, leaders) : leaders;

  const ProductDistribution pn(error_distribution(ch, basis), n);
  EnsembleReport report;
  report.correctable_size = correctable.size();
  for (const auto& x : correctable) report.correctable_mass += pn(x);
  report.rhs = 1.0 - report.correctable_mass;

  double best_fe = -1.0;
  for (const auto& code : codes) {
    const RecoveryMap rec = build_recovery(code, basis);
    EnsembleCodeRow row;
    row.code_index = code.index();
    row.entanglement = entanglement_fidelity(code, ch_n, rec);
    row.min_upper = min_fidelity(code, ch_n, rec, options.optimizer).value;
    row.min_avg_upper =
        code.dim() <= 4
            ? min_avg_fidelity(code, ch_n, rec, options.optimizer).value
            : kNan;
    best_fe = std::max(best_fe, row.entanglement);
    report.codes.push_back(row);
  }
  report.verdict = best_fe >= 1.0 - report.rhs - 1e-9
                       ? EnsembleVerdict::kConfirmed
                       : EnsembleVerdict::kInconclusive;
  return report;
}

SubcodeReport extract_subcode(const StabilizerCode& code,
                              const QuantumChannel& ch_n,
                              const RecoveryMap& rec,
                              const OptimizerOptions& options) {
  require_product_compatible(code, ch_n, rec);
  const Eigen::Index K = code.code_basis.cols();
  if (K < 2) throw argument_error("subcode extraction needs dim >= 2");

  const auto mats = compress_composed(code.code_basis, ch_n, rec);
  const Eigen::Index steps = (K + 1) / 2;

  SubcodeReport report;
  DenseOperator frame = DenseOperator::Identity(K, K);  // coefficient frame
  DenseOperator greedy(K, K);  // minimizers + leftover completion
  for (Eigen::Index step = 0; step < steps; ++step) {
    const Eigen::Index cur = K - step;
    // Restrict the objective to the current frame.
    std::vector<DenseOperator> sub;
    sub.reserve(mats.size());
    for (const auto& M : mats)
      sub.push_back(frame.adjoint() * M * frame);
    OptimizerOptions stage = options;
    stage.seed = options.seed + static_cast<std::uint64_t>(step) * 0x51ed2701;
    std::vector<Eigen::VectorXcd> extra;
    for (Eigen::Index i = 0; i < cur; ++i)
      extra.push_back(Eigen::VectorXcd::Unit(cur, i));
    const StateMinimum sm = minimize_state(sub, cur, stage, extra);
    report.greedy_values.push_back(sm.value);
    greedy.col(step) = frame * sm.coeff;

    // Orthogonal complement of the minimizer within the current frame:
    // Gram-Schmidt of the identity columns against it.
    DenseOperator next(K, cur - 1);
    Eigen::Index filled = 0;
    std::vector<Eigen::VectorXcd> held = {sm.coeff};
    for (Eigen::Index i = 0; i < cur && filled < cur - 1; ++i) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Unit(cur, i);
      for (const auto& h : held) v -= (h.adjoint() * v)(0) * h;
      if (v.norm() > 1e-8) {
        v.normalize();
        held.push_back(v);
        next.col(filled++) = frame * v;
      }
    }
    if (filled != cur - 1)
      throw invariant_violation("complement construction lost rank");
    frame = next;
  }
  for (Eigen::Index i = 0; i < K - steps; ++i)
    greedy.col(steps + i) = frame.col(i);

  report.subspace_basis = code.code_basis * frame;

  std::vector<DenseOperator> sub;
  for (const auto& M : mats) sub.push_back(frame.adjoint() * M * frame);
  std::vector<Eigen::VectorXcd> extra;
  for (Eigen::Index i = 0; i < frame.cols(); ++i)
    extra.push_back(Eigen::VectorXcd::Unit(frame.cols(), i));
  report.subcode_min_upper =
      minimize_state(sub, frame.cols(), options, extra).value;

  // Best-found F_a of the parent code, seeded with the greedy basis so the
  // chain of inequalities holds for the numeric surrogates as well.
  const BasisMinimum bm =
      minimize_basis(mats, K, options, {reorthonormalize(greedy)});
  report.code_avg_upper = bm.value;

  if (1.0 - report.subcode_min_upper >
      2.0 * (1.0 - report.code_avg_upper) + 1e-6)
    throw invariant_violation("subcode bound exceeded twice the average loss");
  return report;
}

FidelityReport evaluate_code(const StabilizerCode& code,
                             const QuantumChannel& ch, const ErrorBasis& basis,
                             const OptimizerOptions& options) {
  if (ch.m != 1)
    throw argument_error("evaluate_code expects the single-system channel");
  const QuantumChannel ch_n = ch.tensor_power(code.n);
  const RecoveryMap rec = build_recovery(code, basis);

  FidelityReport report;
  const FidelityMinimum fm = min_fidelity(code, ch_n, rec, options);
  report.min_fidelity = fm.value;
  report.argmin = fm.argmin;
  report.entanglement_fidelity = entanglement_fidelity(code, ch_n, rec);
  report.min_avg_fidelity_upper =
      code.dim() <= 4 ? min_avg_fidelity(code, ch_n, rec, options).value
                      : kNan;

  const auto correctable =
      enlarge_correctable_set(code.stabilizer, code.leaders);
  report.preskill_lb =
      preskill_lower_bound(fm.argmin, ch, code.n, correctable, basis);

  const double favg = report.min_avg_fidelity_upper;
  if (!std::isnan(favg)) {
    if (report.entanglement_fidelity > favg + 1e-7)
      throw invariant_violation("entanglement fidelity above the ONB average");
    if (report.min_fidelity > favg + 1e-7)
      throw invariant_violation("minimum fidelity above the ONB average");
  }
  for (double v : {report.min_fidelity, report.entanglement_fidelity}) {
    if (v < -1e-9 || v > 1.0 + 1e-9)
      throw invariant_violation("fidelity out of [0,1]");
  }
  return report;
}

}  // namespace qfex
