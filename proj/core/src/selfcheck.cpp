#include "qfex/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "qfex/channel.hpp"
#include "qfex/exponent.hpp"
#include "qfex/gfsym.hpp"
#include "qfex/simkit.hpp"
#include "qfex/util.hpp"

namespace qfex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SymplecticVector random_vector(Rng& rng, std::uint32_t n, std::uint32_t d) {
  std::vector<std::uint16_t> c(2 * n);
  for (auto& x : c) x = static_cast<std::uint16_t>(rng.below(d));
  return SymplecticVector(std::move(c), d);
}

ErrorDistribution random_distribution(Rng& rng, std::uint32_t d) {
  std::vector<double> p(static_cast<std::size_t>(d) * d);
  double sum = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  for (auto& x : p) x /= sum;
  return ErrorDistribution(d, std::move(p));
}

DenseOperator random_ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  DenseOperator g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      g(i, j) = Complex(rng.normal(), rng.normal());
  return g;
}

DenseOperator random_unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<DenseOperator> qr(random_ginibre(rng, n, n));
  return qr.householderQ() * DenseOperator::Identity(n, n);
}

QuantumChannel random_channel(Rng& rng, std::uint32_t d,
                              std::uint32_t kraus_count) {
  std::vector<DenseOperator> g;
  DenseOperator s = DenseOperator::Zero(d, d);
  for (std::uint32_t i = 0; i < kraus_count; ++i) {
    g.push_back(random_ginibre(rng, d, d));
    s += g.back().adjoint() * g.back();
  }
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(s);
  const DenseOperator isqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().adjoint();
  for (auto& a : g) a = a * isqrt;
  return QuantumChannel(d, 1, std::move(g));
}

const std::vector<SymplecticSubspace>& cached_self_orthogonal(
    std::uint32_t n, std::uint32_t dim, std::uint32_t d) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>,
                  std::vector<SymplecticSubspace>>
      cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(n, dim, d);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, enumerate_self_orthogonal(n, dim, d)).first;
  return it->second;
}

struct Battery {
  std::uint64_t seed;
  std::vector<CheckResult> results;

  void add(const std::string& name, std::uint64_t trials, double worst,
           double limit) {
    results.push_back({name, trials, worst, limit, worst <= limit});
  }
};

// ---------------------------------------------------------------- gfsym ----

void check_gfsym(Battery& b) {
  {
    Rng rng(b.seed ^ 0x11);
    double worst = 0.0;
    std::uint64_t trials = 0;
    for (std::uint32_t d : {2u, 3u, 5u}) {
      PrimeField f(d);
      for (int t = 0; t < 334; ++t) {
        const auto n = static_cast<std::uint32_t>(1 + rng.below(4));
        const auto x = random_vector(rng, n, d);
        const auto y = random_vector(rng, n, d);
        const auto z = random_vector(rng, n, d);
        const auto a = static_cast<std::uint16_t>(rng.below(d));
        const auto bb = static_cast<std::uint16_t>(rng.below(d));
        const auto lhs = symplectic_form(x.scaled(a) + y.scaled(bb), z);
        const auto rhs = f.add(f.mul(a, symplectic_form(x, z)),
                               f.mul(bb, symplectic_form(y, z)));
        worst = std::max(worst, std::abs(double(lhs) - double(rhs)));
        ++trials;
      }
    }
    b.add("gfsym.bilinearity", trials, worst, 0.0);
  }
  {
    Rng rng(b.seed ^ 0x12);
    double worst = 0.0;
    std::uint64_t trials = 0;
    for (std::uint32_t d : {2u, 3u, 5u}) {
      PrimeField f(d);
      for (int t = 0; t < 334; ++t) {
        const auto n = static_cast<std::uint32_t>(1 + rng.below(4));
        const auto x = random_vector(rng, n, d);
        const auto y = random_vector(rng, n, d);
        const auto sum = f.add(symplectic_form(x, y), symplectic_form(y, x));
        worst = std::max(worst, double(sum));
        ++trials;
      }
    }
    b.add("gfsym.antisymmetry", trials, worst, 0.0);
  }
  {
    Rng rng(b.seed ^ 0x13);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const std::uint32_t d = (t % 3 == 0) ? 3u : 2u;
      const auto n = static_cast<std::uint32_t>(1 + rng.below(3));
      std::vector<SymplecticVector> gens;
      const auto count = 1 + rng.below(2 * n);
      for (std::uint64_t i = 0; i < count; ++i)
        gens.push_back(random_vector(rng, n, d));
      const auto L = SymplecticSubspace::span(gens, n, d);
      const auto dual = dual_space(L);
      if (!(dual_space(dual) == L)) worst = std::max(worst, 1.0);
      if (L.dim() + dual.dim() != 2 * n) worst = std::max(worst, 1.0);
    }
    b.add("gfsym.duality_involution", 100, worst, 0.0);
  }
  {
    Rng rng(b.seed ^ 0x14);
    double worst = 0.0;
    std::uint64_t trials = 0;
    for (int t = 0; t < 20; ++t) {
      const std::uint32_t d = 2;
      const auto n = static_cast<std::uint32_t>(2 + rng.below(2));
      const auto dim = static_cast<std::uint32_t>(1 + rng.below(n));
      const auto& family = cached_self_orthogonal(n, dim, d);
      const auto& L = family[rng.below(family.size())];
      const auto leaders = min_entropy_coset_leaders(L);
      const auto dual = dual_space(L);
      for (std::size_t i = 0; i < leaders.size(); ++i)
        for (std::size_t j = i + 1; j < leaders.size(); ++j) {
          if (dual.contains(leaders[i] - leaders[j]))
            worst = std::max(worst, 1.0);
          ++trials;
        }
    }
    b.add("gfsym.coset_leader_validity", trials, worst, 0.0);
  }
  {
    double worst = 0.0;
    const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> cases[] = {
        {2, 1, 2}, {3, 1, 2}, {3, 2, 2}, {2, 1, 3}};
    for (const auto& [n, kp, d] : cases) {
      try {
        const WittCensus census = witt_ratio_census(n, kp, d);
        if (!(census.observed == census.formula)) worst = 1.0;
      } catch (const error&) {
        worst = 1.0;
      }
    }
    b.add("gfsym.witt_census", 4, worst, 0.0);
  }
  {
    // Types over X = {0,1}^2: count bound, class-size bound, exact total.
    double worst = 0.0;
    std::uint64_t trials = 0;
    for (std::uint32_t n = 1; n <= 6; ++n) {
      const auto types = enumerate_types(n, 2);
      if (types.size() >
          static_cast<std::size_t>((n + 1)) * (n + 1) * (n + 1))
        worst = std::max(worst, 1.0);
      std::map<std::vector<std::uint32_t>, std::uint64_t> buckets;
      const std::uint64_t total = std::uint64_t{1} << (2 * n);
      for (std::uint64_t r = 0; r < total; ++r)
        ++buckets[type_of(SymplecticVector::from_rank(r, n, 2)).counts];
      std::uint64_t sum = 0;
      for (const auto& q : types) {
        const std::uint64_t size = type_class_size(q);
        sum += size;
        const auto it = buckets.find(q.counts);
        const std::uint64_t enumerated = it == buckets.end() ? 0 : it->second;
        if (enumerated != size) worst = std::max(worst, 1.0);
        if (size > 0) {
          const double log_slack =
              std::log2(static_cast<double>(size)) - n * q.entropy();
          worst = std::max(worst, log_slack);
        }
        ++trials;
      }
      if (buckets.size() != types.size()) worst = std::max(worst, 1.0);
      if (sum != total) worst = std::max(worst, 1.0);
    }
    b.add("gfsym.type_machinery", trials, worst, 1e-9);
  }
}

// -------------------------------------------------------------- channel ----

void check_channel(Battery& b) {
  {
    Rng rng(b.seed ^ 0x21);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const std::uint32_t d = (t % 5 == 0) ? 3u : 2u;
      const auto r = static_cast<std::uint32_t>(1 + rng.below(d * d));
      const QuantumChannel ch = random_channel(rng, d, r);
      const ErrorDistribution p1 = error_distribution(ch);
      const DenseOperator w = random_unitary(rng, static_cast<Eigen::Index>(r));
      std::vector<DenseOperator> mixed(r, DenseOperator::Zero(d, d));
      for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint32_t j = 0; j < r; ++j)
          mixed[i] += w(i, j) * ch.kraus[j];
      const ErrorDistribution p2 =
          error_distribution(QuantumChannel(d, 1, mixed));
      for (std::size_t s = 0; s < p1.size(); ++s)
        worst = std::max(worst, std::abs(p1.p[s] - p2.p[s]));
    }
    b.add("channel.representation_independence", 50, worst, 1e-10);
  }
  {
    double worst = 0.0;
    std::uint64_t trials = 0;
    for (std::uint32_t d : {2u, 3u, 5u}) {
      const ErrorBasis basis = ErrorBasis::standard(d);
      for (std::uint32_t u = 0; u < d * d; ++u)
        for (std::uint32_t v = 0; v < d * d; ++v) {
          const Complex ip =
              (basis.op(u).adjoint() * basis.op(v)).trace() /
              static_cast<double>(d);
          const double expected = u == v ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(ip - expected));
          ++trials;
        }
    }
    b.add("channel.basis_orthonormality", trials, worst, 1e-12);
  }
  {
    Rng rng(b.seed ^ 0x22);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const std::uint32_t d = (t % 4 == 0) ? 3u : 2u;
      const ErrorBasis basis =
          (t % 2 == 0) ? ErrorBasis::standard(d)
                       : ErrorBasis::from_frame(random_unitary(rng, d));
      const DenseOperator a = random_ginibre(rng, d, d);
      const auto coeff = expand_in_error_basis(a, basis);
      DenseOperator rebuilt = DenseOperator::Zero(d, d);
      for (std::uint32_t s = 0; s < coeff.size(); ++s)
        rebuilt += coeff[s] * basis.op(s);
      worst = std::max(worst, (rebuilt - a).cwiseAbs().maxCoeff());
    }
    b.add("channel.expansion_round_trip", 100, worst, 1e-12);
  }
  {
    Rng rng(b.seed ^ 0x23);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const auto r = static_cast<std::uint32_t>(1 + rng.below(4));
      const QuantumChannel ch = random_channel(rng, 2, r);
      const DenseOperator m = choi_state(ch);
      const DenseOperator m2 = choi_state(kraus_from_choi(m, 2));
      worst = std::max(worst, (m - m2).cwiseAbs().maxCoeff());
    }
    b.add("channel.choi_round_trip", 50, worst, 1e-9);
  }
  {
    Rng rng(b.seed ^ 0x24);
    double worst = 0.0;
    std::uint64_t trials = 0;
    auto record = [&](const QuantumChannel& ch) {
      const ErrorDistribution p = error_distribution(ch);
      double sum = 0.0;
      for (double x : p.p) sum += x;
      worst = std::max(worst, std::abs(sum - 1.0));
      ++trials;
    };
    for (double g = 0.0; g <= 1.0; g += 0.125) {
      record(QuantumChannel::amplitude_damping(g));
      record(QuantumChannel::depolarizing(g * 0.9));
      record(QuantumChannel::dephasing(g));
    }
    for (int t = 0; t < 30; ++t)
      record(random_channel(rng, 2, static_cast<std::uint32_t>(1 + rng.below(4))));
    b.add("channel.distribution_normalization", trials, worst, 1e-9);
  }
}

// ------------------------------------------------------------- exponent ----

void check_exponent(Battery& b) {
  {
    Rng rng(b.seed ^ 0x31);
    double worst = -kInf;
    std::uint64_t trials = 0;
    for (int t = 0; t < 20; ++t) {
      const ErrorDistribution p = random_distribution(rng, 2);
      double prev = kInf;
      for (int i = 0; i <= 20; ++i) {
        const double rate = i / 20.0;
        const double e = error_exponent(rate, p).value;
        if (i > 0) worst = std::max(worst, e - prev);
        prev = e;
        ++trials;
      }
    }
    b.add("exponent.monotone_in_rate", trials, worst, 1e-8);
  }
  {
    Rng rng(b.seed ^ 0x32);
    double worst_zero = 0.0;
    double worst_positive = -kInf;  // 1e-8 - E for rates well below threshold
    std::uint64_t trials = 0;
    for (int t = 0; t < 20; ++t) {
      const ErrorDistribution p = random_distribution(rng, 2);
      const double threshold = 1.0 - entropy(p);
      for (int i = 0; i <= 20; ++i) {
        const double rate = i / 20.0;
        const double e = error_exponent(rate, p).value;
        if (rate >= threshold) worst_zero = std::max(worst_zero, e);
        if (rate <= threshold - 0.05)
          worst_positive = std::max(worst_positive, 1e-8 - e);
        ++trials;
      }
    }
    b.add("exponent.zero_above_threshold", trials, worst_zero, 1e-6);
    b.add("exponent.positive_below_threshold", trials,
          worst_positive == -kInf ? 0.0 : worst_positive, 0.0);
  }
  {
    Rng rng(b.seed ^ 0x33);
    double worst = -kInf;
    for (int t = 0; t < 1000; ++t) {
      const ErrorDistribution p = random_distribution(rng, 2);
      const ErrorDistribution q1 = random_distribution(rng, 2);
      const ErrorDistribution q2 = random_distribution(rng, 2);
      const double rate = rng.uniform();
      const double lam = rng.uniform();
      auto objective = [&](const ErrorDistribution& q) {
        return divergence(q, p) + std::max(0.0, 1.0 - entropy(q) - rate);
      };
      std::vector<double> mixed(4);
      for (int s = 0; s < 4; ++s)
        mixed[s] = lam * q1.p[s] + (1.0 - lam) * q2.p[s];
      const double fmix = objective(ErrorDistribution(2, mixed));
      worst = std::max(worst,
                       fmix - lam * objective(q1) - (1.0 - lam) * objective(q2));
    }
    b.add("exponent.objective_convexity", 1000, worst, 1e-12);
  }
  {
    Rng rng(b.seed ^ 0x34);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const ErrorDistribution p = random_distribution(rng, 2);
      const double rate = rng.uniform();
      const double primal = error_exponent(rate, p).value;
      const double tilted = error_exponent_tilted(rate, p, false).value;
      worst = std::max(worst, std::abs(primal - tilted));
    }
    b.add("exponent.solver_agreement", 50, worst, 1e-6);
  }
  {
    Rng rng(b.seed ^ 0x35);
    double worst = -kInf;
    double worst_identity = 0.0;
    for (int t = 0; t < 200; ++t) {
      const auto r = static_cast<std::uint32_t>(1 + rng.below(4));
      const QuantumChannel ch = random_channel(rng, 2, r);
      const BoundReport report = bound_comparison(ch, rng.bits());
      worst = std::max(worst,
                       report.rival_lb - report.capacity_lb_preprocessed);
      worst_identity =
          std::max(worst_identity,
                   std::abs(report.p_ua_identity - (1.0 - report.p_prime)));
    }
    b.add("exponent.preprocessing_inequality", 200, worst, 1e-8);
    b.add("exponent.preprocessed_identity_mass", 200, worst_identity, 1e-6);
  }
  {
    double worst_order = -kInf;
    double worst_formula = 0.0;
    std::uint64_t trials = 0;
    for (int i = 0; i <= 100; ++i) {
      const double gamma = i / 100.0;
      const QuantumChannel ch = QuantumChannel::amplitude_damping(gamma);
      const double direct = capacity_lower_bound(error_distribution(ch));
      worst_formula = std::max(
          worst_formula,
          std::abs(direct - amplitude_damping_capacity_formula(gamma)));
      const EntangledMaximum em = entangled_overlap_maximum(ch, 7 + i);
      const double rival = 1.0 - hashing_entropy(em.p_prime);
      worst_order = std::max(worst_order, rival - direct);
      ++trials;
    }
    b.add("exponent.damping_closed_form", trials, worst_formula, 1e-10);
    b.add("exponent.damping_bound_ordering", trials, worst_order, 1e-8);
  }
}

// --------------------------------------------------------------- simkit ----

void check_simkit(Battery& b) {
  {
    // Eigenvalue equations, completeness, and recovery trace preservation
    // over a mix of stabilizers and dimensions.
    double worst_eigen = 0.0, worst_complete = 0.0, worst_tp = 0.0;
    std::uint64_t trials = 0;
    Rng rng(b.seed ^ 0x41);
    for (int t = 0; t < 12; ++t) {
      const std::uint32_t d = (t % 4 == 3) ? 3u : 2u;
      const std::uint32_t n = d == 3 ? 2u : static_cast<std::uint32_t>(2 + t % 2);
      const auto dim = static_cast<std::uint32_t>(1 + rng.below(n));
      const auto& family = cached_self_orthogonal(n, dim, d);
      if (family.empty()) continue;
      const auto& L = family[rng.below(family.size())];
      const ErrorBasis basis = ErrorBasis::standard(d);
      const auto codes = build_codes(L, basis);
      const auto dn = static_cast<Eigen::Index>(codes.front().code_basis.rows());
      DenseOperator sum = DenseOperator::Zero(dn, dn);
      for (const auto& code : codes) {
        sum += code.projector();
        for (std::size_t g = 0; g < L.dim(); ++g) {
          const DenseOperator ng = error_operator(basis, L.basis()[g]);
          worst_eigen = std::max(
              worst_eigen, (ng * code.code_basis -
                            code.eigenvalues[g] * code.code_basis)
                               .cwiseAbs()
                               .maxCoeff());
        }
        const RecoveryMap rec = build_recovery(code, basis);
        DenseOperator tp = DenseOperator::Zero(dn, dn);
        for (const auto& k : rec.kraus) tp += k.adjoint() * k;
        worst_tp = std::max(
            worst_tp,
            (tp - DenseOperator::Identity(dn, dn)).cwiseAbs().maxCoeff());
        ++trials;
      }
      worst_complete = std::max(
          worst_complete,
          (sum - DenseOperator::Identity(dn, dn)).cwiseAbs().maxCoeff());
    }
    b.add("simkit.eigenvalue_equations", trials, worst_eigen, 1e-10);
    b.add("simkit.syndrome_completeness", trials, worst_complete, 1e-9);
    b.add("simkit.recovery_trace_preserving", trials, worst_tp, 1e-9);
  }
  {
    Rng rng(b.seed ^ 0x42);
    double worst = -kInf;
    for (int t = 0; t < 200; ++t) {
      const auto n = static_cast<std::uint32_t>(1 + rng.below(3));
      const auto dim = static_cast<std::uint32_t>(1 + rng.below(n));
      const auto& family = cached_self_orthogonal(n, dim, 2);
      const auto& L = family[rng.below(family.size())];
      const ErrorBasis basis = ErrorBasis::standard(2);
      const auto r = static_cast<std::uint32_t>(1 + rng.below(4));
      const QuantumChannel ch = random_channel(rng, 2, r);
      const auto codes = build_codes(L, basis);
      const auto& code = codes[rng.below(codes.size())];
      const RecoveryMap rec = build_recovery(code, basis);

      Eigen::VectorXcd c(code.code_basis.cols());
      for (Eigen::Index i = 0; i < c.size(); ++i)
        c(i) = Complex(rng.normal(), rng.normal());
      c.normalize();
      const Ket psi = code.code_basis * c;

      const auto correctable =
          (t % 2 == 0) ? code.leaders
                       : enlarge_correctable_set(L, code.leaders);
      const double bound =
          preskill_lower_bound(psi, ch, n, correctable, basis);
      const double f = state_fidelity(psi, ch.tensor_power(n), rec);
      worst = std::max(worst, bound - f);
    }
    b.add("simkit.preskill_soundness", 200, worst, 1e-8);
  }
  {
    Rng rng(b.seed ^ 0x43);
    double worst = -kInf;
    std::uint64_t trials = 0;
    OptimizerOptions opts;
    opts.starts = 12;
    for (int t = 0; t < 8; ++t) {
      const auto n = 2u;
      const auto& family = cached_self_orthogonal(n, 1, 2);
      const auto& L = family[rng.below(family.size())];
      const ErrorBasis basis = ErrorBasis::standard(2);
      const QuantumChannel ch =
          t % 2 == 0 ? QuantumChannel::amplitude_damping(0.1 + 0.1 * (t / 2))
                     : random_channel(rng, 2, 1 + t % 4);
      opts.seed = rng.bits();
      for (const auto& code : build_codes(L, basis)) {
        const QuantumChannel chn = ch.tensor_power(n);
        const RecoveryMap rec = build_recovery(code, basis);
        const double fe = entanglement_fidelity(code, chn, rec);
        const double fmin = min_fidelity(code, chn, rec, opts).value;
        const double favg = min_avg_fidelity(code, chn, rec, opts).value;
        worst = std::max({worst, fe - favg, fmin - favg});
        ++trials;
      }
    }
    b.add("simkit.fidelity_ordering", trials, worst, 1e-7);
  }
  {
    Rng rng(b.seed ^ 0x44);
    double worst = 0.0;
    std::uint64_t trials = 0;
    for (int t = 0; t < 20; ++t) {
      const auto n = static_cast<std::uint32_t>(2 + rng.below(2));
      const auto dim = static_cast<std::uint32_t>(1 + rng.below(n - 1));
      const auto& family = cached_self_orthogonal(n, dim, 2);
      const auto& L = family[rng.below(family.size())];
      const ErrorBasis basis = ErrorBasis::standard(2);
      const QuantumChannel ch = QuantumChannel::pauli(random_distribution(rng, 2));
      const ProductDistribution pn(error_distribution(ch), n);
      const auto codes = build_codes(L, basis);
      const auto& code = codes[rng.below(codes.size())];
      const RecoveryMap rec = build_recovery(code, basis);
      const QuantumChannel chn = ch.tensor_power(n);

      double mass_leaders = 0.0;
      for (const auto& x : code.leaders) mass_leaders += pn(x);
      double mass = 0.0;
      for (const auto& x : enlarge_correctable_set(L, code.leaders))
        mass += pn(x);
      const double fe = entanglement_fidelity(code, chn, rec);
      worst = std::max(worst, std::abs(fe - mass));
      worst = std::max(worst, mass_leaders - mass);  // enlarged set dominates

      Eigen::VectorXcd c(code.code_basis.cols());
      for (Eigen::Index i = 0; i < c.size(); ++i)
        c(i) = Complex(rng.normal(), rng.normal());
      c.normalize();
      const double f = state_fidelity(code.code_basis * c, chn, rec);
      worst = std::max(worst, mass - f);
      ++trials;
    }
    b.add("simkit.pauli_channel_exactness", trials, worst, 1e-10);
  }
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite,
                                   std::uint64_t seed) {
  Battery battery{seed, {}};
  bool known = false;
  if (suite == "gfsym" || suite == "all") {
    check_gfsym(battery);
    known = true;
  }
  if (suite == "channel" || suite == "all") {
    check_channel(battery);
    known = true;
  }
  if (suite == "exponent" || suite == "all") {
    check_exponent(battery);
    known = true;
  }
  if (suite == "simkit" || suite == "all") {
    check_simkit(battery);
    known = true;
  }
  if (!known)
    throw argument_error("unknown suite '" + suite +
                         "'; expected gfsym|channel|exponent|simkit|all");
  return battery.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace qfex
