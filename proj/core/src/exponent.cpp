#include "qfex/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfex/util.hpp"

namespace qfex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Support-restricted working copy of the minimization problem, in nats.
struct SimplexProblem {
  std::vector<std::uint32_t> support;
  std::vector<double> p;      // P restricted to support
  std::vector<double> logp;
  double log_d;
  double rate_nats;           // (1 - R) * ln d

  SimplexProblem(double rate, const ErrorDistribution& P)
      : log_d(std::log(static_cast<double>(P.d))),
        rate_nats((1.0 - rate) * std::log(static_cast<double>(P.d))) {
    for (std::uint32_t s = 0; s < P.size(); ++s)
      if (P[s] > 0.0) {
        support.push_back(s);
        p.push_back(P[s]);
        logp.push_back(std::log(P[s]));
      }
  }

  // D(q||p) + |t|^+ with t = (1-R) ln d - H(q), all in nats.
  double objective(const std::vector<double>& q) const {
    double div = 0.0, ent = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      div += xlogx(q[i]) - q[i] * logp[i];
      ent -= xlogx(q[i]);
    }
    return div + std::max(0.0, rate_nats - ent);
  }

  double smoothed(const std::vector<double>& q, double mu) const {
    double div = 0.0, ent = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      div += xlogx(q[i]) - q[i] * logp[i];
      ent -= xlogx(q[i]);
    }
    const double t = rate_nats - ent;
    double sp;  // mu * ln(1 + e^{t/mu}), stably
    const double z = t / mu;
    if (z > 40.0)
      sp = t;
    else if (z < -40.0)
      sp = mu * std::exp(z);
    else
      sp = mu * std::log1p(std::exp(z));
    return div + sp;
  }

  ErrorDistribution embed(const std::vector<double>& q,
                          const ErrorDistribution& P) const {
    std::vector<double> full(P.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) full[support[i]] = q[i];
    return ErrorDistribution(P.d, std::move(full));
  }
};

ExponentResult finish(const SimplexProblem& prob, const std::vector<double>& q,
                      const ErrorDistribution& P, int iterations) {
  double ent = 0.0;
  for (double x : q) ent -= xlogx(x);
  ExponentResult result;
  result.value = std::max(0.0, prob.objective(q) / prob.log_d);
  result.minimizer = prob.embed(q, P);
  result.positive_branch = (prob.rate_nats - ent) / prob.log_d > 1e-9;
  result.iterations = iterations;
  return result;
}

}  // namespace

double entropy(const ErrorDistribution& Q) {
  double h = 0.0;
  for (double x : Q.p) h -= xlogx(x);
  return h / std::log(static_cast<double>(Q.d));
}

double divergence(const ErrorDistribution& Q, const ErrorDistribution& P) {
  if (Q.d != P.d || Q.size() != P.size())
    throw dimension_error("divergence: alphabet mismatch");
  double div = 0.0;
  for (std::size_t s = 0; s < Q.size(); ++s) {
    if (Q.p[s] == 0.0) continue;
    if (P.p[s] == 0.0) return kInf;
    div += Q.p[s] * std::log(Q.p[s] / P.p[s]);
  }
  return div / std::log(static_cast<double>(Q.d));
}

ExponentResult error_exponent(double rate, const ErrorDistribution& P,
                              const ExponentOptions& options) {
  if (rate < 0.0 || rate > 1.0) throw argument_error("rate must be in [0,1]");
  SimplexProblem prob(rate, P);
  const std::size_t k = prob.support.size();
  if (k == 0) throw validation_error("distribution has empty support");

  std::vector<double> q = prob.p;  // warm start at Q = P
  if (k == 1) {
    q = {1.0};
    return finish(prob, q, P, 0);
  }

  int iterations = 0;
  std::vector<double> grad(k), trial(k);
  double step = 1.0;
  for (double mu = 1e-1; mu >= 0.5e-10; mu *= 0.1) {
    double f = prob.smoothed(q, mu);
    for (int it = 0; it < options.max_iterations / 10; ++it) {
      ++iterations;
      double ent = 0.0;
      for (double x : q) ent -= xlogx(x);
      const double t = prob.rate_nats - ent;
      const double z = t / mu;
      const double sigma =
          z > 40.0 ? 1.0 : (z < -40.0 ? std::exp(z) : 1.0 / (1.0 + std::exp(-z)));
      double gmax = -kInf;
      for (std::size_t i = 0; i < k; ++i) {
        const double lq = std::log(std::max(q[i], 1e-300));
        grad[i] = (lq - prob.logp[i] + 1.0) + sigma * (lq + 1.0);
        gmax = std::max(gmax, grad[i]);
      }

      // Entropic mirror step with backtracking on the smoothed objective.
      bool accepted = false;
      double eta = step;
      for (int bt = 0; bt < 60; ++bt) {
        double z_norm = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
          trial[i] = q[i] * std::exp(-eta * (grad[i] - gmax));
          z_norm += trial[i];
        }
        for (std::size_t i = 0; i < k; ++i) trial[i] /= z_norm;
        const double ftrial = prob.smoothed(trial, mu);
        if (ftrial < f) {
          const double delta = f - ftrial;
          q = trial;
          f = ftrial;
          step = std::min(eta * 1.3, 100.0);
          accepted = true;
          if (delta < options.objective_tol) it = options.max_iterations;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) break;  // stationary for this smoothing level
    }
  }
  return finish(prob, q, P, iterations);
}

ExponentResult error_exponent_tilted(double rate, const ErrorDistribution& P,
                                     bool cross_validate) {
  if (rate < 0.0 || rate > 1.0) throw argument_error("rate must be in [0,1]");
  SimplexProblem prob(rate, P);
  const std::size_t k = prob.support.size();
  if (k == 0) throw validation_error("distribution has empty support");

  std::vector<double> q(k);
  auto family = [&](double s) {
    const double inv = 1.0 / (1.0 + s);
    double lmax = -kInf;
    for (std::size_t i = 0; i < k; ++i) lmax = std::max(lmax, prob.logp[i] * inv);
    double z = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      q[i] = std::exp(prob.logp[i] * inv - lmax);
      z += q[i];
    }
    for (std::size_t i = 0; i < k; ++i) q[i] /= z;
    return prob.objective(q);
  };

  int evals = 0;
  double best_s = 0.0, best_f = family(0.0);
  ++evals;
  const int grid = 1024;
  for (int i = 1; i <= grid; ++i) {
    const double s = static_cast<double>(i) / grid;
    const double f = family(s);
    ++evals;
    if (f < best_f) {
      best_f = f;
      best_s = s;
    }
  }
  // Golden-section refinement around the best grid point.
  double lo = std::max(0.0, best_s - 2.0 / grid);
  double hi = std::min(1.0, best_s + 2.0 / grid);
  const double gr = 0.6180339887498949;
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = family(a), fb = family(b);
  evals += 2;
  while (hi - lo > 1e-13) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = family(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = family(b);
    }
    ++evals;
  }
  const double s_refined = fa <= fb ? a : b;
  const double final_s = family(s_refined) <= best_f ? s_refined : best_s;
  family(final_s);  // leaves q at the minimizing family member
  ++evals;

  ExponentResult result = finish(prob, q, P, evals);
  if (cross_validate) {
    const ExponentResult primal = error_exponent(rate, P);
    if (std::abs(primal.value - result.value) > 1e-6)
      throw solver_inconsistency(
          "exponent solvers disagree: primal " + std::to_string(primal.value) +
          " vs tilted " + std::to_string(result.value));
  }
  return result;
}

double capacity_lower_bound(const ErrorDistribution& P) {
  return 1.0 - entropy(P);
}

double binary_entropy(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw argument_error("binary entropy needs x in [0,1]");
  x = std::clamp(x, 0.0, 1.0);
  return (-xlogx(x) - xlogx(1.0 - x)) / std::log(2.0);
}

double hashing_entropy(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12)
    throw argument_error("hashing entropy needs p in [0,1]");
  p = std::clamp(p, 0.0, 1.0);
  return binary_entropy(p) + p * std::log2(3.0);
}

double hashing_threshold() {
  double lo = 1e-9, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 - hashing_entropy(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double amplitude_damping_capacity_formula(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw argument_error("gamma must be in [0,1]");
  const double arg =
      std::clamp(0.5 + std::sqrt(1.0 - gamma) / (2.0 - gamma), 0.0, 1.0);
  return 1.0 - binary_entropy(gamma / 2.0) -
         (1.0 - gamma / 2.0) * binary_entropy(arg) - gamma / 2.0;
}

EntangledMaximum entangled_overlap_maximum(const QuantumChannel& ch,
                                           std::uint64_t seed, int starts) {
  if (ch.d != 2 || ch.m != 1)
    throw argument_error(
        "entangled overlap parameterization is defined for d = 2 only");
  const DenseOperator M = choi_state(ch);

  // Real frame for maximally entangled states (x, y, -y*, x*)^t:
  // eta = u c0 + v c1 + w c2 + z c3 with x = u + iv, y = w + iz.
  Eigen::Matrix<Complex, 4, 4> c = Eigen::Matrix<Complex, 4, 4>::Zero();
  const Complex im(0.0, 1.0);
  c.col(0) << 1, 0, 0, 1;
  c.col(1) << im, 0, 0, -im;
  c.col(2) << 0, 1, -1, 0;
  c.col(3) << 0, im, im, 0;
  Eigen::Matrix4d S;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      S(a, b) = (c.col(a).adjoint() * M * c.col(b))(0).real();
  S = 0.5 * (S + S.transpose()).eval();

  // Projected ascent on the radius-sqrt(1/2) sphere; with the spectral shift
  // this is a power iteration, so each start converges to the top eigenvector
  // unless started orthogonal to it.
  const double shift = S.norm() + 1.0;
  Rng rng(seed);
  double best = -kInf;
  Eigen::Vector4d best_w = Eigen::Vector4d::Zero();
  for (int s = 0; s < std::max(1, starts); ++s) {
    Eigen::Vector4d w;
    for (int i = 0; i < 4; ++i) w(i) = rng.normal();
    w.normalize();
    double obj = w.dot(S * w);
    for (int it = 0; it < 20000; ++it) {
      w = (S * w + shift * w).normalized();
      const double next = w.dot(S * w);
      if (std::abs(next - obj) < 1e-15) {
        obj = next;
        break;
      }
      obj = next;
    }
    if (obj > best) {
      best = obj;
      best_w = w;
    }
  }
  best_w *= std::sqrt(0.5);

  EntangledMaximum result;
  result.overlap = best * 0.5;  // w^T S w at |w|^2 = 1/2
  result.p_prime = 1.0 - result.overlap;
  result.eta = c * best_w.cast<Complex>();
  return result;
}

namespace {

// U = xi(sqrt(2) (x*, y*, -y, x)) = sqrt(2) [[x, -y*], [y, x*]], unitary;
// the preprocessing map is rho -> U^dag rho U, i.e. Kraus operator U^dag.
DenseOperator aligned_preprocessing(const EntangledMaximum& em) {
  const Complex x = em.eta(0);
  const Complex y = em.eta(1);
  DenseOperator U(2, 2);
  const double s2 = std::sqrt(2.0);
  U << s2 * x, -s2 * std::conj(y), s2 * y, s2 * std::conj(x);
  return U.adjoint();
}

}  // namespace

BoundReport bound_comparison(const QuantumChannel& ch, std::uint64_t seed) {
  const EntangledMaximum em = entangled_overlap_maximum(ch, seed);
  const QuantumChannel preprocessed =
      compose_unitary(aligned_preprocessing(em), ch);

  BoundReport report;
  report.capacity_lb = capacity_lower_bound(error_distribution(ch));
  const ErrorDistribution p_ua = error_distribution(preprocessed);
  report.capacity_lb_preprocessed = capacity_lower_bound(p_ua);
  report.p_prime = em.p_prime;
  report.rival_lb = 1.0 - hashing_entropy(std::clamp(em.p_prime, 0.0, 1.0));
  report.p_ua_identity = p_ua[0];
  report.eta = em.eta;

  if (report.capacity_lb_preprocessed < report.rival_lb - 1e-8)
    throw invariant_violation(
        "preprocessed capacity bound fell below the hashing rival bound");
  if (std::abs(report.p_ua_identity - (1.0 - em.p_prime)) > 1e-6)
    throw invariant_violation(
        "P_{UA}((0,0)) does not reproduce 1 - p' within tolerance");
  return report;
}

BasisSearchResult random_basis_search(const QuantumChannel& ch, int samples,
                                      std::uint64_t seed) {
  if (ch.m != 1)
    throw argument_error("basis search expects a single-system channel");
  const std::uint32_t d = ch.d;
  Rng rng(seed);

  std::vector<std::uint32_t> roots;
  for (std::uint32_t k = 1; k < d; ++k) roots.push_back(k);
  if (roots.empty()) roots.push_back(1);

  BasisSearchResult best;
  best.capacity_lb = -kInf;
  best.samples = samples;
  auto consider = [&](const DenseOperator& frame, std::uint32_t root,
                      const DenseOperator& pre) {
    const QuantumChannel run = compose_unitary(pre, ch);
    const double value = capacity_lower_bound(
        error_distribution(run, ErrorBasis::from_frame(frame, root)));
    if (value > best.capacity_lb) {
      best.capacity_lb = value;
      best.frame = frame;
      best.root_index = root;
      best.preprocessing = pre;
    }
  };

  const DenseOperator ident = DenseOperator::Identity(d, d);
  consider(ident, 1, ident);
  if (d == 2)
    consider(ident, 1,
             aligned_preprocessing(entangled_overlap_maximum(ch, seed)));

  auto random_unitary = [&] {
    DenseOperator g(d, d);
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t j = 0; j < d; ++j)
        g(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<DenseOperator> qr(g);
    return DenseOperator(qr.householderQ() * ident);
  };
  for (int s = 0; s < samples; ++s) {
    const DenseOperator frame = random_unitary();
    const DenseOperator pre = random_unitary();
    const auto root = roots[rng.below(roots.size())];
    consider(frame, root, pre);
    consider(frame, root, ident);  // basis change alone
  }
  return best;
}

double fidelity_bound(std::uint32_t n, std::uint32_t k, double rate,
                      const ErrorDistribution& P,
                      const ExponentOptions& options) {
  if (rate < 0.0 || rate > 1.0) throw argument_error("rate must be in [0,1]");
  if (n == 0) throw argument_error("code length must be positive");
  if (static_cast<double>(k) > std::ceil(rate * n) + 1e-9)
    throw argument_error("k must satisfy k <= ceil(R n)");
  const double d = static_cast<double>(P.d);
  const double exponent = error_exponent(rate, P, options).value;
  const double log_term = std::log(2.0) + 2.0 * std::log(d) +
                          2.0 * (d * d - 1.0) * std::log(n + 1.0) -
                          n * exponent * std::log(d);
  return 1.0 - std::exp(log_term);
}

}  // namespace qfex
