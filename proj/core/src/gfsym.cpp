#include "qfex/gfsym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>
#include <utility>

namespace qfex {

namespace {

// Hard cap on exact enumerations: at most 2^24 items.
constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

// d^e with an explicit ceiling; returns nullopt once the ceiling is passed.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t e,
                                         std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > cap / base) return std::nullopt;
    r *= base;
  }
  return r;
}

std::uint64_t pow_or_throw(std::uint64_t base, std::uint64_t e,
                           std::uint64_t cap, const char* what) {
  auto r = checked_pow(base, e, cap);
  if (!r) throw resource_error(what);
  return *r;
}

// Row-reduced echelon form over F_d, in place. Returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<std::uint16_t>>& rows,
                              const PrimeField& f) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const std::uint16_t ipiv = f.inv(rows[r][c]);
    for (std::size_t j = c; j < cols; ++j) rows[r][j] = f.mul(rows[r][j], ipiv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint16_t factor = rows[i][c];
      for (std::size_t j = c; j < cols; ++j)
        rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::string subspace_key(const std::vector<SymplecticVector>& rows) {
  std::string key;
  for (const auto& row : rows)
    for (std::uint16_t c : row.coords()) {
      key.push_back(static_cast<char>(c & 0xff));
      key.push_back(static_cast<char>(c >> 8));
    }
  return key;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t d) : d_(d) {
  if (!is_prime(d))
    throw argument_error("field order " + std::to_string(d) + " is not prime");
}

std::uint16_t PrimeField::inv(std::uint16_t a) const {
  if (a == 0) throw argument_error("inverse of zero in F_" + std::to_string(d_));
  // Extended Euclid on (a, d).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = d_, new_r = a % d_;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += d_;
  return static_cast<std::uint16_t>(t);
}

SymplecticVector::SymplecticVector(std::vector<std::uint16_t> coords,
                                   std::uint32_t d)
    : c_(std::move(coords)), d_(d) {
  PrimeField field(d);
  if (c_.empty() || c_.size() % 2 != 0)
    throw dimension_error("symplectic vector length must be even and positive");
  for (std::uint16_t x : c_)
    if (x >= d)
      throw argument_error("coordinate " + std::to_string(x) +
                           " out of range for F_" + std::to_string(d));
}

SymplecticVector SymplecticVector::from_string(const std::string& digits,
                                               std::uint32_t d) {
  if (d > 10)
    throw argument_error("digit-string encoding requires d <= 10");
  std::vector<std::uint16_t> c;
  c.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '0' || ch > '9')
      throw argument_error("invalid digit '" + std::string(1, ch) + "'");
    c.push_back(static_cast<std::uint16_t>(ch - '0'));
  }
  return SymplecticVector(std::move(c), d);
}

SymplecticVector SymplecticVector::from_rank(std::uint64_t rank,
                                             std::uint32_t n,
                                             std::uint32_t d) {
  std::vector<std::uint16_t> c(2 * n);
  for (std::size_t i = 2 * n; i-- > 0;) {
    c[i] = static_cast<std::uint16_t>(rank % d);
    rank /= d;
  }
  return SymplecticVector(std::move(c), d);
}

SymplecticVector SymplecticVector::zero(std::uint32_t n, std::uint32_t d) {
  return SymplecticVector(std::vector<std::uint16_t>(2 * n, 0), d);
}

bool SymplecticVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint16_t x) { return x == 0; });
}

std::uint64_t SymplecticVector::rank() const {
  std::uint64_t r = 0;
  for (std::uint16_t x : c_) r = r * d_ + x;
  return r;
}

std::string SymplecticVector::to_string() const {
  std::string s;
  for (std::uint16_t x : c_) s += static_cast<char>('0' + x);
  return s;
}

SymplecticVector SymplecticVector::operator+(const SymplecticVector& o) const {
  if (d_ != o.d_ || c_.size() != o.c_.size())
    throw dimension_error("vector addition: mismatched length or modulus");
  PrimeField f(d_);
  std::vector<std::uint16_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f.add(c_[i], o.c_[i]);
  return SymplecticVector(std::move(r), d_);
}

SymplecticVector SymplecticVector::operator-(const SymplecticVector& o) const {
  if (d_ != o.d_ || c_.size() != o.c_.size())
    throw dimension_error("vector subtraction: mismatched length or modulus");
  PrimeField f(d_);
  std::vector<std::uint16_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f.sub(c_[i], o.c_[i]);
  return SymplecticVector(std::move(r), d_);
}

SymplecticVector SymplecticVector::scaled(std::uint16_t a) const {
  PrimeField f(d_);
  std::vector<std::uint16_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f.mul(c_[i], a);
  return SymplecticVector(std::move(r), d_);
}

std::uint16_t symplectic_form(const SymplecticVector& x,
                              const SymplecticVector& y) {
  if (x.d() != y.d() || x.length() != y.length())
    throw dimension_error("symplectic form: mismatched length or modulus");
  PrimeField f(x.d());
  std::uint16_t acc = 0;
  for (std::size_t i = 0; i < x.n(); ++i) {
    acc = f.add(acc, f.mul(x.u(i), y.v(i)));
    acc = f.sub(acc, f.mul(x.v(i), y.u(i)));
  }
  return acc;
}

SymplecticSubspace::SymplecticSubspace(std::vector<SymplecticVector> rows,
                                       std::uint32_t n, std::uint32_t d)
    : rows_(std::move(rows)), n_(n), d_(d) {}

SymplecticSubspace SymplecticSubspace::span(
    const std::vector<SymplecticVector>& vectors, std::uint32_t n,
    std::uint32_t d) {
  PrimeField f(d);
  std::vector<std::vector<std::uint16_t>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.d() != d || v.n() != n)
      throw dimension_error("span: vector does not live in F_d^{2n}");
    rows.push_back(v.coords());
  }
  rref(rows, f);
  std::vector<SymplecticVector> basis;
  basis.reserve(rows.size());
  for (auto& r : rows) basis.emplace_back(std::move(r), d);
  return SymplecticSubspace(std::move(basis), n, d);
}

SymplecticSubspace SymplecticSubspace::zero(std::uint32_t n, std::uint32_t d) {
  PrimeField f(d);  // validates d
  return SymplecticSubspace({}, n, d);
}

SymplecticSubspace SymplecticSubspace::full(std::uint32_t n, std::uint32_t d) {
  std::vector<SymplecticVector> rows;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    std::vector<std::uint16_t> c(2 * n, 0);
    c[i] = 1;
    rows.emplace_back(std::move(c), d);
  }
  return SymplecticSubspace(std::move(rows), n, d);
}

bool SymplecticSubspace::contains(const SymplecticVector& x) const {
  if (x.d() != d_ || x.n() != n_)
    throw dimension_error("contains: vector does not live in F_d^{2n}");
  PrimeField f(d_);
  std::vector<std::uint16_t> rem = x.coords();
  for (const auto& row : rows_) {
    // Pivot of a canonical row is its first nonzero coordinate (value 1).
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    if (rem[p] == 0) continue;
    const std::uint16_t factor = rem[p];
    for (std::size_t j = p; j < rem.size(); ++j)
      rem[j] = f.sub(rem[j], f.mul(factor, row[j]));
  }
  return std::all_of(rem.begin(), rem.end(),
                     [](std::uint16_t v) { return v == 0; });
}

std::vector<SymplecticVector> SymplecticSubspace::elements() const {
  const std::uint64_t count =
      pow_or_throw(d_, dim(), kEnumerationCap, "subspace too large to list");
  std::vector<SymplecticVector> out;
  out.reserve(count);
  for (std::uint64_t t = 0; t < count; ++t) {
    SymplecticVector acc = SymplecticVector::zero(n_, d_);
    std::uint64_t rest = t;
    for (std::size_t i = dim(); i-- > 0;) {
      const auto coeff = static_cast<std::uint16_t>(rest % d_);
      rest /= d_;
      if (coeff != 0) acc = acc + rows_[i].scaled(coeff);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

bool SymplecticSubspace::operator==(const SymplecticSubspace& o) const {
  return d_ == o.d_ && n_ == o.n_ && rows_ == o.rows_;
}

SymplecticSubspace dual_space(const SymplecticSubspace& L) {
  const std::uint32_t n = L.ambient_n(), d = L.d();
  PrimeField f(d);
  // x in L_perp  iff  (J b) . x = 0 for every basis row b, where
  // (J b)[2i] = b[2i+1] and (J b)[2i+1] = -b[2i].
  std::vector<std::vector<std::uint16_t>> rows;
  for (const auto& b : L.basis()) {
    std::vector<std::uint16_t> jb(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      jb[2 * i] = b.v(i);
      jb[2 * i + 1] = f.neg(b.u(i));
    }
    rows.push_back(std::move(jb));
  }
  const auto pivots = rref(rows, f);
  std::vector<bool> is_pivot(2 * n, false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  std::vector<SymplecticVector> kernel;
  for (std::size_t free = 0; free < 2 * n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint16_t> x(2 * n, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      x[pivots[i]] = f.neg(rows[i][free]);
    kernel.emplace_back(std::move(x), d);
  }
  return SymplecticSubspace::span(kernel, n, d);
}

bool is_self_orthogonal(const SymplecticSubspace& L) {
  const auto& b = L.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (symplectic_form(b[i], b[j]) != 0) return false;
  return true;
}

void for_each_self_orthogonal(
    std::uint32_t n, std::uint32_t dim, std::uint32_t d,
    const std::function<void(const SymplecticSubspace&)>& sink) {
  PrimeField f(d);
  if (dim > 2 * n)
    throw argument_error("subspace dimension exceeds ambient dimension");
  if (dim == 0) {
    sink(SymplecticSubspace::zero(n, d));
    return;
  }
  pow_or_throw(d, 2ull * n * dim, kEnumerationCap,
               "self-orthogonal enumeration exceeds the 2^24 cap");
  const std::uint64_t space =
      pow_or_throw(d, 2ull * n, kEnumerationCap, "ambient space too large");

  // Strictly increasing rank tuples cover every subspace; canonical-form
  // dedup removes the remaining multiplicity.
  std::vector<std::uint64_t> idx(dim);
  for (std::uint32_t i = 0; i < dim; ++i) idx[i] = i + 1;  // skip rank 0
  if (idx.back() >= space) return;

  std::vector<SymplecticVector> tuple;
  std::unordered_set<std::string> seen;
  while (true) {
    tuple.clear();
    for (std::uint64_t r : idx)
      tuple.push_back(SymplecticVector::from_rank(r, n, d));

    bool isotropic = true;
    for (std::size_t i = 0; i < tuple.size() && isotropic; ++i)
      for (std::size_t j = i + 1; j < tuple.size() && isotropic; ++j)
        if (symplectic_form(tuple[i], tuple[j]) != 0) isotropic = false;

    if (isotropic) {
      SymplecticSubspace s = SymplecticSubspace::span(tuple, n, d);
      if (s.dim() == dim && seen.insert(subspace_key(s.basis())).second)
        sink(s);
    }

    // Advance to the next strictly increasing rank tuple over [1, space-1].
    bool advanced = false;
    for (std::size_t k = dim; k-- > 0;) {
      if (idx[k] < space - 1 - (dim - 1 - k)) {
        ++idx[k];
        for (std::size_t j = k + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

std::vector<SymplecticSubspace> enumerate_self_orthogonal(std::uint32_t n,
                                                          std::uint32_t dim,
                                                          std::uint32_t d) {
  std::vector<SymplecticSubspace> out;
  for_each_self_orthogonal(n, dim, d,
                           [&](const SymplecticSubspace& s) { out.push_back(s); });
  return out;
}

double TypeDistribution::entropy() const {
  double h = 0.0;
  const double logd = std::log(static_cast<double>(d));
  for (std::uint32_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p) / logd;
  }
  return h;
}

std::uint64_t TypeDistribution::concentration_weight() const {
  if (n > 15)
    throw resource_error("exact entropy weight needs sequence length <= 15");
  std::uint64_t w = 1;
  for (std::uint32_t c : counts)
    for (std::uint32_t i = 0; i < c; ++i) w *= c;
  return w;
}

TypeDistribution type_of(const SymplecticVector& x) {
  TypeDistribution t;
  t.d = x.d();
  t.n = x.n();
  t.counts.assign(static_cast<std::size_t>(x.d()) * x.d(), 0);
  for (std::size_t i = 0; i < x.n(); ++i) ++t.counts[x.symbol(i)];
  return t;
}

namespace {
void compositions(std::uint32_t remaining, std::size_t slot,
                  std::vector<std::uint32_t>& counts,
                  std::vector<TypeDistribution>& out, std::uint32_t n,
                  std::uint32_t d) {
  if (slot + 1 == counts.size()) {
    counts[slot] = remaining;
    out.push_back(TypeDistribution{counts, n, d});
    return;
  }
  for (std::uint32_t c = 0; c <= remaining; ++c) {
    counts[slot] = c;
    compositions(remaining - c, slot + 1, counts, out, n, d);
  }
}
}  // namespace

std::vector<TypeDistribution> enumerate_types(std::uint32_t n,
                                              std::uint32_t d) {
  PrimeField f(d);
  std::vector<TypeDistribution> out;
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(d) * d, 0);
  compositions(n, 0, counts, out, n, d);
  return out;
}

std::uint64_t type_class_size(const TypeDistribution& q) {
  if (q.n > 20) throw resource_error("type class size needs n <= 20");
  // Multinomial as a product of binomials over prefix sums.
  auto binom = [](std::uint64_t n, std::uint64_t k) {
    if (k > n) return std::uint64_t{0};
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  std::uint64_t total = 0, result = 1;
  for (std::uint32_t c : q.counts) {
    total += c;
    result *= binom(total, c);
  }
  return result;
}

std::uint64_t coset_index(const SymplecticSubspace& L,
                          const SymplecticVector& x) {
  std::uint64_t idx = 0, scale = 1;
  for (const auto& b : L.basis()) {
    idx += scale * symplectic_form(x, b);
    scale *= L.d();
  }
  return idx;
}

std::vector<SymplecticVector> min_entropy_coset_leaders(
    const SymplecticSubspace& L, const LeaderOptions& options) {
  const std::uint32_t n = L.ambient_n(), d = L.d();
  const std::uint64_t space = pow_or_throw(
      d, 2ull * n, kEnumerationCap, "coset enumeration exceeds the 2^24 cap");
  const std::uint64_t cosets =
      pow_or_throw(d, L.dim(), kEnumerationCap, "too many cosets");

  std::vector<std::uint64_t> best_rank(cosets, 0);
  std::vector<std::uint64_t> best_weight(cosets, 0);
  for (std::uint64_t r = 0; r < space; ++r) {
    const SymplecticVector x = SymplecticVector::from_rank(r, n, d);
    const std::uint64_t c = coset_index(L, x);
    const std::uint64_t w = type_of(x).concentration_weight();
    // Higher weight = lower entropy; rank order breaks ties lexicographically.
    if (w > best_weight[c]) {
      best_weight[c] = w;
      best_rank[c] = r;
    }
  }

  std::vector<SymplecticVector> leaders;
  leaders.reserve(cosets);
  for (std::uint64_t c = 0; c < cosets; ++c)
    leaders.push_back(SymplecticVector::from_rank(best_rank[c], n, d));

  for (const auto& pref : options.preferred) {
    if (pref.d() != d || pref.n() != n)
      throw dimension_error("preferred leader does not live in F_d^{2n}");
    const std::uint64_t c = coset_index(L, pref);
    if (type_of(pref).concentration_weight() != best_weight[c])
      throw argument_error("preferred leader " + pref.to_string() +
                           " does not minimize type entropy in its coset");
    leaders[c] = pref;
  }
  return leaders;
}

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw argument_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

WittCensus witt_ratio_census(std::uint32_t n, std::uint32_t kprime,
                             std::uint32_t d) {
  if (kprime > n) throw argument_error("census requires k' <= n");
  const std::uint32_t dim = n - kprime;
  const std::uint64_t space = pow_or_throw(
      d, 2ull * n, kEnumerationCap, "census space exceeds the 2^24 cap");

  std::vector<std::uint64_t> hits(space, 0);
  std::uint64_t family = 0;
  for_each_self_orthogonal(n, dim, d, [&](const SymplecticSubspace& L) {
    ++family;
    for (const auto& x : dual_space(L).elements())
      if (!x.is_zero()) ++hits[x.rank()];
  });
  if (family == 0) throw invariant_violation("empty self-orthogonal family");

  const std::uint64_t count = hits[1];
  for (std::uint64_t r = 1; r < space; ++r)
    if (hits[r] != count)
      throw invariant_violation(
          "census ratio differs at x = " +
          SymplecticVector::from_rank(r, n, d).to_string());

  const std::uint64_t dual_size =
      pow_or_throw(d, n + kprime, kEnumerationCap << 8, "dual too large");
  WittCensus census;
  census.family_size = family;
  census.observed = Rational(static_cast<std::int64_t>(count),
                             static_cast<std::int64_t>(family));
  census.formula = Rational(static_cast<std::int64_t>(dual_size - 1),
                            static_cast<std::int64_t>(space - 1));
  // Cross-multiplied integer identity, no reduction involved.
  const __int128 lhs = static_cast<__int128>(count) * (space - 1);
  const __int128 rhs = static_cast<__int128>(family) * (dual_size - 1);
  if (lhs != rhs || !(census.observed == census.formula))
    throw invariant_violation("census ratio does not match the closed form");
  return census;
}

}  // namespace qfex
