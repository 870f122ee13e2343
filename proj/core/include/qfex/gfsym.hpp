#pragma once

// Exact linear algebra over the prime field F_d with the symplectic pairing
// <x,y> = sum_i u_i v'_i - v_i u'_i on F_d^{2n}, where vectors interleave
// coordinates as (u_1, v_1, ..., u_n, v_n). Everything in this header is
// exact integer arithmetic; no floating point.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfex/errors.hpp"

namespace qfex {

bool is_prime(std::uint32_t n);

/// Arithmetic mod a prime d. Construction checks primality by trial division.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t d);

  std::uint32_t order() const { return d_; }

  std::uint16_t add(std::uint16_t a, std::uint16_t b) const {
    return static_cast<std::uint16_t>((a + b) % d_);
  }
  std::uint16_t sub(std::uint16_t a, std::uint16_t b) const {
    return static_cast<std::uint16_t>((a + d_ - b) % d_);
  }
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
    return static_cast<std::uint16_t>(
        (static_cast<std::uint32_t>(a) * b) % d_);
  }
  std::uint16_t neg(std::uint16_t a) const {
    return static_cast<std::uint16_t>((d_ - a) % d_);
  }
  std::uint16_t inv(std::uint16_t a) const;

 private:
  std::uint32_t d_;
};

/// A vector in F_d^{2n}, interleaved as (u_1, v_1, ..., u_n, v_n). The i-th
/// symbol pair (u_i, v_i) indexes the error alphabet X = {0..d-1}^2 via
/// u_i * d + v_i.
class SymplecticVector {
 public:
  SymplecticVector(std::vector<std::uint16_t> coords, std::uint32_t d);

  /// Parse a digit string such as "0101" (requires d <= 10).
  static SymplecticVector from_string(const std::string& digits,
                                      std::uint32_t d);
  /// Decode from the base-d rank with coordinate 0 as the most significant
  /// digit, so rank order coincides with lexicographic order.
  static SymplecticVector from_rank(std::uint64_t rank, std::uint32_t n,
                                    std::uint32_t d);
  static SymplecticVector zero(std::uint32_t n, std::uint32_t d);

  std::uint32_t d() const { return d_; }
  std::uint32_t n() const { return static_cast<std::uint32_t>(c_.size() / 2); }
  std::size_t length() const { return c_.size(); }
  std::uint16_t operator[](std::size_t i) const { return c_[i]; }
  const std::vector<std::uint16_t>& coords() const { return c_; }

  std::uint16_t u(std::size_t i) const { return c_[2 * i]; }
  std::uint16_t v(std::size_t i) const { return c_[2 * i + 1]; }
  /// Symbol index u_i * d + v_i of the i-th pair.
  std::uint32_t symbol(std::size_t i) const { return u(i) * d_ + v(i); }

  bool is_zero() const;
  std::uint64_t rank() const;
  std::string to_string() const;

  SymplecticVector operator+(const SymplecticVector& o) const;
  SymplecticVector operator-(const SymplecticVector& o) const;
  SymplecticVector scaled(std::uint16_t a) const;

  bool operator==(const SymplecticVector& o) const {
    return d_ == o.d_ && c_ == o.c_;
  }
  /// Lexicographic on coordinates, values ordered 0 < 1 < ... < d-1.
  bool operator<(const SymplecticVector& o) const { return c_ < o.c_; }

 private:
  std::vector<std::uint16_t> c_;
  std::uint32_t d_;
};

/// <x,y> = sum_i (u_i v'_i - v_i u'_i) mod d. Bilinear and antisymmetric;
/// throws dimension_error on length or modulus mismatch.
std::uint16_t symplectic_form(const SymplecticVector& x,
                              const SymplecticVector& y);

/// A subspace of F_d^{2n} held as a canonical row-reduced echelon basis
/// (pivot columns strictly increasing, pivots normalized to 1, pivot columns
/// cleared above and below). Two equal subspaces compare equal row-for-row.
class SymplecticSubspace {
 public:
  /// Span of a (possibly dependent, possibly empty) set of vectors.
  static SymplecticSubspace span(const std::vector<SymplecticVector>& vectors,
                                 std::uint32_t n, std::uint32_t d);
  static SymplecticSubspace zero(std::uint32_t n, std::uint32_t d);
  static SymplecticSubspace full(std::uint32_t n, std::uint32_t d);

  std::uint32_t d() const { return d_; }
  std::uint32_t ambient_n() const { return n_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.size()); }
  const std::vector<SymplecticVector>& basis() const { return rows_; }

  bool contains(const SymplecticVector& x) const;
  /// All d^dim elements, in the rank order of their coefficient tuples.
  std::vector<SymplecticVector> elements() const;

  bool operator==(const SymplecticSubspace& o) const;

 private:
  SymplecticSubspace(std::vector<SymplecticVector> rows, std::uint32_t n,
                     std::uint32_t d);
  std::vector<SymplecticVector> rows_;
  std::uint32_t n_;
  std::uint32_t d_;
};

/// L_perp = { x | <x,y> = 0 for all y in L }. dim L + dim L_perp = 2n and
/// dual_space(dual_space(L)) == L.
SymplecticSubspace dual_space(const SymplecticSubspace& L);

/// True iff every pair of basis rows pairs to zero under the form.
bool is_self_orthogonal(const SymplecticSubspace& L);

/// Visit every self-orthogonal subspace of the given dimension exactly once
/// (canonical-form dedup). Enforced cap: 2n * dim * log2(d) <= 24.
void for_each_self_orthogonal(
    std::uint32_t n, std::uint32_t dim, std::uint32_t d,
    const std::function<void(const SymplecticSubspace&)>& sink);

std::vector<SymplecticSubspace> enumerate_self_orthogonal(std::uint32_t n,
                                                          std::uint32_t dim,
                                                          std::uint32_t d);

/// Empirical distribution of the n symbol pairs of a vector over X.
struct TypeDistribution {
  std::vector<std::uint32_t> counts;  // size d*d, indexed by symbol
  std::uint32_t n = 0;
  std::uint32_t d = 0;

  /// Entropy of counts/n in base-d logarithms.
  double entropy() const;
  /// prod_u counts(u)^counts(u): exact integer entropy comparator.
  /// Larger weight means lower entropy (n fixed); ties in entropy are ties
  /// in weight and vice versa by unique factorization.
  std::uint64_t concentration_weight() const;
  double prob(std::uint32_t symbol) const {
    return static_cast<double>(counts[symbol]) / n;
  }
};

TypeDistribution type_of(const SymplecticVector& x);

/// All types of length-n sequences over X = {0..d-1}^2.
std::vector<TypeDistribution> enumerate_types(std::uint32_t n,
                                              std::uint32_t d);

/// |T_Q^n| = n! / prod_u counts(u)!, exact.
std::uint64_t type_class_size(const TypeDistribution& q);

struct LeaderOptions {
  /// Vectors to use as their coset's representative instead of the default
  /// tie-break, provided they are entropy minimizers of that coset.
  std::vector<SymplecticVector> preferred;
};

/// One representative per coset of L_perp in F_d^{2n} (d^{dim L} vectors,
/// ordered by syndrome index). Each representative minimizes the type
/// entropy within its coset; among minimizers the lexicographically smallest
/// vector wins unless overridden. Cap: d^{2n} <= 2^24.
std::vector<SymplecticVector> min_entropy_coset_leaders(
    const SymplecticSubspace& L, const LeaderOptions& options = {});

/// Syndrome of x with respect to L: the tuple (<x, b_i>)_i over the canonical
/// basis rows of L, folded into one base-d index. Constant on cosets of
/// L_perp and injective across them.
std::uint64_t coset_index(const SymplecticSubspace& L,
                          const SymplecticVector& x);

/// Exact nonnegative rational, always reduced.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  std::string to_string() const;
};

struct WittCensus {
  Rational observed;        // common value of |A(x)| / |A_so| over x != 0
  Rational formula;         // (d^{n+k'} - 1) / (d^{2n} - 1)
  std::uint64_t family_size = 0;  // |A_so|
};

/// Enumerate A_so = { L self-orthogonal, dim L = n - k' } and count, for
/// every nonzero x, the members whose dual contains x. The ratio is the same
/// for every nonzero x and matches the closed form; a mismatch throws
/// invariant_violation. |A(0)| = 0 by convention (0 is excluded from
/// L_perp \ {0}).
WittCensus witt_ratio_census(std::uint32_t n, std::uint32_t kprime,
                             std::uint32_t d);

}  // namespace qfex
