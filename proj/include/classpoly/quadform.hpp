#pragma once

// Positive definite binary quadratic forms a x^2 + b xy + c y^2 of
// discriminant -n and the class group Cl(n) they form under Gauss composition.

#include <cstddef>
#include <string>
#include <vector>

#include "classpoly/numerics.hpp"

namespace classpoly {

struct QuadForm {
  long a = 0;
  long b = 0;
  long c = 0;

  long discriminant() const { return b * b - 4 * a * c; }
  bool is_primitive() const;
  /// |b| <= a <= c, with b >= 0 when |b| = a or a = c.
  bool is_reduced() const;
  /// Equal to its own inverse in the class group: b = 0, a = b or a = c.
  bool is_ambiguous() const { return b == 0 || a == b || a == c; }

  std::string to_string() const;

  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  /// Lexicographic by (a, b); c is determined by the discriminant.
  friend auto operator<=>(const QuadForm& x, const QuadForm& y) {
    if (x.a != y.a) return x.a <=> y.a;
    if (x.b != y.b) return x.b <=> y.b;
    return x.c <=> y.c;
  }
};

/// True for positive n with n = 11 (mod 24).
bool is_supported_n(long n);
/// Throws UnsupportedError with "n must be ≡ 11 (mod 24)" otherwise.
void require_supported_n(long n);
bool is_squarefree(long n);
/// Distinct prime divisors of n in increasing order.
std::vector<long> distinct_prime_factors(long n);

/// Unique reduced form equivalent to f. Throws InvalidFormError when f is not
/// primitive and positive definite.
QuadForm reduce(QuadForm f);
/// As above, additionally requiring discriminant -n.
QuadForm reduce(QuadForm f, long n);

/// All primitive reduced forms of discriminant -n, sorted by (a, b).
/// `allow_any` admits every n = 3 (mod 4); that surface is for debugging only.
std::vector<QuadForm> enumerate_reduced(long n, bool allow_any = false);

/// Reduced representative of the product class (classical Gauss composition).
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm inverse(const QuadForm& f);
QuadForm identity_form(long n);

class ClassGroup {
 public:
  explicit ClassGroup(long n, bool allow_any = false);

  long n() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<QuadForm>& elements() const { return elements_; }
  const QuadForm& identity() const { return elements_[identity_]; }
  std::size_t identity_index() const { return identity_; }

  std::size_t index_of(const QuadForm& f) const;
  std::size_t compose_index(std::size_t i, std::size_t j) const { return table_[i][j]; }
  long element_order(std::size_t i) const;

  /// d_1 | d_2 | ... with the group isomorphic to the sum of Z/d_i.
  /// The trivial group reports [1].
  const std::vector<long>& invariant_factors() const { return invariant_factors_; }
  bool is_cyclic() const { return invariant_factors_.size() == 1; }

 private:
  long n_;
  std::vector<QuadForm> elements_;
  std::size_t identity_ = 0;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<long> invariant_factors_;
};

inline ClassGroup class_group(long n) { return ClassGroup(n); }

/// |{g : g*g = 1}| by direct composition.
long two_torsion_count(const ClassGroup& group);
/// 2^(t-1) with t the number of distinct primes of n (ambiguous class count).
/// Throws UnsupportedError for non-squarefree n.
long genus_two_torsion(long n);

/// Invariant factors of a finite abelian group given by its Cayley table.
std::vector<long> invariant_factors_of_table(const std::vector<std::vector<std::size_t>>& table,
                                             std::size_t identity);

struct CMPoint {
  QuadForm form;
  Complex tau;
};

/// tau = (-b + i sqrt(n)) / (2a) for a reduced form of discriminant -n.
CMPoint cm_point(const QuadForm& f, Precision p);

}  // namespace classpoly
