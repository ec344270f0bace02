#pragma once

// Exact integer LLL reduction and integer-relation (minimal polynomial)
// recovery for a real number known to high precision.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "classpoly/numerics.hpp"
#include "classpoly/polynomial.hpp"

namespace classpoly {

using IntVector = std::vector<mpz_class>;

class IntegerLattice {
 public:
  IntegerLattice() = default;
  /// Rows must be nonempty and of equal length.
  explicit IntegerLattice(std::vector<IntVector> rows);

  std::size_t rank() const { return rows_.size(); }
  std::size_t dimension() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const std::vector<IntVector>& rows() const { return rows_; }
  const IntVector& row(std::size_t i) const { return rows_[i]; }

  static IntegerLattice identity(std::size_t n);

  friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;

 private:
  std::vector<IntVector> rows_;
};

struct LllResult {
  IntegerLattice basis;
  /// Unimodular U with basis = U * input (rows).
  std::vector<IntVector> transform;
};

mpz_class dot(const IntVector& a, const IntVector& b);

/// LLL with Lovász parameter delta in (1/4, 1), using integral Gram-Schmidt
/// data so no rounding ever happens. RankError for dependent rows.
LllResult lll_reduce(const IntegerLattice& lattice, const mpq_class& delta = mpq_class(99, 100));

/// Integer polynomial Q of degree <= degree with Q(x) ~ 0, primitive with a
/// positive leading coefficient. Uses the embedding rows (e_i | round(C x^i)),
/// C = 2^(bits-16); all short relation vectors found are combined by a gcd,
/// so the result is the minimal polynomial when it has degree <= `degree`.
/// PrecisionError when no relation with small coefficients exists at this
/// precision. `x` must carry at least p.bits() of precision.
IntPolynomial algdep(const Real& x, int degree, Precision p);

/// log2 of the largest coefficient a recovered relation may have at this
/// precision and degree: (bits - 16) / (2 (degree + 1)).
double algdep_height_bound_log2(int degree, Precision p);

}  // namespace classpoly
