#pragma once

// Dense univariate polynomials with arbitrary-size integer coefficients.

#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "classpoly/numerics.hpp"

namespace classpoly {

class IntPolynomial {
 public:
  /// The zero polynomial.
  IntPolynomial() = default;
  /// Coefficients c_0, c_1, ..., c_d (ascending powers); trailing zeros dropped.
  explicit IntPolynomial(std::vector<mpz_class> ascending);
  IntPolynomial(std::initializer_list<long> ascending);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  /// c_i, or zero past the degree.
  mpz_class coefficient(std::size_t i) const;
  const mpz_class& leading() const;
  mpz_class constant_term() const { return coefficient(0); }
  bool is_monic() const { return !is_zero() && leading() == 1; }

  /// gcd of the coefficients, nonnegative.
  mpz_class content() const;
  /// P / content(P), sign-normalized so that the leading coefficient is positive.
  IntPolynomial primitive_part() const;

  IntPolynomial derivative() const;
  mpz_class evaluate(const mpz_class& x) const;
  Real evaluate(const Real& x, Precision p) const;
  Complex evaluate(const Complex& z, Precision p) const;
  /// |P(z)| / sum |c_i| |z|^i, the backward-error style residual at z.
  Real relative_residual(const Complex& z, Precision p) const;

  IntPolynomial& operator+=(const IntPolynomial& rhs);
  IntPolynomial& operator-=(const IntPolynomial& rhs);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const mpz_class& k, const IntPolynomial& a);
  IntPolynomial operator-() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// "z^3 - 2z^2 + 4z - 1" style rendering.
  std::string to_string(const std::string& var = "z") const;

 private:
  void normalize();
  std::vector<mpz_class> coeffs_;
};

/// lc(B)^(deg A - deg B + 1) A mod B, computed exactly. B nonzero.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);
/// A / B when B divides A exactly over Z; InconsistencyError otherwise.
IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b);
/// Primitive gcd with positive leading coefficient (content ignored).
IntPolynomial primitive_gcd(IntPolynomial a, IntPolynomial b);

/// Res(P, Q) by the subresultant PRS. DomainError if either input is zero.
mpz_class resultant(const IntPolynomial& p, const IntPolynomial& q);
/// (-1)^(d(d-1)/2) Res(P, P') / lc(P); 1 for degree <= 1.
mpz_class discriminant(const IntPolynomial& p);

struct IntegerSqrt {
  mpz_class root;
  bool exact;
};
/// floor(sqrt(m)) and whether m is a perfect square. DomainError for m < 0.
IntegerSqrt integer_sqrt(const mpz_class& m);

/// Number of distinct real roots, by an exact Sturm sequence.
int real_root_count(const IntPolynomial& p);

/// All complex roots of a squarefree polynomial (Aberth iteration), each with
/// last Aberth correction below 2^-bits relative. PrecisionError if the
/// iteration stalls.
std::vector<Complex> complex_roots(const IntPolynomial& p, Precision prec);

}  // namespace classpoly
