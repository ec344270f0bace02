#pragma once

// Arbitrary-precision real and complex values backed by MPFR.
//
// Every value carries its own precision in bits. Binary operations produce a
// result at the larger of the two operand precisions, rounded to nearest, so
// results are deterministic for fixed inputs.
//
// Error budget: a single primitive (add, mul, div, sqrt, exp, log, sin, cos)
// is correctly rounded by MPFR, i.e. relative error <= 2^-bits. Composite
// evaluations exposed by this library (q-series, products, polynomial
// evaluation) run internally at `bits + kGuardBits` or more and round once at
// the end, which keeps the delivered relative error <= 2^(-bits + kGuardBits)
// for chains of up to 2^kGuardBits primitives.

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace classpoly {

inline constexpr long kGuardBits = 16;
inline constexpr long kMinPrecisionBits = 64;

class Precision {
 public:
  /// Throws DomainError when bits < kMinPrecisionBits.
  explicit Precision(long bits);

  long bits() const { return bits_; }
  /// Decimal digits carried: floor(bits * log10(2)).
  long digits() const;
  Precision doubled() const { return Precision(bits_ * 2); }
  Precision plus(long extra_bits) const { return Precision(bits_ + extra_bits); }

  static Precision from_digits(long digits);

  friend auto operator<=>(const Precision&, const Precision&) = default;

 private:
  long bits_;
};

class Real {
 public:
  explicit Real(Precision p = Precision(kMinPrecisionBits));
  Real(long value, Precision p);
  Real(double value, Precision p);
  Real(const mpz_class& value, Precision p);
  Real(const mpq_class& value, Precision p);

  /// Parses a decimal literal such as "-3.25e-7".
  static Real parse(std::string_view text, Precision p);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision precision() const { return Precision(mpfr_get_prec(v_)); }
  Real rounded_to(Precision p) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  /// Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 20) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator*=(long rhs);

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  Real operator-() const;

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }

 private:
  void check_finite(const char* op) const;
  mpfr_t v_;
};

Real const_pi(Precision p);
Real exp_real(const Real& x, Precision p);
/// Natural log; DomainError for x <= 0.
Real log_pos(const Real& x, Precision p);
/// DomainError for x < 0.
Real sqrt_pos(const Real& x, Precision p);
Real cos_real(const Real& x, Precision p);
Real sin_real(const Real& x, Precision p);
Real abs(const Real& x);
Real powi(const Real& x, long k);
/// 2^k at precision p.
Real pow2(long k, Precision p);

/// Nearest integer m to x; PrecisionError when |x - m| > tol.
mpz_class round_to_integer(const Real& x, const Real& tol);
/// Nearest integer without a residual check (ties away from zero).
mpz_class nearest_integer(const Real& x);

class Complex {
 public:
  explicit Complex(Precision p = Precision(kMinPrecisionBits)) : re_(p), im_(p) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(Real re) : re_(re), im_(re.precision()) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Precision precision() const;
  Complex rounded_to(Precision p) const;

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator*=(const Real& rhs);
  Complex& operator/=(const Complex& rhs);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return Complex(-re_, -im_); }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string to_string(int digits = 20) const;

 private:
  Real re_;
  Real im_;
};

Complex conj(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);
Complex powi(const Complex& z, long k);
/// exp(z) at precision p.
Complex exp_complex(const Complex& z, Precision p);

}  // namespace classpoly
