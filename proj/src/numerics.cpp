#include "classpoly/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "classpoly/errors.hpp"

namespace classpoly {

Precision::Precision(long bits) : bits_(bits) {
  if (bits < kMinPrecisionBits) {
    throw DomainError("precision must be at least " + std::to_string(kMinPrecisionBits) +
                      " bits, got " + std::to_string(bits));
  }
}

long Precision::digits() const {
  return static_cast<long>(std::floor(static_cast<double>(bits_) * std::log10(2.0)));
}

Precision Precision::from_digits(long digits) {
  return Precision(std::max<long>(
      kMinPrecisionBits, static_cast<long>(std::ceil(static_cast<double>(digits) * std::log2(10.0)))));
}

// ---------------------------------------------------------------------------
// Real

Real::Real(Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(double value, Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_d(v_, value, MPFR_RNDN);
  check_finite("construct");
}

Real::Real(const mpz_class& value, Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

Real Real::parse(std::string_view text, Precision p) {
  Real r(p);
  std::string s(text);
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') {
    throw DomainError("not a decimal number: '" + s + "'");
  }
  r.check_finite("parse");
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // Steal the limbs; leave `other` as a valid minimal-precision zero.
  v_[0] = other.v_[0];
  mpfr_init2(other.v_, kMinPrecisionBits);
  mpfr_set_zero(other.v_, 1);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::rounded_to(Precision p) const {
  Real r(p);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return mpfr_get_emin();
  return mpfr_get_exp(v_);
}

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

void Real::check_finite(const char* op) const {
  if (!mpfr_number_p(v_)) throw DomainError(std::string("non-finite result in ") + op);
}

namespace {

// Raise the precision of `x` in place so it can hold a result at `bits`.
void widen(mpfr_ptr x, mpfr_prec_t bits) {
  if (mpfr_get_prec(x) < bits) mpfr_prec_round(x, bits, MPFR_RNDN);
}

}  // namespace

Real& Real::operator+=(const Real& rhs) {
  widen(v_, mpfr_get_prec(rhs.v_));
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  check_finite("add");
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  widen(v_, mpfr_get_prec(rhs.v_));
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  check_finite("sub");
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  widen(v_, mpfr_get_prec(rhs.v_));
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  check_finite("mul");
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  widen(v_, mpfr_get_prec(rhs.v_));
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  check_finite("div");
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
  check_finite("mul");
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

Real const_pi(Precision p) {
  Real r(p);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real exp_real(const Real& x, Precision p) {
  Real r(p);
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  if (!mpfr_number_p(r.get())) throw DomainError("exp overflow");
  return r;
}

Real log_pos(const Real& x, Precision p) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive number");
  Real r(p);
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt_pos(const Real& x, Precision p) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative number");
  Real r(p);
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real cos_real(const Real& x, Precision p) {
  Real r(p);
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sin_real(const Real& x, Precision p) {
  Real r(p);
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) {
  Real r(x);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real powi(const Real& x, long k) {
  if (k < 0 && x.is_zero()) throw DomainError("negative power of zero");
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
  if (!mpfr_number_p(r.get())) throw DomainError("non-finite result in powi");
  return r;
}

Real pow2(long k, Precision p) {
  Real r(1L, p);
  mpfr_mul_2si(r.get(), r.get(), k, MPFR_RNDN);
  return r;
}

mpz_class nearest_integer(const Real& x) {
  mpz_class m;
  Real rounded(x);
  mpfr_round(rounded.get(), x.get());
  mpfr_get_z(m.get_mpz_t(), rounded.get(), MPFR_RNDN);
  return m;
}

mpz_class round_to_integer(const Real& x, const Real& tol) {
  if (tol.sign() <= 0) throw DomainError("rounding tolerance must be positive");
  mpz_class m = nearest_integer(x);
  Real residual = abs(x - Real(m, x.precision()));
  if (residual > tol) {
    throw PrecisionError("value " + x.to_string(25) + " is " + residual.to_string(5) +
                         " away from the nearest integer (tolerance " + tol.to_string(5) + ")");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Complex

Precision Complex::precision() const { return std::max(re_.precision(), im_.precision()); }

Complex Complex::rounded_to(Precision p) const { return Complex(re_.rounded_to(p), im_.rounded_to(p)); }

Complex& Complex::operator+=(const Complex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  Real re = re_ * rhs.re_ - im_ * rhs.im_;
  Real im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
  Real d = norm(rhs);
  if (d.is_zero()) throw DomainError("complex division by zero");
  Real re = (re_ * rhs.re_ + im_ * rhs.im_) / d;
  Real im = (im_ * rhs.re_ - re_ * rhs.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string Complex::to_string(int digits) const {
  std::string im = im_.to_string(digits);
  if (im.front() != '-') im.insert(im.begin(), '+');
  return re_.to_string(digits) + " " + im.substr(0, 1) + " " + im.substr(1) + "i";
}

Complex conj(const Complex& z) { return Complex(z.re(), -z.im()); }

Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }

Real abs(const Complex& z) {
  Real r(z.precision());
  mpfr_hypot(r.get(), z.re().get(), z.im().get(), MPFR_RNDN);
  return r;
}

Complex powi(const Complex& z, long k) {
  if (k < 0) {
    Complex one(Real(1L, z.precision()));
    return powi(one / z, -k);
  }
  Complex result(Real(1L, z.precision()));
  Complex base(z);
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Complex exp_complex(const Complex& z, Precision p) {
  Real modulus = exp_real(z.re(), p);
  return Complex(modulus * cos_real(z.im(), p), modulus * sin_real(z.im(), p));
}

}  // namespace classpoly
