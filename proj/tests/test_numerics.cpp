#include <doctest.h>

#include <cmath>
#include <random>

#include "classpoly/errors.hpp"
#include "classpoly/numerics.hpp"

using namespace classpoly;

namespace {

const char* kPi50 = "3.14159265358979323846264338327950288419716939937510";

bool close(const Real& a, const Real& b, long bits) {
  return abs(a - b) < pow2(-bits, Precision(std::max(a.precision().bits(), b.precision().bits())));
}

}  // namespace

TEST_CASE("precision floor") {
  CHECK_THROWS_AS(Precision(63), DomainError);
  CHECK(Precision(64).bits() == 64);
  CHECK(Precision::from_digits(50).digits() >= 50);
}

TEST_CASE("pi against a 50-digit literal") {
  const Precision p64(64), p256(256);
  CHECK(close(const_pi(p64), Real::parse(kPi50, p256).rounded_to(p64), 62));
  CHECK(close(const_pi(p256), Real::parse(kPi50, p256), 160));
  CHECK(close(const_pi(p256).rounded_to(p64), const_pi(p64), 62));
  const Real scaled = const_pi(p64) * Real(1e10, p64);
  Real fl(p64);
  mpfr_floor(fl.get(), scaled.get());
  CHECK(nearest_integer(fl) == 31415926535L);
}

TEST_CASE("exp and q_11") {
  const Precision p(128);
  CHECK(exp_real(Real(0L, p), p) == Real(1L, p));
  const Real q = exp_real(-(const_pi(p) * sqrt_pos(Real(11L, p), p)), p);
  const double oracle = std::exp(-M_PI * std::sqrt(11.0));
  CHECK(std::abs(q.to_double() / oracle - 1.0) < 1e-6);
  CHECK(q.to_double() == doctest::Approx(2.9823e-5).epsilon(1e-4));
}

TEST_CASE("sqrt of a negative number") {
  CHECK_THROWS_AS(sqrt_pos(Real(-1L, Precision(64)), Precision(64)), DomainError);
  CHECK_THROWS_AS(log_pos(Real(0L, Precision(64)), Precision(64)), DomainError);
  CHECK_THROWS_AS(Real(1L, Precision(64)) / Real(0L, Precision(64)), DomainError);
}

TEST_CASE("conjugation is an involution") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  const Precision p(96);
  for (int i = 0; i < 50; ++i) {
    const Complex z(Real(u(rng), p), Real(u(rng), p));
    CHECK(conj(conj(z)) == z);
    // exp has a real-coefficient series
    const Complex a = exp_complex(conj(z), p), b = conj(exp_complex(z, p));
    CHECK(abs(a - b) <= abs(a) * pow2(-90, p));
  }
}

TEST_CASE("round_to_integer") {
  const Precision p(256);
  CHECK(round_to_integer(Real::parse("3.0000000001", p), Real::parse("1e-6", p)) == 3);
  CHECK_THROWS_AS(round_to_integer(Real::parse("2.5", p), Real::parse("1e-6", p)), PrecisionError);
  CHECK(round_to_integer(Real::parse("-32767.99999999999999999999999999999999999999", p), Real::parse("1e-20", p)) ==
        -32768);
  CHECK(round_to_integer(Real(-32768L, p) + Real::parse("1e-40", p), Real::parse("1e-20", p)) == -32768);
}

TEST_CASE("doubling precision refines") {
  const Precision lo(128), hi(256);
  const Real a = exp_real(sqrt_pos(Real(227L, lo), lo), lo);
  const Real b = exp_real(sqrt_pos(Real(227L, hi), hi), hi);
  CHECK(abs(a - b) < b * pow2(-120, hi));
}

TEST_CASE("complex arithmetic") {
  const Precision p(128);
  const Complex i(Real(0L, p), Real(1L, p));
  const Complex m1 = i * i;
  CHECK(m1.re() == Real(-1L, p));
  CHECK(m1.im().is_zero());
  CHECK(powi(i, -1) == -i);
  CHECK(norm(Complex(Real(3L, p), Real(4L, p))) == Real(25L, p));
  CHECK(abs(Complex(Real(3L, p), Real(4L, p))) == Real(5L, p));
}
