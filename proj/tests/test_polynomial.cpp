#include <doctest.h>

#include <random>

#include "classpoly/dataset.hpp"
#include "classpoly/errors.hpp"
#include "classpoly/polynomial.hpp"

using namespace classpoly;

namespace {

// Bareiss fraction-free determinant.
mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

mpz_class sylvester_resultant(const IntPolynomial& p, const IntPolynomial& q) {
  const int m = p.degree(), n = q.degree();
  std::vector<std::vector<mpz_class>> s(m + n, std::vector<mpz_class>(m + n, 0));
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) s[r][r + i] = p.coefficient(m - i);
  }
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = q.coefficient(n - i);
  }
  return determinant(s);
}

IntPolynomial random_poly(std::mt19937& rng, int degree, long bound) {
  std::uniform_int_distribution<long> c(-bound, bound);
  std::vector<mpz_class> coeffs;
  for (int i = 0; i < degree; ++i) coeffs.emplace_back(c(rng));
  long lead = 0;
  while (lead == 0) lead = c(rng);
  coeffs.emplace_back(lead);
  return IntPolynomial(coeffs);
}

mpz_class root_product_discriminant(const IntPolynomial& p) {
  const Precision prec(512);
  const std::vector<Complex> roots = complex_roots(p, prec);
  Complex acc(Real(p.leading(), prec));
  acc = Complex(powi(acc.re(), 2 * p.degree() - 2));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const Complex d = roots[i] - roots[j];
      acc *= d * d;
    }
  }
  return round_to_integer(acc.re(), Real(0.25, prec));
}

}  // namespace

TEST_CASE("ring operations") {
  const IntPolynomial p{-1, 1, 1};
  CHECK(p.derivative() == IntPolynomial{1, 2});
  CHECK(IntPolynomial{-1, 2, 0, 1}.evaluate(mpz_class(0)) == -1);
  const Precision prec(64);
  const Real golden = (sqrt_pos(Real(5L, prec), prec) - Real(1L, prec)) / Real(2L, prec);
  CHECK(abs(p.evaluate(golden, prec)) < Real::parse("1e-9", prec));
  CHECK((p * p).degree() == 4);
  CHECK((p - p).is_zero());
  CHECK(IntPolynomial{0, 0, 0}.degree() == -1);
  CHECK(IntPolynomial{-1, 9, -9, 9, -5, 1}.to_string() == "z^5 - 5z^4 + 9z^3 - 9z^2 + 9z - 1");
  CHECK(IntPolynomial{-1, 1}.to_string() == "z - 1");
  CHECK(IntPolynomial{2, 4, 6}.content() == 2);
  CHECK(IntPolynomial{-2, -4, -6}.primitive_part() == IntPolynomial{1, 2, 3});
}

TEST_CASE("resultant examples") {
  CHECK(resultant({-5, 1}, {-2, 1}) == 3);
  CHECK(resultant({1, 0, 1}, {-1, 0, 1}) == 4);
  const IntPolynomial p{3, -1, 4, 1};
  CHECK(resultant(p, p) == 0);
  CHECK_THROWS_AS(resultant(IntPolynomial{}, p), DomainError);
}

TEST_CASE("resultant against Sylvester determinants") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const IntPolynomial p = random_poly(rng, 1 + static_cast<int>(rng() % 6), 20);
    const IntPolynomial q = random_poly(rng, 1 + static_cast<int>(rng() % 6), 20);
    CHECK(resultant(p, q) == sylvester_resultant(p, q));
    const int s = (p.degree() * q.degree()) % 2 == 0 ? 1 : -1;
    CHECK(resultant(p, q) == s * resultant(q, p));
  }
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant({-1, 1}) == 1);
  CHECK(discriminant({5}) == 1);
  CHECK(discriminant({-1, 1, 1}) == 5);
  CHECK(discriminant({-1, 2, 0, 1}) == -59);
  CHECK(discriminant({-1, 9, -9, 9, -5, 1}) == 824464);
  CHECK(discriminant({-3, 0, 1}) == 12);
}

TEST_CASE("discriminant equals the root-product formula") {
  for (const auto& [n, poly] : ExpectedDataset::embedded().ramanujan_table()) {
    CAPTURE(n);
    CHECK(discriminant(poly) == root_product_discriminant(poly));
  }
  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const IntPolynomial p = random_poly(rng, 2 + static_cast<int>(rng() % 5), 30);
    if (discriminant(p) == 0) continue;
    CHECK(discriminant(p) == root_product_discriminant(p));
  }
}

TEST_CASE("sign law from real-root counts") {
  std::mt19937 rng(13);
  std::vector<IntPolynomial> polys;
  for (const auto& [n, poly] : ExpectedDataset::embedded().ramanujan_table()) polys.push_back(poly);
  for (int trial = 0; trial < 100; ++trial) polys.push_back(random_poly(rng, 1 + static_cast<int>(rng() % 7), 50));
  for (const auto& p : polys) {
    const mpz_class d = discriminant(p);
    if (d == 0) continue;
    const int complex_count = p.degree() - real_root_count(p);
    CHECK((d > 0) == (complex_count % 4 == 0));
  }
  CHECK(real_root_count({-1, 0, 1}) == 2);
  CHECK(real_root_count({1, 0, 1}) == 0);
  CHECK(real_root_count({0, -1, 0, 1}) == 3);
}

TEST_CASE("integer square roots") {
  CHECK(integer_sqrt(0).root == 0);
  CHECK(integer_sqrt(0).exact);
  CHECK(integer_sqrt(824464).root == 908);
  CHECK(integer_sqrt(824464).exact);
  CHECK(integer_sqrt(59).root == 7);
  CHECK_FALSE(integer_sqrt(59).exact);
  CHECK_THROWS_AS(integer_sqrt(-4), DomainError);
}

TEST_CASE("exact division and gcd") {
  const IntPolynomial a{-1, 1}, b{1, 1, 1};
  CHECK(divide_exact(a * b, b) == a);
  CHECK_THROWS_AS(divide_exact(b, a), InconsistencyError);
  CHECK(primitive_gcd(a * b, a * IntPolynomial{3, 1}) == a);
}

TEST_CASE("complex roots") {
  const Precision p(256);
  const IntPolynomial q{-1, 9, -9, 9, -5, 1};
  const auto roots = complex_roots(q, p);
  CHECK(roots.size() == 5);
  for (const auto& r : roots) CHECK(abs(q.evaluate(r, p)) < pow2(-200, p));
}
