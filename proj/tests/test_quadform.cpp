#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "classpoly/dataset.hpp"
#include "classpoly/errors.hpp"
#include "classpoly/quadform.hpp"

using namespace classpoly;

namespace {

// SL2(Z) action on forms: S and T^{+-1}.
QuadForm act_s(const QuadForm& f) { return {f.c, -f.b, f.a}; }
QuadForm act_t(const QuadForm& f) { return {f.a, f.b + 2 * f.a, f.a + f.b + f.c}; }
QuadForm act_tinv(const QuadForm& f) { return {f.a, f.b - 2 * f.a, f.a - f.b + f.c}; }

// Every form reachable by words of length <= depth.
std::set<QuadForm> orbit(const QuadForm& f, int depth) {
  std::set<QuadForm> seen{f};
  std::vector<QuadForm> frontier{f};
  for (int d = 0; d < depth; ++d) {
    std::vector<QuadForm> next;
    for (const auto& g : frontier) {
      for (const QuadForm& h : {act_s(g), act_t(g), act_tinv(g)}) {
        if (seen.insert(h).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

std::vector<long> supported_up_to(long hi) {
  std::vector<long> out;
  for (long n = 11; n <= hi; n += 24) out.push_back(n);
  return out;
}

}  // namespace

TEST_CASE("reduce examples") {
  CHECK(reduce({1, 1, 3}) == QuadForm{1, 1, 3});
  CHECK(reduce({3, -1, 3}) == QuadForm{3, 1, 3});
  CHECK(reduce({9, 1, 1}) == QuadForm{1, 1, 9});
  for (const QuadForm& f : {QuadForm{3, -1, 3}, QuadForm{9, 1, 1}}) {
    CHECK(orbit(f, 4).count(reduce(f)) == 1);
  }
}

TEST_CASE("reduce inverts random SL2(Z) words") {
  std::mt19937 rng(11);
  for (long n : supported_up_to(995)) {
    const std::vector<QuadForm> forms = enumerate_reduced(n);
    for (int trial = 0; trial < 5; ++trial) {
      const QuadForm start = forms[rng() % forms.size()];
      QuadForm f = start;
      const int len = 1 + static_cast<int>(rng() % 6);
      for (int k = 0; k < len; ++k) {
        switch (rng() % 3) {
          case 0: f = act_s(f); break;
          case 1: f = act_t(f); break;
          default: f = act_tinv(f); break;
        }
      }
      CHECK(reduce(f, n) == start);
    }
  }
}

TEST_CASE("invalid forms") {
  CHECK_THROWS_AS(reduce({2, 2, 2}), InvalidFormError);
  CHECK_THROWS_AS(reduce({-1, 1, -3}), InvalidFormError);
  CHECK_THROWS_AS(reduce({1, 1, 3}, 35), InvalidFormError);
  CHECK_THROWS_AS(compose({1, 1, 3}, {1, 1, 9}), InvalidFormError);
}

TEST_CASE("enumeration") {
  CHECK(enumerate_reduced(11) == std::vector<QuadForm>{{1, 1, 3}});
  CHECK(enumerate_reduced(35) == std::vector<QuadForm>{{1, 1, 9}, {3, 1, 3}});
  CHECK(enumerate_reduced(227).size() == 5);
  CHECK_THROWS_AS(enumerate_reduced(13), UnsupportedError);
  CHECK_THROWS_WITH_AS(require_supported_n(9999), doctest::Contains("n must be ≡ 11 (mod 24)"), UnsupportedError);
  for (const auto& [n, row] : ExpectedDataset::embedded().rows()) {
    CAPTURE(n);
    const auto forms = enumerate_reduced(n);
    CHECK(static_cast<long>(forms.size()) == row.h);
    CHECK(std::is_sorted(forms.begin(), forms.end()));
    for (const auto& f : forms) {
      CHECK(f.is_reduced());
      CHECK(f.is_primitive());
      CHECK(f.discriminant() == -n);
    }
  }
}

TEST_CASE("composition examples") {
  const QuadForm e = identity_form(35);
  CHECK(e == QuadForm{1, 1, 9});
  for (const auto& f : enumerate_reduced(35)) CHECK(compose(e, f) == f);
  CHECK(compose({3, 1, 3}, {3, 1, 3}) == QuadForm{1, 1, 9});
  const QuadForm g = enumerate_reduced(131)[1];
  QuadForm acc = g;
  for (int k = 1; k < 5; ++k) {
    CHECK(acc != identity_form(131));
    acc = compose(acc, g);
  }
  CHECK(acc == identity_form(131));
}

TEST_CASE("group laws hold exhaustively") {
  for (long n : supported_up_to(995)) {
    const ClassGroup G(n);
    const std::size_t h = G.order();
    if (h > 15) continue;
    CAPTURE(n);
    const auto& el = G.elements();
    for (std::size_t i = 0; i < h; ++i) {
      CHECK(compose(el[i], inverse(el[i])) == G.identity());
      CHECK(compose(el[i], QuadForm{el[i].a, -el[i].b, el[i].c}) == G.identity());
      for (std::size_t j = 0; j < h; ++j) {
        CHECK(G.compose_index(i, j) == G.compose_index(j, i));
        for (std::size_t k = 0; k < h; ++k) {
          CHECK(G.compose_index(G.compose_index(i, j), k) == G.compose_index(i, G.compose_index(j, k)));
        }
      }
    }
  }
}

TEST_CASE("class group structure") {
  CHECK(class_group(227).invariant_factors() == std::vector<long>{5});
  CHECK(class_group(299).invariant_factors() == std::vector<long>{8});
  CHECK(class_group(1235).invariant_factors() == std::vector<long>{2, 6});
  CHECK(class_group(2555).invariant_factors() == std::vector<long>{2, 6});
  CHECK(class_group(11).invariant_factors() == std::vector<long>{1});
  for (long n : supported_up_to(995)) {
    const ClassGroup G(n);
    const auto& d = G.invariant_factors();
    CHECK(std::accumulate(d.begin(), d.end(), 1L, std::multiplies<>()) == static_cast<long>(G.order()));
    for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i + 1] % d[i] == 0);
    for (std::size_t i = 0; i < G.order(); ++i) CHECK(d.back() % G.element_order(i) == 0);
    CHECK(G.identity() == QuadForm{1, 1, (n + 1) / 4});
  }
}

TEST_CASE("two-torsion") {
  CHECK(two_torsion_count(class_group(11)) == 1);
  CHECK(two_torsion_count(class_group(35)) == 2);
  CHECK(two_torsion_count(class_group(1235)) == 4);
  CHECK(genus_two_torsion(227) == 1);
  CHECK(genus_two_torsion(35) == 2);
  CHECK(genus_two_torsion(1235) == 4);
  CHECK_THROWS_AS(genus_two_torsion(275), UnsupportedError);
  for (long n : supported_up_to(995)) {
    if (!is_squarefree(n)) continue;
    CAPTURE(n);
    CHECK(two_torsion_count(class_group(n)) == genus_two_torsion(n));
  }
}

TEST_CASE("CM points") {
  const Precision p(128);
  const CMPoint z = cm_point({1, 1, 3}, p);
  CHECK(z.tau.re().to_double() == -0.5);
  CHECK(z.tau.im().to_double() == doctest::Approx(std::sqrt(11.0) / 2).epsilon(1e-15));
  CHECK(z.tau.im().to_double() == doctest::Approx(1.6583).epsilon(1e-4));
  CHECK(cm_point(identity_form(995), p).tau.re().to_double() == -0.5);
  CHECK(cm_point({3, 1, 3}, p).tau.re().to_double() == doctest::Approx(-1.0 / 6).epsilon(1e-15));
}
