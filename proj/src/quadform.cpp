#include "classpoly/quadform.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "classpoly/errors.hpp"

namespace classpoly {

namespace {

struct Bezout {
  long g;
  long x;
  long y;
};

// g = gcd(a, b) = a x + b y, g >= 0.
Bezout extended_gcd(long a, long b) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long q = old_r / r;
    long tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

long floor_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

bool QuadForm::is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

bool QuadForm::is_reduced() const {
  if (!(std::abs(b) <= a && a <= c)) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

std::string QuadForm::to_string() const {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

bool is_supported_n(long n) { return n > 0 && n % 24 == 11; }

void require_supported_n(long n) {
  if (!is_supported_n(n)) {
    throw UnsupportedError("n must be ≡ 11 (mod 24), got " + std::to_string(n));
  }
}

bool is_squarefree(long n) {
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

std::vector<long> distinct_prime_factors(long n) {
  std::vector<long> primes;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

QuadForm reduce(QuadForm f) {
  if (f.a <= 0 || f.c <= 0 || f.discriminant() >= 0) {
    throw InvalidFormError("form " + f.to_string() + " is not positive definite");
  }
  if (!f.is_primitive()) throw InvalidFormError("form " + f.to_string() + " is not primitive");
  for (;;) {
    // Translate b into (-a, a].
    if (f.b > f.a || f.b <= -f.a) {
      long two_a = 2 * f.a;
      long b = floor_mod(f.b + f.a, two_a) - f.a;
      if (b == -f.a) b = f.a;
      long k = (b - f.b) / two_a;
      f.c = f.a * k * k + f.b * k + f.c;
      f.b = b;
    }
    if (f.a > f.c) {
      f = QuadForm{f.c, -f.b, f.a};
      continue;
    }
    break;
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

QuadForm reduce(QuadForm f, long n) {
  if (f.discriminant() != -n) {
    throw InvalidFormError("form " + f.to_string() + " has discriminant " +
                           std::to_string(f.discriminant()) + ", expected " + std::to_string(-n));
  }
  return reduce(f);
}

std::vector<QuadForm> enumerate_reduced(long n, bool allow_any) {
  if (allow_any) {
    if (n <= 0 || n % 4 != 3) throw UnsupportedError("n must be positive and ≡ 3 (mod 4)");
  } else {
    require_supported_n(n);
  }
  std::vector<QuadForm> forms;
  // Reduced forms satisfy 3a^2 <= n.
  for (long a = 1; 3 * a * a <= n; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b + n;
      if (num % (4 * a) != 0) continue;
      QuadForm f{a, b, num / (4 * a)};
      if (f.is_reduced() && f.is_primitive()) forms.push_back(f);
    }
  }
  std::sort(forms.begin(), forms.end());
  return forms;
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  const long disc = f.discriminant();
  if (disc != g.discriminant()) {
    throw InvalidFormError("cannot compose forms of discriminants " + std::to_string(disc) +
                           " and " + std::to_string(g.discriminant()));
  }
  if (!f.is_primitive() || !g.is_primitive()) {
    throw InvalidFormError("composition needs primitive forms");
  }
  QuadForm f1 = f, f2 = g;
  if (f1.a > f2.a) std::swap(f1, f2);
  const long s = (f1.b + f2.b) / 2;
  const long m = f2.b - s;

  long y1 = 0, d = f1.a;
  if (f2.a % f1.a != 0) {
    Bezout e = extended_gcd(f2.a, f1.a);
    y1 = e.x;
    d = e.g;
  }
  long x2 = 0, y2 = -1, d1 = d;
  if (s % d != 0) {
    Bezout e = extended_gcd(s, d);
    x2 = e.x;
    y2 = -e.y;
    d1 = e.g;
  }
  const long v1 = f1.a / d1;
  const long v2 = f2.a / d1;
  const __int128 r_raw = static_cast<__int128>(y1) * y2 * m - static_cast<__int128>(x2) * f2.c;
  long r = static_cast<long>(r_raw % v1);
  if (r < 0) r += v1;
  const long b3 = f2.b + 2 * v2 * r;
  const long a3 = v1 * v2;
  const __int128 c_num = static_cast<__int128>(f2.c) * d1 + static_cast<__int128>(r) * (f2.b + v2 * r);
  const long c3 = static_cast<long>(c_num / v1);
  QuadForm h{a3, b3, c3};
  if (h.discriminant() != disc) {
    throw InvalidFormError("composition produced " + h.to_string() + " of wrong discriminant");
  }
  return reduce(h);
}

QuadForm inverse(const QuadForm& f) { return reduce(QuadForm{f.a, -f.b, f.c}); }

QuadForm identity_form(long n) { return QuadForm{1, 1, (n + 1) / 4}; }

std::vector<long> invariant_factors_of_table(const std::vector<std::vector<std::size_t>>& table,
                                             std::size_t identity) {
  std::vector<std::vector<std::size_t>> mul = table;
  std::size_t id = identity;
  std::vector<long> factors;
  while (mul.size() > 1) {
    const std::size_t m = mul.size();
    // Element of maximal order.
    std::size_t best = id;
    long best_order = 1;
    for (std::size_t x = 0; x < m; ++x) {
      long order = 1;
      for (std::size_t y = x; y != id; y = mul[y][x]) ++order;
      if (x == id) order = 1;
      if (order > best_order) {
        best_order = order;
        best = x;
      }
    }
    factors.push_back(best_order);
    // Cyclic subgroup and its cosets.
    std::vector<std::size_t> subgroup{id};
    for (std::size_t y = best; y != id; y = mul[y][best]) subgroup.push_back(y);
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(m, kUnset);
    std::vector<std::size_t> reps;
    for (std::size_t x = 0; x < m; ++x) {
      if (label[x] != kUnset) continue;
      for (std::size_t h : subgroup) label[mul[x][h]] = reps.size();
      reps.push_back(x);
    }
    std::vector<std::vector<std::size_t>> quotient(reps.size(), std::vector<std::size_t>(reps.size()));
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = 0; j < reps.size(); ++j) quotient[i][j] = label[mul[reps[i]][reps[j]]];
    }
    id = label[id];
    mul = std::move(quotient);
  }
  if (factors.empty()) return {1};
  std::reverse(factors.begin(), factors.end());
  return factors;
}

ClassGroup::ClassGroup(long n, bool allow_any) : n_(n), elements_(enumerate_reduced(n, allow_any)) {
  identity_ = index_of(identity_form(n));
  const std::size_t h = elements_.size();
  table_.assign(h, std::vector<std::size_t>(h));
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = i; j < h; ++j) {
      table_[i][j] = table_[j][i] = index_of(compose(elements_[i], elements_[j]));
    }
  }
  invariant_factors_ = invariant_factors_of_table(table_, identity_);
}

std::size_t ClassGroup::index_of(const QuadForm& f) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), f);
  if (it == elements_.end() || *it != f) {
    throw InvalidFormError("form " + f.to_string() + " is not a reduced form of discriminant " +
                           std::to_string(-n_));
  }
  return static_cast<std::size_t>(it - elements_.begin());
}

long ClassGroup::element_order(std::size_t i) const {
  long order = 1;
  for (std::size_t y = i; y != identity_; y = table_[y][i]) ++order;
  return order;
}

long two_torsion_count(const ClassGroup& group) {
  long count = 0;
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (group.compose_index(i, i) == group.identity_index()) ++count;
  }
  return count;
}

long genus_two_torsion(long n) {
  if (n <= 0 || !is_squarefree(n)) {
    throw UnsupportedError("genus count needs a squarefree n, got " + std::to_string(n));
  }
  return 1L << (distinct_prime_factors(n).size() - 1);
}

CMPoint cm_point(const QuadForm& f, Precision p) {
  const long n = -f.discriminant();
  Real two_a(2 * f.a, p);
  Real re = Real(-f.b, p) / two_a;
  Real im = sqrt_pos(Real(n, p), p) / two_a;
  return CMPoint{f, Complex(std::move(re), std::move(im))};
}

}  // namespace classpoly
