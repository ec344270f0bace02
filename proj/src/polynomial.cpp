#include "classpoly/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "classpoly/errors.hpp"

namespace classpoly {

IntPolynomial::IntPolynomial(std::vector<mpz_class> ascending) : coeffs_(std::move(ascending)) {
  normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> ascending) {
  coeffs_.reserve(ascending.size());
  for (long c : ascending) coeffs_.emplace_back(c);
  normalize();
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPolynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : mpz_class(0);
}

const mpz_class& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return *this;
  mpz_class g = content();
  if (leading() < 0) g = -g;
  IntPolynomial out = *this;
  for (auto& c : out.coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<mpz_class> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return IntPolynomial(std::move(d));
}

mpz_class IntPolynomial::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Real IntPolynomial::evaluate(const Real& x, Precision p) const {
  Real acc(p);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += Real(*it, p);
  }
  return acc;
}

Complex IntPolynomial::evaluate(const Complex& z, Precision p) const {
  Complex acc(p);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= z;
    acc += Complex(Real(*it, p));
  }
  return acc;
}

Real IntPolynomial::relative_residual(const Complex& z, Precision p) const {
  const Real modulus = abs(z).rounded_to(p);
  Real scale(p);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    scale *= modulus;
    scale += abs(Real(*it, p));
  }
  if (scale.is_zero()) return scale;
  return abs(evaluate(z, p)) / scale;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const mpz_class& k, const IntPolynomial& a) {
  std::vector<mpz_class> out = a.coeffs_;
  for (auto& c : out) c *= k;
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-() const { return mpz_class(-1) * *this; }

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = c < 0;
    mpz_class mag = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1 || i == 0) out += mag.get_str();
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("pseudo-division by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<mpz_class> r = a.coefficients();
  const std::vector<mpz_class>& bc = b.coefficients();
  const mpz_class& lb = b.leading();
  const int db = b.degree();
  int steps = a.degree() - db + 1;
  int dr = a.degree();
  while (dr >= db) {
    const mpz_class lr = r[static_cast<std::size_t>(dr)];
    for (auto& c : r) c *= lb;
    const int shift = dr - db;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(i + shift)] -= lr * bc[static_cast<std::size_t>(i)];
    --steps;
    r.resize(static_cast<std::size_t>(dr));
    while (!r.empty() && r.back() == 0) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  if (steps > 0) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
    for (auto& c : r) c *= scale;
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return a;
  if (a.degree() < b.degree()) throw InconsistencyError("polynomial division is not exact");
  std::vector<mpz_class> r = a.coefficients();
  const std::vector<mpz_class>& bc = b.coefficients();
  const int db = b.degree();
  std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db + 1));
  for (int i = a.degree(); i >= db; --i) {
    const mpz_class& top = r[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t())) {
      throw InconsistencyError("polynomial division is not exact");
    }
    mpz_class k;
    mpz_divexact(k.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
    q[static_cast<std::size_t>(i - db)] = k;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= k * bc[static_cast<std::size_t>(j)];
  }
  for (const auto& c : r) {
    if (c != 0) throw InconsistencyError("polynomial division is not exact");
  }
  return IntPolynomial(std::move(q));
}

IntPolynomial primitive_gcd(IntPolynomial a, IntPolynomial b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPolynomial r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.primitive_part();
  }
  return a.primitive_part();
}

mpz_class resultant(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero() || q.is_zero()) throw DomainError("resultant of the zero polynomial");
  IntPolynomial a = p, b = q;
  int sign = 1;
  if (a.degree() < b.degree()) {
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
    std::swap(a, b);
  }
  if (b.degree() == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.leading().get_mpz_t(), static_cast<unsigned long>(a.degree()));
    return sign * r;
  }

  const mpz_class ca = a.content(), cb = b.content();
  mpz_class t, tb;
  mpz_pow_ui(t.get_mpz_t(), ca.get_mpz_t(), static_cast<unsigned long>(b.degree()));
  mpz_pow_ui(tb.get_mpz_t(), cb.get_mpz_t(), static_cast<unsigned long>(a.degree()));
  t *= tb;
  a = IntPolynomial([&] {
    std::vector<mpz_class> v = a.coefficients();
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), ca.get_mpz_t());
    return v;
  }());
  b = IntPolynomial([&] {
    std::vector<mpz_class> v = b.coefficients();
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());
    return v;
  }());

  mpz_class g = 1, h = 1;
  while (b.degree() > 0) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
    IntPolynomial r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    mpz_class divisor;
    mpz_pow_ui(divisor.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    divisor *= g;
    std::vector<mpz_class> v = r.coefficients();
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    b = IntPolynomial(std::move(v));
    g = a.leading();
    // h <- g^delta / h^(delta-1)
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
    mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
    mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  // b is a nonzero constant here.
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), b.leading().get_mpz_t(), static_cast<unsigned long>(a.degree()));
  mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(a.degree() - 1));
  mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return sign * t * h;
}

mpz_class discriminant(const IntPolynomial& p) {
  if (p.is_zero()) throw DomainError("discriminant of the zero polynomial");
  const int d = p.degree();
  if (d <= 1) return 1;
  mpz_class res = resultant(p, p.derivative());
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), p.leading().get_mpz_t());
  if ((static_cast<long>(d) * (d - 1) / 2) % 2 == 1) out = -out;
  return out;
}

IntegerSqrt integer_sqrt(const mpz_class& m) {
  if (m < 0) throw DomainError("integer_sqrt of a negative number");
  IntegerSqrt out{0, false};
  mpz_class rem;
  mpz_sqrtrem(out.root.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
  out.exact = rem == 0;
  return out;
}

int real_root_count(const IntPolynomial& p) {
  if (p.degree() <= 0) return 0;
  std::vector<IntPolynomial> chain{p.primitive_part(), p.derivative().primitive_part()};
  while (chain.back().degree() > 0) {
    const IntPolynomial& a = chain[chain.size() - 2];
    const IntPolynomial& b = chain.back();
    IntPolynomial r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // prem multiplies by lc(b)^k; undo a negative factor so the sign is that of -rem.
    const int k = a.degree() - b.degree() + 1;
    const bool flip = b.leading() < 0 && (k % 2 == 1);
    r = flip ? r : -r;
    const mpz_class g = r.content();
    std::vector<mpz_class> v = r.coefficients();
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    chain.emplace_back(std::move(v));
  }
  auto changes = [&](bool at_minus_infinity) {
    int count = 0, last = 0;
    for (const auto& f : chain) {
      int s = sgn(f.leading());
      if (at_minus_infinity && f.degree() % 2 == 1) s = -s;
      if (s != 0 && last != 0 && s != last) ++count;
      if (s != 0) last = s;
    }
    return count;
  };
  return changes(true) - changes(false);
}

std::vector<Complex> complex_roots(const IntPolynomial& p, Precision prec) {
  const int d = p.degree();
  if (d <= 0) return {};
  const Precision work = prec.plus(kGuardBits);
  const IntPolynomial dp = p.derivative();

  // Start on a circle whose radius is the geometric mean of the root moduli.
  long e0 = 0, ed = 0;
  const mpz_class c0 = p.constant_term() == 0 ? mpz_class(1) : p.constant_term();
  const double m0 = std::fabs(mpz_get_d_2exp(&e0, c0.get_mpz_t()));
  const double md = std::fabs(mpz_get_d_2exp(&ed, p.leading().get_mpz_t()));
  const double log2_radius = (std::log2(m0) + static_cast<double>(e0) - std::log2(md) - static_cast<double>(ed)) / d;
  const Real radius = exp_real(Real(log2_radius * std::log(2.0), work), work);

  std::vector<Complex> z;
  for (int k = 0; k < d; ++k) {
    const double angle = 2.0 * M_PI * k / d + 0.4;
    z.emplace_back(radius * Real(std::cos(angle), work), radius * Real(std::sin(angle), work));
  }

  const Real one(1L, work);
  const Real tiny = pow2(-prec.bits(), work);
  constexpr int kMaxIterations = 2000;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool converged = true;
    for (int k = 0; k < d; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      const Complex value = p.evaluate(zk, work);
      if (norm(value).is_zero()) continue;
      const Complex ratio = value / dp.evaluate(zk, work);
      Complex repulsion(work);
      for (int j = 0; j < d; ++j) {
        if (j != k) repulsion += Complex(one) / (zk - z[static_cast<std::size_t>(j)]);
      }
      const Complex step = ratio / (Complex(one) - ratio * repulsion);
      zk -= step;
      const Real scale = std::max(abs(zk), one);
      if (abs(step) > scale * tiny) converged = false;
    }
    if (converged) {
      std::vector<Complex> out;
      out.reserve(z.size());
      for (const auto& r : z) out.push_back(r.rounded_to(prec));
      return out;
    }
  }
  throw PrecisionError("root iteration did not converge for " + p.to_string());
}

}  // namespace classpoly
