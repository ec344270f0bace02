#include "classpoly/modfunc.hpp"

#include <cmath>
#include <string>

#include "classpoly/errors.hpp"
#include "classpoly/quadform.hpp"

namespace classpoly {

namespace {

constexpr std::size_t kMaxSeriesTerms = 10'000'000;

double log2_abs(const Real& x) {
  Real r{Precision(kMinPrecisionBits)};
  mpfr_log2(r.get(), abs(x).get(), MPFR_RNDN);
  return r.to_double();
}

}  // namespace

mpz_class divisor_power_sum(unsigned long m, unsigned long k) {
  mpz_class sum = 0;
  mpz_class term;
  for (unsigned long d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    mpz_ui_pow_ui(term.get_mpz_t(), d, k);
    sum += term;
    unsigned long e = m / d;
    if (e != d) {
      mpz_ui_pow_ui(term.get_mpz_t(), e, k);
      sum += term;
    }
  }
  return sum;
}

SeriesBudget series_budget(const Real& abs_q, Precision p, int coefficient_degree) {
  if (abs_q.is_zero()) return SeriesBudget{1, p};
  const double per_term = log2_abs(abs_q);
  if (!(per_term < 0.0)) throw DomainError("q-series needs |q| < 1");
  const double target = -static_cast<double>(p.bits() + kGuardBits);
  std::size_t n = 1;
  while (coefficient_degree * std::log2(static_cast<double>(n)) + per_term * static_cast<double>(n) >=
         target) {
    if (++n > kMaxSeriesTerms) throw DomainError("q-series budget exceeds term cap; |q| too close to 1");
  }
  return SeriesBudget{n, p};
}

Real ramanujan_f(const Real& y, Precision p) {
  if (y.sign() <= 0) throw DomainError("ramanujan_f needs y > 0");
  if (y >= Real(1L, y.precision())) throw DomainError("ramanujan_f diverges for y >= 1");
  const Precision work = p.plus(kGuardBits);
  const Real yw = y.rounded_to(work);
  const SeriesBudget budget = series_budget(yw, work);
  const Real one(1L, work);
  Real product = one;
  Real power = one;
  Real neg_y = -yw;
  for (std::size_t k = 1; k <= budget.terms; ++k) {
    power *= neg_y;
    product *= one - power;
  }
  return product.rounded_to(p);
}

Real t_value(long n, Precision p) {
  require_supported_n(n);
  const Precision work = p.plus(2 * kGuardBits);
  const Real log_q = -(const_pi(work) * sqrt_pos(Real(n, work), work));  // log q_n
  const Real q = exp_real(log_q, work);
  const Real q_third = exp_real(log_q / Real(3L, work), work);
  const Real q_cube = exp_real(log_q * 3L, work);
  const Real q_18th = exp_real(log_q / Real(18L, work), work);
  const Real f_q = ramanujan_f(q, work);
  Real t = sqrt_pos(Real(3L, work), work) * q_18th * ramanujan_f(q_third, work) *
           ramanujan_f(q_cube, work) / (f_q * f_q);
  return t.rounded_to(p);
}

Complex j_invariant(const Complex& tau, Precision p) {
  if (tau.im().sign() <= 0) throw DomainError("j is defined on the upper half-plane only");

  // Move tau into |re| <= 1/2, |tau| >= 1 (j is SL2(Z)-invariant).
  const Precision reduce_prec = std::max(p, tau.precision()).plus(kGuardBits);
  Complex z = tau.rounded_to(reduce_prec);
  const Real one(1L, reduce_prec);
  for (int iter = 0; iter < 10'000; ++iter) {
    const Real shift(nearest_integer(z.re()), reduce_prec);
    z = Complex(z.re() - shift, z.im());
    if (norm(z) < one) {
      z = Complex(-one) / z;
    } else {
      break;
    }
  }

  // E4^3 - E6^2 = 1728 q + O(q^2): about -log2|q| bits cancel.
  const double cancel_bits = 2.0 * M_PI * z.im().to_double() / std::log(2.0);
  const Precision work = p.plus(2 * kGuardBits + static_cast<long>(std::ceil(cancel_bits)));
  z = z.rounded_to(work);

  const Real two_pi = const_pi(work) * 2L;
  const Real modulus = exp_real(-(two_pi * z.im()), work);
  const Real angle = two_pi * z.re();
  const Complex q(modulus * cos_real(angle, work), modulus * sin_real(angle, work));

  // sigma_5(k) <= 1.04 k^5 and the 504 factor fit in the budget guard.
  const SeriesBudget budget = series_budget(modulus, work.plus(10), 5);
  Complex sum3(work), sum5(work);
  Complex qk(Real(1L, work));
  for (std::size_t k = 1; k <= budget.terms; ++k) {
    qk *= q;
    sum3 += qk * Real(divisor_power_sum(k, 3), work);
    sum5 += qk * Real(divisor_power_sum(k, 5), work);
  }
  const Complex e4 = Complex(Real(1L, work)) + sum3 * Real(240L, work);
  const Complex e6 = Complex(Real(1L, work)) - sum5 * Real(504L, work);
  const Complex e4_cubed = e4 * e4 * e4;
  const Complex delta = e4_cubed - e6 * e6;
  if (norm(delta).is_zero()) throw DomainError("E4^3 - E6^2 vanished; precision too low");
  return (e4_cubed * Real(1728L, work) / delta).rounded_to(p);
}

Real transform_t_to_j(const Real& t) {
  if (t.is_zero()) throw DomainError("transform_t_to_j: t must be nonzero");
  const Real t6 = powi(t, 6);
  const Real inner = t6 - Real(27L, t.precision()) / t6 - Real(6L, t.precision());
  return inner * inner * inner;
}

Complex transform_t_to_j(const Complex& t) {
  if (norm(t).is_zero()) throw DomainError("transform_t_to_j: t must be nonzero");
  const Precision p = t.precision();
  const Complex t6 = powi(t, 6);
  const Complex inner =
      t6 - Complex(Real(27L, p)) / t6 - Complex(Real(6L, p));
  return inner * inner * inner;
}

}  // namespace classpoly
