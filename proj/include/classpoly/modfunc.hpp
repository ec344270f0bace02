#pragma once

// q-series evaluation of the j-invariant and of Ramanujan's class invariant
// t_n = sqrt(3) q^(1/18) f(q^(1/3)) f(q^3) / f(q)^2,  q = exp(-pi sqrt(n)),
// where f(-q) = prod_{k>=1} (1 - q^k), i.e. f(y) = prod_{k>=1} (1 - (-y)^k).

#include <cstddef>

#include "classpoly/numerics.hpp"

namespace classpoly {

/// Number of q-powers kept by a truncated series at a given precision.
struct SeriesBudget {
  std::size_t terms;
  Precision precision;
};

/// Smallest N >= 1 with growth(N) * |q|^N < 2^(-bits-16), where growth(N) is
/// N^coefficient_degree, so the dropped tail sits below the working precision.
SeriesBudget series_budget(const Real& abs_q, Precision p, int coefficient_degree = 0);

/// f(y) = prod (1 - (-y)^k) for 0 < y < 1. DomainError for y >= 1 or y <= 0.
Real ramanujan_f(const Real& y, Precision p);

/// t_n as a real number. Requires n = 11 (mod 24).
Real t_value(long n, Precision p);

/// j(tau) = 1728 E4^3 / (E4^3 - E6^2). DomainError for im(tau) <= 0.
/// tau is first moved into the standard fundamental domain, then the series
/// run at enough extra precision to absorb the cancellation in E4^3 - E6^2.
Complex j_invariant(const Complex& tau, Precision p);

/// (t^6 - 27 t^-6 - 6)^3, mapping a root of the Ramanujan polynomial to a root
/// of the Hilbert class polynomial. DomainError for t = 0.
Real transform_t_to_j(const Real& t);
Complex transform_t_to_j(const Complex& t);

/// sigma_k(m) = sum of d^k over divisors d of m.
mpz_class divisor_power_sum(unsigned long m, unsigned long k);

}  // namespace classpoly
