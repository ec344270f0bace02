#include "classpoly/construct.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "classpoly/errors.hpp"
#include "classpoly/lattice.hpp"
#include "classpoly/modfunc.hpp"
#include "classpoly/quadform.hpp"

namespace classpoly {

std::string to_string(PolynomialKind kind) {
  return kind == PolynomialKind::kHilbert ? "hilbert" : "ramanujan";
}

PolynomialKind parse_kind(const std::string& text) {
  if (text == "hilbert") return PolynomialKind::kHilbert;
  if (text == "ramanujan") return PolynomialKind::kRamanujan;
  throw UnsupportedError("unknown polynomial kind '" + text + "'");
}

namespace {

using ComplexPoly = std::vector<Complex>;  // ascending coefficients

ComplexPoly multiply(const ComplexPoly& a, const ComplexPoly& b, Precision p) {
  ComplexPoly out(a.size() + b.size() - 1, Complex(p));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// prod (x - roots[k]) for k in [lo, hi), split in halves.
ComplexPoly product_tree(const std::vector<Complex>& roots, std::size_t lo, std::size_t hi, Precision p) {
  if (hi - lo == 1) return ComplexPoly{-roots[lo], Complex(Real(1L, p))};
  const std::size_t mid = lo + (hi - lo) / 2;
  return multiply(product_tree(roots, lo, mid, p), product_tree(roots, mid, hi, p), p);
}

double log10_of(const Real& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  Real r{Precision(kMinPrecisionBits)};
  mpfr_log10(r.get(), abs(x).get(), MPFR_RNDN);
  return r.to_double();
}

ClassPolynomialResult hilbert_at(long n, Precision p) {
  const std::vector<QuadForm> forms = enumerate_reduced(n);
  const Precision tau_prec = p.plus(2 * kGuardBits);
  std::vector<Complex> roots;
  roots.reserve(forms.size());
  for (const QuadForm& f : forms) roots.push_back(j_invariant(cm_point(f, tau_prec).tau, p));

  const ComplexPoly expanded = product_tree(roots, 0, roots.size(), p);
  const Real tol(kHilbertRoundingTolerance, p);
  Real worst(p);
  std::vector<mpz_class> coeffs;
  coeffs.reserve(expanded.size());
  for (const Complex& c : expanded) {
    const Real im = abs(c.im());
    if (im > tol) {
      throw PrecisionError("imaginary part " + im.to_string(5) + " of an H_" + std::to_string(n) +
                           " coefficient exceeds the rounding tolerance at " + std::to_string(p.bits()) +
                           " bits");
    }
    mpz_class m = round_to_integer(c.re(), tol);
    const Real residual = abs(c.re() - Real(m, p));
    if (residual > worst) worst = residual;
    if (im > worst) worst = im;
    coeffs.push_back(std::move(m));
  }

  ClassPolynomialResult out;
  out.n = n;
  out.kind = PolynomialKind::kHilbert;
  out.polynomial = IntPolynomial(std::move(coeffs));
  out.bits = p.bits();
  out.verified = out.polynomial.is_monic() && out.polynomial.degree() == static_cast<int>(forms.size());
  out.max_residual_log10 = log10_of(worst);
  if (!out.verified) throw InconsistencyError("H_" + std::to_string(n) + " is not monic of degree h_n");
  return out;
}

}  // namespace

long estimate_bits_hilbert(long n) {
  const std::vector<QuadForm> forms = enumerate_reduced(n);
  double inverse_sum = 0.0;
  for (const QuadForm& f : forms) inverse_sum += 1.0 / static_cast<double>(f.a);
  const double magnitude_bits = M_PI * std::sqrt(static_cast<double>(n)) * inverse_sum / std::log(2.0);
  return static_cast<long>(std::ceil(magnitude_bits)) + 32 * static_cast<long>(forms.size()) + 128;
}

long initial_bits_ramanujan(long h) {
  const long digit_bits = static_cast<long>(std::ceil(10.0 * static_cast<double>(h) * std::log2(10.0)));
  return std::max(192L, digit_bits);
}

ClassPolynomialResult hilbert_class_poly(long n, std::optional<Precision> fixed) {
  require_supported_n(n);
  if (fixed) return hilbert_at(n, *fixed);
  int attempts = 0;
  for (long bits = estimate_bits_hilbert(n); bits <= kMaxPrecisionBits; bits *= 2) {
    ++attempts;
    try {
      ClassPolynomialResult out = hilbert_at(n, Precision(bits));
      out.attempts = attempts;
      return out;
    } catch (const PrecisionError&) {
      // retry at doubled precision
    }
  }
  throw PrecisionExhaustedError("H_" + std::to_string(n) + " did not round cleanly below " +
                                std::to_string(kMaxPrecisionBits) + " bits");
}

std::vector<std::string> RamanujanCheck::failed_clauses() const {
  std::vector<std::string> out;
  if (!degree_ok) out.emplace_back("(i) degree equals h_n");
  if (!constant_ok) out.emplace_back("(ii) constant term is +-1");
  if (!roots_map_ok) out.emplace_back("(iii) transformed roots are roots of H_n");
  if (!value_ok) out.emplace_back("(iv) vanishes at t_n");
  return out;
}

RamanujanCheck check_ramanujan_poly(const IntPolynomial& candidate, long n, const IntPolynomial& hilbert,
                                    Precision p) {
  require_supported_n(n);
  RamanujanCheck check;
  const long h = static_cast<long>(enumerate_reduced(n).size());
  check.degree_ok = candidate.degree() == h;
  check.constant_ok = abs(candidate.constant_term()) == 1;

  const Precision work = p.plus(64);
  // 10^(-bits/4)
  const Real root_tol = exp_real(Real(-static_cast<double>(p.bits()) / 4.0 * std::log(10.0), work), work);
  check.roots_map_ok = candidate.degree() >= 1;
  Real worst(work);
  if (check.roots_map_ok) {
    try {
      for (const Complex& r : complex_roots(candidate, work)) {
        if (norm(r).is_zero()) {
          check.roots_map_ok = false;
          continue;
        }
        const Real residual = hilbert.relative_residual(transform_t_to_j(r), work);
        if (residual > worst) worst = residual;
        if (!(residual < root_tol)) check.roots_map_ok = false;
      }
    } catch (const PrecisionError&) {
      check.roots_map_ok = false;
    }
  }
  check.max_root_residual_log10 = log10_of(worst);

  const Real t = t_value(n, work);
  const Real value = abs(candidate.evaluate(t, work));
  check.t_residual_log10 = log10_of(value);
  check.value_ok = value < pow2(-(p.bits() / 2), work);
  return check;
}

RamanujanCheck verify_ramanujan_poly(const IntPolynomial& candidate, long n, const IntPolynomial& hilbert,
                                     Precision p) {
  RamanujanCheck check = check_ramanujan_poly(candidate, n, hilbert, p);
  if (!check.passed()) {
    std::string msg = candidate.to_string() + " is not P_" + std::to_string(n) + "; failed:";
    for (const auto& clause : check.failed_clauses()) msg += " " + clause + ";";
    throw VerificationFailure(msg);
  }
  return check;
}

namespace {

ClassPolynomialResult ramanujan_at(long n, long h, const IntPolynomial& hilbert, Precision p) {
  const Real t = t_value(n, p.plus(kGuardBits));
  IntPolynomial candidate = algdep(t, static_cast<int>(h), p);
  if (candidate.degree() < h) {
    throw InconsistencyError("t_" + std::to_string(n) + " satisfies " + candidate.to_string() +
                             " of degree below h_n = " + std::to_string(h));
  }
  if (h >= 2) {
    bool lower_found = true;
    try {
      algdep(t, static_cast<int>(h - 1), p);
    } catch (const PrecisionError&) {
      lower_found = false;
    }
    if (lower_found) {
      throw InconsistencyError("t_" + std::to_string(n) + " has a relation of degree " + std::to_string(h - 1));
    }
  }
  if (!candidate.is_monic()) {
    throw PrecisionError("relation " + candidate.to_string() + " for t_" + std::to_string(n) + " is not monic");
  }
  const RamanujanCheck check = check_ramanujan_poly(candidate, n, hilbert, p);
  if (!check.passed()) {
    std::string msg = "candidate " + candidate.to_string() + " failed:";
    for (const auto& clause : check.failed_clauses()) msg += " " + clause + ";";
    throw PrecisionError(msg);
  }
  ClassPolynomialResult out;
  out.n = n;
  out.kind = PolynomialKind::kRamanujan;
  out.polynomial = std::move(candidate);
  out.bits = p.bits();
  out.verified = true;
  out.max_residual_log10 = check.max_root_residual_log10;
  return out;
}

}  // namespace

ClassPolynomialResult ramanujan_poly(long n, std::optional<Precision> fixed, const IntPolynomial* hilbert) {
  require_supported_n(n);
  const long h = static_cast<long>(enumerate_reduced(n).size());
  IntPolynomial hilbert_poly = hilbert ? *hilbert : hilbert_class_poly(n).polynomial;
  if (fixed) return ramanujan_at(n, h, hilbert_poly, *fixed);
  int attempts = 0;
  std::string last_error;
  for (long bits = initial_bits_ramanujan(h); bits <= kMaxPrecisionBits; bits *= 2) {
    ++attempts;
    try {
      ClassPolynomialResult out = ramanujan_at(n, h, hilbert_poly, Precision(bits));
      out.attempts = attempts;
      return out;
    } catch (const PrecisionError& e) {
      last_error = e.what();
    }
  }
  throw PrecisionExhaustedError("P_" + std::to_string(n) + " not recovered below " +
                                std::to_string(kMaxPrecisionBits) + " bits: " + last_error);
}

}  // namespace classpoly
