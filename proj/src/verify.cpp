#include "classpoly/verify.hpp"

#include <algorithm>
#include <chrono>

#include "classpoly/document.hpp"
#include "classpoly/errors.hpp"
#include "classpoly/quadform.hpp"

namespace classpoly {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int sign_of(const mpz_class& m) { return sgn(m) < 0 ? -1 : 1; }

std::string label(long n) { return "n = " + std::to_string(n); }

// a * b^2 as a factorization, both arguments complete.
FactoredInteger times_square(const FactoredInteger& a, const FactoredInteger& b) {
  std::map<mpz_class, unsigned long> exps;
  for (const auto& pe : a.factors) exps[pe.prime] += pe.exponent;
  for (const auto& pe : b.factors) exps[pe.prime] += 2 * pe.exponent;
  FactoredInteger out;
  out.sign = a.sign;
  for (const auto& [p, e] : exps) out.factors.push_back(PrimePower{p, e});
  out.cofactor = a.cofactor * b.cofactor * b.cofactor;
  return out;
}

}  // namespace

unsigned long trial_bound_for(long n) {
  // Every prime seen in disc(P_n) and disc(H_n) for the tabulated n is <= n;
  // anything larger is left to Pollard-Brent.
  return static_cast<unsigned long>(std::max(n, 2L));
}

Pipeline run_pipeline(long n, const PipelineOptions& options) {
  require_supported_n(n);
  Pipeline pipe;
  pipe.n = n;

  auto start = Clock::now();
  const ClassGroup group(n);
  pipe.h = static_cast<long>(group.order());
  pipe.invariant_factors = group.invariant_factors();
  pipe.two_torsion = two_torsion_count(group);
  pipe.seconds["class_group"] = since(start);

  std::optional<ResultDocument> cached_h, cached_p;
  if (options.cache) {
    cached_h = options.cache->load(PolynomialKind::kHilbert, n);
    cached_p = options.cache->load(PolynomialKind::kRamanujan, n);
  }

  start = Clock::now();
  if (cached_h) {
    pipe.hilbert.n = n;
    pipe.hilbert.kind = PolynomialKind::kHilbert;
    pipe.hilbert.polynomial = cached_h->polynomial();
    pipe.hilbert.bits = cached_h->precision_bits;
    pipe.hilbert.verified = pipe.hilbert.polynomial.is_monic() && pipe.hilbert.polynomial.degree() == pipe.h;
    if (!pipe.hilbert.verified) throw VerificationFailure("cached H_" + std::to_string(n) + " has the wrong shape");
  } else {
    pipe.hilbert = hilbert_class_poly(n, options.precision);
  }
  pipe.seconds["hilbert"] = since(start);

  start = Clock::now();
  if (cached_p) {
    pipe.ramanujan.n = n;
    pipe.ramanujan.kind = PolynomialKind::kRamanujan;
    pipe.ramanujan.polynomial = cached_p->polynomial();
    pipe.ramanujan.bits = std::max(cached_p->precision_bits, kMinPrecisionBits);
    const RamanujanCheck check = verify_ramanujan_poly(pipe.ramanujan.polynomial, n, pipe.hilbert.polynomial,
                                                       Precision(pipe.ramanujan.bits));
    pipe.ramanujan.verified = true;
    pipe.ramanujan.max_residual_log10 = check.max_root_residual_log10;
  } else {
    pipe.ramanujan = ramanujan_poly(n, options.precision, &pipe.hilbert.polynomial);
  }
  pipe.seconds["ramanujan"] = since(start);
  pipe.from_cache = cached_h && cached_p;

  start = Clock::now();
  pipe.disc_hilbert = discriminant(pipe.hilbert.polynomial);
  pipe.disc_ramanujan = discriminant(pipe.ramanujan.polynomial);
  pipe.seconds["discriminants"] = since(start);

  start = Clock::now();
  pipe.disc_ramanujan_factored = factorize(pipe.disc_ramanujan, trial_bound_for(n));
  pipe.seconds["factorization"] = since(start);
  return pipe;
}

SquareQuotient square_quotient(const Pipeline& pipe) {
  SquareQuotient out;
  out.sign_hilbert = sign_of(pipe.disc_hilbert);
  out.sign_ramanujan = sign_of(pipe.disc_ramanujan);
  if (pipe.disc_ramanujan == 0 || pipe.disc_hilbert % pipe.disc_ramanujan != 0) return out;
  out.divides = true;
  out.quotient = pipe.disc_hilbert / pipe.disc_ramanujan;
  if (out.quotient < 0) return out;
  const IntegerSqrt root = integer_sqrt(out.quotient);
  out.is_square = root.exact;
  if (!out.is_square) return out;
  out.index = root.root;
  out.index_factored = factorize(out.index, trial_bound_for(pipe.n));
  out.disc_hilbert_factored = times_square(pipe.disc_ramanujan_factored, out.index_factored);
  if (out.disc_hilbert_factored.value() != pipe.disc_hilbert) {
    throw InconsistencyError("assembled factorization of disc(H_" + std::to_string(pipe.n) + ") is wrong");
  }
  return out;
}

SquareQuotient check_square_quotient(const Pipeline& pipe) {
  SquareQuotient out = square_quotient(pipe);
  if (!out.divides) throw TheoremViolation(label(pipe.n) + ": disc(P) does not divide disc(H)");
  if (!out.is_square) {
    throw TheoremViolation(label(pipe.n) + ": disc(H)/disc(P) = " + out.quotient.get_str() + " is not a square");
  }
  if (out.sign_hilbert != out.sign_ramanujan) {
    throw TheoremViolation(label(pipe.n) + ": disc(H) and disc(P) differ in sign");
  }
  return out;
}

SquareQuotient check_square_quotient(long n) { return check_square_quotient(run_pipeline(n)); }

int predict_sign(long h, long two_torsion) {
  return ((h - two_torsion) % 4 + 4) % 4 == 0 ? 1 : -1;
}

SignCheck sign_check(const Pipeline& pipe) {
  SignCheck out;
  out.h = pipe.h;
  out.two_torsion = pipe.two_torsion;
  out.predicted = predict_sign(pipe.h, pipe.two_torsion);
  out.actual = sign_of(pipe.disc_ramanujan);
  if (is_squarefree(pipe.n)) out.genus_count = genus_two_torsion(pipe.n);
  if (pipe.invariant_factors.size() == 1) out.cyclic_predicted = (pipe.h % 4 == 1 || pipe.h % 4 == 2) ? 1 : -1;
  return out;
}

SignCheck check_sign(const Pipeline& pipe) {
  SignCheck out = sign_check(pipe);
  if (out.predicted != out.actual) {
    throw TheoremViolation(label(pipe.n) + ": predicted sign " + (out.predicted > 0 ? "+" : "-") +
                           " but disc(P) has sign " + (out.actual > 0 ? "+" : "-"));
  }
  if (out.genus_count && *out.genus_count != out.two_torsion) {
    throw TheoremViolation(label(pipe.n) + ": genus count " + std::to_string(*out.genus_count) +
                           " differs from |Cl[2]| = " + std::to_string(out.two_torsion));
  }
  if (out.cyclic_predicted && *out.cyclic_predicted != out.predicted) {
    throw TheoremViolation(label(pipe.n) + ": cyclic sign rule disagrees with the 2-torsion rule");
  }
  return out;
}

bool check_sign(long n) {
  check_sign(run_pipeline(n));
  return true;
}

FactoredInteger dorman_field_discriminant(long n, long h, long two_torsion) {
  if (!is_squarefree(n)) throw UnsupportedError("field discriminant formula needs squarefree n, got " + std::to_string(n));
  const std::vector<long> primes = distinct_prime_factors(n);
  std::vector<long> three_mod_four;
  for (long p : primes) {
    if (p % 4 == 3) three_mod_four.push_back(p);
  }
  const long d1 = three_mod_four.size() == 1 ? three_mod_four.front() : 1;
  const long d0 = n / d1;
  const long genus = 1L << (primes.size() - 1);
  if (d0 > 1 && h % 2 != 0) {
    throw UnsupportedError("exponent h/2 is fractional for n = " + std::to_string(n));
  }
  if (d1 > 1 && (h - genus) % 2 != 0) {
    throw UnsupportedError("exponent (h - 2^(t-1))/2 is fractional for n = " + std::to_string(n));
  }
  FactoredInteger out;
  out.sign = ((h - two_torsion) / 2) % 2 == 0 ? 1 : -1;
  std::map<long, unsigned long> exps;
  if (d0 > 1) {
    for (long p : distinct_prime_factors(d0)) exps[p] += static_cast<unsigned long>(h / 2);
  }
  if (d1 > 1 && h > genus) exps[d1] += static_cast<unsigned long>((h - genus) / 2);
  for (const auto& [p, e] : exps) {
    if (e > 0) out.factors.push_back(PrimePower{mpz_class(p), e});
  }
  return out;
}

DormanCheck dorman_check(const Pipeline& pipe) {
  DormanCheck out;
  const std::vector<long> primes = distinct_prime_factors(pipe.n);
  out.primes = static_cast<long>(primes.size());
  out.field_discriminant = dorman_field_discriminant(pipe.n, pipe.h, pipe.two_torsion);
  for (long p : primes) {
    if (p % 4 == 3 && std::count_if(primes.begin(), primes.end(), [](long q) { return q % 4 == 3; }) == 1) out.d1 = p;
  }
  out.d0 = pipe.n / out.d1;
  out.value = out.field_discriminant.value();
  if (pipe.disc_ramanujan % out.value != 0) return out;
  out.divides = true;
  out.quotient = pipe.disc_ramanujan / out.value;
  out.quotient_square = out.quotient > 0 && integer_sqrt(out.quotient).exact;
  return out;
}

DormanCheck check_dorman(const Pipeline& pipe) {
  DormanCheck out = dorman_check(pipe);
  if (!out.divides) {
    throw TheoremViolation(label(pipe.n) + ": field discriminant " + out.field_discriminant.to_string() +
                           " does not divide disc(P)");
  }
  if (!out.quotient_square) {
    throw TheoremViolation(label(pipe.n) + ": disc(P)/field discriminant = " + out.quotient.get_str() +
                           " is not a square");
  }
  return out;
}

bool three_divides_discriminant(const IntPolynomial& p) { return discriminant(p) % 3 == 0; }

ThreeCheck three_check(const Pipeline& pipe) {
  ThreeCheck out;
  out.three_divides_disc = pipe.disc_ramanujan % 3 == 0;
  out.three_divides_n = pipe.n % 3 == 0;
  out.splitting = kronecker_minus_n_mod3(pipe.n);
  return out;
}

ThreeCheck check_three(const Pipeline& pipe) {
  ThreeCheck out = three_check(pipe);
  if (out.three_divides_disc) throw TheoremViolation(label(pipe.n) + ": 3 divides disc(P)");
  if (out.three_divides_n || out.splitting != SplittingType::kSplit) {
    throw TheoremViolation(label(pipe.n) + ": 3 is " + to_string(out.splitting) + " in Q(sqrt(-n))");
  }
  return out;
}

bool check_three(long n) {
  check_three(run_pipeline(n));
  return true;
}

bool VerificationReport::table_matches() const {
  return std::all_of(table_match.begin(), table_match.end(), [](const auto& kv) { return kv.second; });
}

std::vector<std::string> VerificationReport::failures(bool strict) const {
  std::vector<std::string> out;
  if (!quotient.holds()) out.emplace_back("square_quotient");
  if (!sign.holds()) out.emplace_back("sign");
  if (dorman && !dorman->holds()) out.emplace_back("field_discriminant");
  if (!three.holds()) out.emplace_back("three");
  if (!real_roots_hold()) out.emplace_back("real_roots");
  for (const auto& [field, ok] : table_match) {
    if (!ok) out.push_back("table." + field);
  }
  if (strict && !literal_square) out.emplace_back("literal_square");
  return out;
}

VerificationReport build_report(const Pipeline& pipe, const ExpectedDataset* dataset) {
  VerificationReport r;
  r.n = pipe.n;
  r.h = pipe.h;
  r.invariant_factors = pipe.invariant_factors;
  r.two_torsion = pipe.two_torsion;
  r.hilbert = pipe.hilbert.polynomial;
  r.ramanujan = pipe.ramanujan.polynomial;
  r.hilbert_bits = pipe.hilbert.bits;
  r.ramanujan_bits = pipe.ramanujan.bits;
  r.seconds = pipe.seconds;
  r.disc_ramanujan = pipe.disc_ramanujan_factored;

  auto start = Clock::now();
  r.quotient = square_quotient(pipe);
  if (r.quotient.is_square) {
    r.disc_hilbert = r.quotient.disc_hilbert_factored;
  } else {
    r.disc_hilbert = factorize(pipe.disc_hilbert, trial_bound_for(pipe.n));
  }
  r.sign = sign_check(pipe);
  try {
    r.dorman = dorman_check(pipe);
  } catch (const UnsupportedError& e) {
    r.dorman_skipped = e.what();
  }
  r.three = three_check(pipe);
  r.real_roots_hilbert = real_root_count(pipe.hilbert.polynomial);
  r.real_roots_ramanujan = real_root_count(pipe.ramanujan.polynomial);
  r.literal_square = pipe.disc_ramanujan >= 0 && integer_sqrt(pipe.disc_ramanujan).exact;
  r.seconds["checks"] = since(start);

  if (dataset) {
    if (const ExpectedRow* row = dataset->row(pipe.n)) {
      r.table_match["h"] = row->h == pipe.h;
      r.table_match["sign"] = row->sign == sign_of(pipe.disc_ramanujan);
      r.table_match["factorization"] = pipe.disc_ramanujan_factored.complete() &&
                                       row->discriminant.complete() &&
                                       row->discriminant.factors == pipe.disc_ramanujan_factored.factors;
      r.table_match["invariant_factors"] = row->invariant_factors == pipe.invariant_factors;
    }
  }
  return r;
}

VerificationReport verify_table_row(long n, const ExpectedDataset& dataset, const PipelineOptions& options) {
  const Pipeline pipe = run_pipeline(n, options);
  VerificationReport r = build_report(pipe, &dataset);
  for (const char* field : {"h", "sign", "factorization", "invariant_factors"}) {
    auto it = r.table_match.find(field);
    if (it != r.table_match.end() && !it->second) {
      throw TableMismatch(label(n) + ": computed " + field + " differs from the expected table");
    }
  }
  check_square_quotient(pipe);
  check_sign(pipe);
  if (r.dorman) check_dorman(pipe);
  check_three(pipe);
  if (!r.real_roots_hold()) {
    throw TheoremViolation(label(n) + ": real root counts " + std::to_string(r.real_roots_hilbert) + ", " +
                           std::to_string(r.real_roots_ramanujan) + " differ from |Cl[2]| = " +
                           std::to_string(r.two_torsion));
  }
  return r;
}

}  // namespace classpoly
