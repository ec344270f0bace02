#include "classpoly/factor.hpp"

#include <algorithm>
#include <map>

#include "classpoly/errors.hpp"

namespace classpoly {

mpz_class FactoredInteger::value() const {
  mpz_class v = cofactor;
  mpz_class pe;
  for (const auto& f : factors) {
    mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    v *= pe;
  }
  return sign * v;
}

unsigned long FactoredInteger::exponent_of(const mpz_class& p) const {
  for (const auto& f : factors) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

std::string FactoredInteger::magnitude_string(const std::string& separator) const {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += separator;
    out += f.prime.get_str();
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
  }
  if (cofactor != 1) {
    if (!out.empty()) out += separator;
    out += "[" + cofactor.get_str() + "]";
  }
  return out.empty() ? "1" : out;
}

std::string FactoredInteger::to_string(const std::string& separator) const {
  if (sign == 0) return "0";
  return (sign < 0 ? "-" : "+") + magnitude_string(separator);
}

namespace {

bool miller_rabin_round(const mpz_class& m, const mpz_class& m_minus_1, const mpz_class& odd,
                        unsigned long twos, const mpz_class& base) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), odd.get_mpz_t(), m.get_mpz_t());
  if (x == 1 || x == m_minus_1) return true;
  for (unsigned long r = 1; r < twos; ++r) {
    x = x * x % m;
    if (x == m_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

std::vector<unsigned long> primes_up_to(unsigned long bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<unsigned long> primes;
  for (unsigned long i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace

bool is_prime(const mpz_class& m) {
  if (m < 2) return false;
  static const unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned long p : kBases) {
    if (m == p) return true;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return false;
  }
  const mpz_class m_minus_1 = m - 1;
  mpz_class odd = m_minus_1;
  const unsigned long twos = mpz_scan1(odd.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), twos);
  for (unsigned long p : kBases) {
    if (!miller_rabin_round(m, m_minus_1, odd, twos, mpz_class(p))) return false;
  }
  if (mpz_sizeinbase(m.get_mpz_t(), 2) <= 64) return true;

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(20221);
  const mpz_class span = m - 3;
  for (int i = 0; i < 40; ++i) {
    const mpz_class base = rng.get_z_range(span) + 2;
    if (!miller_rabin_round(m, m_minus_1, odd, twos, base)) return false;
  }
  return true;
}

mpz_class pollard_brent(const mpz_class& m, unsigned long seed) {
  if (m % 2 == 0) return 2;
  constexpr unsigned long kBatch = 128;
  constexpr unsigned long kMaxIterations = 1UL << 24;
  for (unsigned long c = seed; c < seed + 16; ++c) {
    mpz_class y = 2, x, ys, g = 1, q = 1;
    unsigned long r = 1, iterations = 0;
    auto step = [&](const mpz_class& v) -> mpz_class { return (v * v + c) % m; };
    while (g == 1 && iterations < kMaxIterations) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        const unsigned long batch = std::min(kBatch, r - k);
        for (unsigned long i = 0; i < batch; ++i) {
          y = step(y);
          q = q * abs(x - y) % m;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
        k += batch;
      }
      iterations += r;
      r *= 2;
    }
    if (g == m) {
      // The batch overshot; back up one step at a time.
      do {
        ys = step(ys);
        const mpz_class diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != m) return g;
  }
  return 0;
}

FactoredInteger factorize(const mpz_class& m, unsigned long trial_bound) {
  if (m == 0) throw DomainError("cannot factor zero");
  FactoredInteger out;
  out.sign = m < 0 ? -1 : 1;
  mpz_class rest = abs(m);
  std::map<mpz_class, unsigned long> found;

  for (unsigned long p : primes_up_to(std::max(2UL, trial_bound))) {
    if (rest == 1) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++found[mpz_class(p)];
    }
  }

  std::vector<mpz_class> pending;
  if (rest != 1) pending.push_back(rest);
  mpz_class unfactored = 1;
  while (!pending.empty()) {
    mpz_class x = pending.back();
    pending.pop_back();
    if (is_prime(x)) {
      ++found[x];
      continue;
    }
    if (mpz_perfect_square_p(x.get_mpz_t())) {
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), x.get_mpz_t());
      pending.push_back(root);
      pending.push_back(root);
      continue;
    }
    const mpz_class d = pollard_brent(x);
    if (d == 0) {
      unfactored *= x;
      continue;
    }
    pending.push_back(d);
    pending.push_back(x / d);
  }
  for (const auto& [p, e] : found) out.factors.push_back(PrimePower{p, e});
  out.cofactor = unfactored;
  return out;
}

std::string to_string(SplittingType t) {
  switch (t) {
    case SplittingType::kSplit:
      return "split";
    case SplittingType::kInert:
      return "inert";
    case SplittingType::kRamified:
      return "ramified";
  }
  return "?";
}

SplittingType kronecker_minus_n_mod3(long n) {
  if (n % 3 == 0) return SplittingType::kRamified;
  const long r = ((-n) % 3 + 3) % 3;
  return r == 1 ? SplittingType::kSplit : SplittingType::kInert;
}

}  // namespace classpoly
