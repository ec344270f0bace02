#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace classpoly {

struct PrimePower {
  mpz_class prime;
  unsigned long exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// sign * prod p^e * cofactor. The cofactor is 1 for a complete factorization.
struct FactoredInteger {
  int sign = 1;
  std::vector<PrimePower> factors;
  mpz_class cofactor = 1;

  bool complete() const { return cofactor == 1; }
  mpz_class value() const;
  /// Exponent of p, 0 if absent.
  unsigned long exponent_of(const mpz_class& p) const;

  /// Magnitude as "2^4·227^2" (or "1"); the separator is configurable.
  std::string magnitude_string(const std::string& separator = "·") const;
  /// Signed form, "+2^4·227^2".
  std::string to_string(const std::string& separator = "·") const;

  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;
};

/// Miller-Rabin. Deterministic below 2^64 (first twelve prime bases), otherwise
/// 40 additional pseudo-random bases drawn from a fixed seed.
bool is_prime(const mpz_class& m);

/// One nontrivial factor of the odd composite m by Brent's cycle variant of
/// Pollard rho, or 0 when the attempt budget runs out.
mpz_class pollard_brent(const mpz_class& m, unsigned long seed = 1);

/// Trial division by every prime <= trial_bound, then Pollard-Brent on what
/// remains. DomainError for m = 0.
FactoredInteger factorize(const mpz_class& m, unsigned long trial_bound);

enum class SplittingType { kSplit, kInert, kRamified };
std::string to_string(SplittingType t);

/// Behaviour of 3 in Q(sqrt(-n)): ramified iff 3 | n, split iff -n = 1 (mod 3).
SplittingType kronecker_minus_n_mod3(long n);

}  // namespace classpoly
