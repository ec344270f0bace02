#pragma once

// Checks the discriminant identities, the sign rule, the Dorman field
// discriminant and the 3-adic claim on concrete n, and compares the outcome
// with the expected dataset.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "classpoly/construct.hpp"
#include "classpoly/dataset.hpp"
#include "classpoly/factor.hpp"
#include "classpoly/polynomial.hpp"

namespace classpoly {

class ResultCache;

struct PipelineOptions {
  std::optional<Precision> precision;
  const ResultCache* cache = nullptr;
};

/// Everything computed for one n; the inputs of every check below.
struct Pipeline {
  long n = 0;
  long h = 0;
  std::vector<long> invariant_factors;
  long two_torsion = 0;
  ClassPolynomialResult hilbert;
  ClassPolynomialResult ramanujan;
  mpz_class disc_hilbert;
  mpz_class disc_ramanujan;
  FactoredInteger disc_ramanujan_factored;
  bool from_cache = false;
  std::map<std::string, double> seconds;
};

Pipeline run_pipeline(long n, const PipelineOptions& options = {});

/// Trial division bound used for discriminant factorizations: n itself.
unsigned long trial_bound_for(long n);

struct SquareQuotient {
  bool divides = false;
  mpz_class quotient;  // disc(H_n) / disc(P_n), when it divides
  bool is_square = false;
  mpz_class index;     // integer square root of the quotient
  FactoredInteger index_factored;
  FactoredInteger disc_hilbert_factored;  // disc(P_n) times index^2
  int sign_hilbert = 0;
  int sign_ramanujan = 0;
  bool holds() const { return divides && is_square && sign_hilbert == sign_ramanujan; }
};

SquareQuotient square_quotient(const Pipeline& pipe);
/// TheoremViolation unless disc(P_n) | disc(H_n) with a square quotient of
/// matching sign.
SquareQuotient check_square_quotient(const Pipeline& pipe);
SquareQuotient check_square_quotient(long n);

struct SignCheck {
  long h = 0;
  long two_torsion = 0;
  int predicted = 0;  // + iff h = |Cl[2]| (mod 4)
  int actual = 0;
  std::optional<long> genus_count;      // 2^(t-1), squarefree n only
  std::optional<int> cyclic_predicted;  // + iff h = 1, 2 (mod 4), cyclic groups only
  bool holds() const {
    return predicted == actual && (!genus_count || *genus_count == two_torsion) &&
           (!cyclic_predicted || *cyclic_predicted == predicted);
  }
};

int predict_sign(long h, long two_torsion);
SignCheck sign_check(const Pipeline& pipe);
SignCheck check_sign(const Pipeline& pipe);
bool check_sign(long n);

struct DormanCheck {
  long d0 = 1;
  long d1 = 1;
  long primes = 0;  // t, the number of distinct prime factors of n
  FactoredInteger field_discriminant;
  mpz_class value;
  bool divides = false;
  mpz_class quotient;
  bool quotient_square = false;
  bool holds() const { return divides && quotient_square; }
};

/// Signed D0^(h/2) D1^((h - 2^(t-1))/2). UnsupportedError for non-squarefree n
/// or when an exponent would be fractional.
FactoredInteger dorman_field_discriminant(long n, long h, long two_torsion);
DormanCheck dorman_check(const Pipeline& pipe);
DormanCheck check_dorman(const Pipeline& pipe);

struct ThreeCheck {
  bool three_divides_disc = false;
  bool three_divides_n = false;
  SplittingType splitting = SplittingType::kSplit;
  bool holds() const { return !three_divides_disc && !three_divides_n && splitting == SplittingType::kSplit; }
};

/// 3 | disc(p), the raw test.
bool three_divides_discriminant(const IntPolynomial& p);
ThreeCheck three_check(const Pipeline& pipe);
ThreeCheck check_three(const Pipeline& pipe);
bool check_three(long n);

struct VerificationReport {
  long n = 0;
  long h = 0;
  std::vector<long> invariant_factors;
  long two_torsion = 0;
  IntPolynomial hilbert;
  IntPolynomial ramanujan;
  long hilbert_bits = 0;
  long ramanujan_bits = 0;
  FactoredInteger disc_ramanujan;
  FactoredInteger disc_hilbert;
  SquareQuotient quotient;
  SignCheck sign;
  std::optional<DormanCheck> dorman;
  std::string dorman_skipped;  // reason when absent
  ThreeCheck three;
  int real_roots_hilbert = 0;
  int real_roots_ramanujan = 0;
  /// Diagnostic only: disc(P_n) itself a perfect square.
  bool literal_square = false;
  /// field name -> matches; empty when n is not a table row.
  std::map<std::string, bool> table_match;
  std::map<std::string, double> seconds;

  bool real_roots_hold() const {
    return real_roots_hilbert == two_torsion && real_roots_ramanujan == two_torsion;
  }
  bool theorems_hold() const {
    return quotient.holds() && sign.holds() && (!dorman || dorman->holds()) && three.holds() &&
           real_roots_hold();
  }
  bool table_matches() const;
  /// Names of failed checks; with `strict`, diagnostic flags count as well.
  std::vector<std::string> failures(bool strict = false) const;
};

/// Runs every check without throwing on a failed claim.
VerificationReport build_report(const Pipeline& pipe, const ExpectedDataset* dataset = nullptr);
/// Compares with the dataset row and throws TableMismatch naming the first
/// differing field, TheoremViolation if a claim fails.
VerificationReport verify_table_row(long n, const ExpectedDataset& dataset = ExpectedDataset::embedded(),
                                    const PipelineOptions& options = {});

}  // namespace classpoly
