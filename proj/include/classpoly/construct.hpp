#pragma once

// Construction of the Hilbert class polynomial H_n and of the Ramanujan
// polynomial P_n (minimal polynomial of t_n) for n = 11 (mod 24).

#include <optional>
#include <string>
#include <vector>

#include "classpoly/numerics.hpp"
#include "classpoly/polynomial.hpp"

namespace classpoly {

enum class PolynomialKind { kHilbert, kRamanujan };
std::string to_string(PolynomialKind kind);
/// Accepts "hilbert" / "ramanujan"; UnsupportedError otherwise.
PolynomialKind parse_kind(const std::string& text);

/// Hard cap for the automatic precision-doubling loops.
inline constexpr long kMaxPrecisionBits = 1L << 16;
/// Coefficients of H_n must land within this distance of an integer.
inline constexpr double kHilbertRoundingTolerance = 0.25;

struct ClassPolynomialResult {
  long n = 0;
  PolynomialKind kind = PolynomialKind::kHilbert;
  IntPolynomial polynomial;
  long bits = 0;
  bool verified = false;
  /// Hilbert: largest distance of a coefficient from its integer.
  /// Ramanujan: largest relative residual of H_n at a transformed root.
  /// Stored as log10; -inf when the residual is exactly zero.
  double max_residual_log10 = 0.0;
  int attempts = 1;
};

/// ceil(pi sqrt(n) sum_forms 1/a / ln 2) + 32 h + 128.
long estimate_bits_hilbert(long n);
/// max(192, bits for 10 h decimal digits).
long initial_bits_ramanujan(long h);

/// H_n from the j-values at the CM points of all reduced forms. With no fixed
/// precision the estimate is used and doubled on rounding failure.
ClassPolynomialResult hilbert_class_poly(long n, std::optional<Precision> fixed = std::nullopt);

/// P_n recovered from t_n by lattice reduction, certified against H_n.
/// `hilbert` may pass a precomputed H_n.
ClassPolynomialResult ramanujan_poly(long n, std::optional<Precision> fixed = std::nullopt,
                                     const IntPolynomial* hilbert = nullptr);

struct RamanujanCheck {
  bool degree_ok = false;       // (i)   deg P = h_n
  bool constant_ok = false;     // (ii)  P(0) = +-1
  bool roots_map_ok = false;    // (iii) every root r maps into the roots of H_n
  bool value_ok = false;        // (iv)  P(t_n) ~ 0
  double max_root_residual_log10 = 0.0;
  double t_residual_log10 = 0.0;

  bool passed() const { return degree_ok && constant_ok && roots_map_ok && value_ok; }
  std::vector<std::string> failed_clauses() const;
};

/// Evaluates all four clauses. Clause (iii) uses the relative residual
/// |H(x)| / sum |c_i| |x|^i < 10^(-bits/4) at x = (r^6 - 27 r^-6 - 6)^3.
RamanujanCheck check_ramanujan_poly(const IntPolynomial& candidate, long n,
                                    const IntPolynomial& hilbert, Precision p);
/// As check_ramanujan_poly, throwing VerificationFailure naming failed clauses.
RamanujanCheck verify_ramanujan_poly(const IntPolynomial& candidate, long n,
                                     const IntPolynomial& hilbert, Precision p);

}  // namespace classpoly
