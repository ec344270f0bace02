#pragma once

// JSON documents for computed class polynomials, plus the on-disk result
// cache. Big integers are always serialized as decimal strings.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "classpoly/construct.hpp"
#include "classpoly/factor.hpp"
#include "classpoly/polynomial.hpp"

namespace classpoly {

inline constexpr int kSchemaVersion = 1;

struct ResultDocument {
  int schema_version = kSchemaVersion;
  long n = 0;
  PolynomialKind kind = PolynomialKind::kHilbert;
  int degree = 0;
  /// Ascending powers, decimal.
  std::vector<std::string> coefficients;
  std::optional<FactoredInteger> discriminant;
  std::vector<long> invariant_factors;
  long precision_bits = 0;
  std::map<std::string, bool> verification;

  IntPolynomial polynomial() const;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

nlohmann::json factored_to_json(const FactoredInteger& f);
/// Throws UnsupportedError on malformed input.
FactoredInteger factored_from_json(const nlohmann::json& j);

std::vector<std::string> coefficients_to_strings(const IntPolynomial& p);
IntPolynomial polynomial_from_strings(const std::vector<std::string>& coefficients);

nlohmann::json to_json(const ResultDocument& doc);
/// Throws UnsupportedError for a malformed document or an unknown schema.
ResultDocument document_from_json(const nlohmann::json& j);

ResultDocument make_document(const ClassPolynomialResult& result, const FactoredInteger& discriminant,
                             const std::vector<long>& invariant_factors);

/// One ResultDocument per (kind, n), stored as <dir>/<kind>_<n>.json.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  std::filesystem::path path_for(PolynomialKind kind, long n) const;
  /// Missing or unreadable entries yield nullopt.
  std::optional<ResultDocument> load(PolynomialKind kind, long n) const;
  /// Write-to-temporary then rename, so readers never see a partial file.
  void store(const ResultDocument& doc) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace classpoly
