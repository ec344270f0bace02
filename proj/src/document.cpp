#include "classpoly/document.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "classpoly/errors.hpp"

namespace classpoly {

using nlohmann::json;

namespace {

mpz_class parse_integer(const std::string& s) {
  mpz_class v;
  if (s.empty() || v.set_str(s, 10) != 0) throw UnsupportedError("not a decimal integer: '" + s + "'");
  return v;
}

}  // namespace

IntPolynomial ResultDocument::polynomial() const { return polynomial_from_strings(coefficients); }

json factored_to_json(const FactoredInteger& f) {
  json factors = json::array();
  for (const auto& pe : f.factors) factors.push_back({pe.prime.get_str(), std::to_string(pe.exponent)});
  return json{{"sign", f.sign}, {"factors", factors}, {"cofactor", f.cofactor.get_str()}};
}

FactoredInteger factored_from_json(const json& j) {
  try {
    FactoredInteger f;
    f.sign = j.at("sign").get<int>();
    for (const auto& pair : j.at("factors")) {
      if (!pair.is_array() || pair.size() != 2) throw UnsupportedError("factor entry must be [prime, exponent]");
      f.factors.push_back(PrimePower{parse_integer(pair[0].get<std::string>()),
                                     std::stoul(pair[1].get<std::string>())});
    }
    f.cofactor = parse_integer(j.value("cofactor", std::string("1")));
    return f;
  } catch (const json::exception& e) {
    throw UnsupportedError(std::string("malformed factorization: ") + e.what());
  }
}

std::vector<std::string> coefficients_to_strings(const IntPolynomial& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coefficients()) out.push_back(c.get_str());
  return out;
}

IntPolynomial polynomial_from_strings(const std::vector<std::string>& coefficients) {
  std::vector<mpz_class> coeffs;
  for (const auto& s : coefficients) coeffs.push_back(parse_integer(s));
  return IntPolynomial(std::move(coeffs));
}

json to_json(const ResultDocument& doc) {
  json j{{"schema_version", doc.schema_version},
         {"n", doc.n},
         {"kind", to_string(doc.kind)},
         {"degree", doc.degree},
         {"coefficients", doc.coefficients},
         {"invariant_factors", doc.invariant_factors},
         {"precision_bits", doc.precision_bits},
         {"verification", doc.verification}};
  j["discriminant"] = doc.discriminant ? factored_to_json(*doc.discriminant) : json(nullptr);
  return j;
}

ResultDocument document_from_json(const json& j) {
  try {
    ResultDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kSchemaVersion) {
      throw UnsupportedError("unsupported schema version " + std::to_string(doc.schema_version));
    }
    doc.n = j.at("n").get<long>();
    doc.kind = parse_kind(j.at("kind").get<std::string>());
    doc.degree = j.at("degree").get<int>();
    doc.coefficients = j.at("coefficients").get<std::vector<std::string>>();
    if (j.contains("discriminant") && !j["discriminant"].is_null()) {
      doc.discriminant = factored_from_json(j["discriminant"]);
    }
    doc.invariant_factors = j.value("invariant_factors", std::vector<long>{});
    doc.precision_bits = j.value("precision_bits", 0L);
    doc.verification = j.value("verification", std::map<std::string, bool>{});
    if (doc.polynomial().degree() != doc.degree) {
      throw UnsupportedError("document degree does not match its coefficients");
    }
    return doc;
  } catch (const json::exception& e) {
    throw UnsupportedError(std::string("malformed result document: ") + e.what());
  }
}

ResultDocument make_document(const ClassPolynomialResult& result, const FactoredInteger& discriminant,
                             const std::vector<long>& invariant_factors) {
  ResultDocument doc;
  doc.n = result.n;
  doc.kind = result.kind;
  doc.degree = result.polynomial.degree();
  doc.coefficients = coefficients_to_strings(result.polynomial);
  doc.discriminant = discriminant;
  doc.invariant_factors = invariant_factors;
  doc.precision_bits = result.bits;
  doc.verification["verified"] = result.verified;
  return doc;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ResultCache::path_for(PolynomialKind kind, long n) const {
  return dir_ / (to_string(kind) + "_" + std::to_string(n) + ".json");
}

std::optional<ResultDocument> ResultCache::load(PolynomialKind kind, long n) const {
  std::ifstream in(path_for(kind, n));
  if (!in) return std::nullopt;
  try {
    ResultDocument doc = document_from_json(json::parse(in));
    if (doc.n != n || doc.kind != kind) return std::nullopt;
    return doc;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const ResultDocument& doc) const {
  static std::atomic<unsigned long> counter{0};
  const std::filesystem::path target = path_for(doc.kind, doc.n);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << to_json(doc).dump(1) << '\n';
    if (!out) throw Error("short write to cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace classpoly
