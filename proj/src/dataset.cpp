#include "classpoly/dataset.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "classpoly/document.hpp"
#include "classpoly/errors.hpp"

namespace classpoly {

namespace detail {
extern const std::string_view kEmbeddedDataset;
}

using nlohmann::json;

namespace {

// Polynomial entries inherit the schema version of the enclosing file.
IntPolynomial nested_polynomial(const json& entry) {
  json doc = entry;
  if (!doc.contains("schema_version")) doc["schema_version"] = kSchemaVersion;
  return document_from_json(doc).polynomial();
}

}  // namespace

std::string_view embedded_dataset_text() { return detail::kEmbeddedDataset; }

const ExpectedDataset& ExpectedDataset::embedded() {
  static const ExpectedDataset dataset = parse(detail::kEmbeddedDataset);
  return dataset;
}

ExpectedDataset ExpectedDataset::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read dataset " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

ExpectedDataset ExpectedDataset::parse(std::string_view json_text) {
  ExpectedDataset out;
  try {
    const json j = json::parse(json_text);
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw UnsupportedError("dataset schema version");
    for (const auto& entry : j.at("table1")) {
      out.ramanujan_table_[entry.at("n").get<long>()] = nested_polynomial(entry);
    }
    for (const auto& entry : j.at("table2")) {
      ExpectedRow row;
      row.n = entry.at("n").get<long>();
      row.h = entry.at("h").get<long>();
      const std::string sign = entry.at("sign").get<std::string>();
      if (sign != "+" && sign != "-") throw UnsupportedError("sign must be '+' or '-'");
      row.sign = sign == "+" ? 1 : -1;
      row.discriminant = factored_from_json(entry.at("discriminant"));
      row.invariant_factors = entry.at("invariant_factors").get<std::vector<long>>();
      out.rows_[row.n] = std::move(row);
    }
    const json& ex = j.at("worked_example");
    WorkedExample& w = out.worked_example_;
    w.n = ex.at("n").get<long>();
    w.h = ex.at("h").get<long>();
    w.invariant_factors = ex.at("invariant_factors").get<std::vector<long>>();
    w.hilbert = nested_polynomial(ex.at("hilbert"));
    w.ramanujan = nested_polynomial(ex.at("ramanujan"));
    w.discriminant_hilbert = factored_from_json(ex.at("discriminant_hilbert"));
    w.discriminant_ramanujan = factored_from_json(ex.at("discriminant_ramanujan"));
    w.index = factored_from_json(ex.at("index"));
    w.field_discriminant = factored_from_json(ex.at("field_discriminant"));
    for (const auto& entry : j.at("class_group_remarks")) {
      out.remarks_[entry.at("n").get<long>()] = entry.at("invariant_factors").get<std::vector<long>>();
    }
  } catch (const json::exception& e) {
    throw UnsupportedError(std::string("malformed dataset: ") + e.what());
  }
  return out;
}

const ExpectedRow* ExpectedDataset::row(long n) const {
  auto it = rows_.find(n);
  return it == rows_.end() ? nullptr : &it->second;
}

}  // namespace classpoly
