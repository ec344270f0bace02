#pragma once

// Expected values shipped with the library: the five Ramanujan polynomials of
// the original table, the 42-row discriminant table for 11 <= n <= 995, the
// n = 227 worked example and the two non-cyclic class groups.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "classpoly/factor.hpp"
#include "classpoly/polynomial.hpp"

namespace classpoly {

struct ExpectedRow {
  long n = 0;
  long h = 0;
  int sign = 1;
  FactoredInteger discriminant;  // of P_n
  std::vector<long> invariant_factors;
};

struct WorkedExample {
  long n = 0;
  long h = 0;
  std::vector<long> invariant_factors;
  IntPolynomial hilbert;
  IntPolynomial ramanujan;
  FactoredInteger discriminant_hilbert;
  FactoredInteger discriminant_ramanujan;
  FactoredInteger index;
  FactoredInteger field_discriminant;
};

class ExpectedDataset {
 public:
  /// The copy compiled into the library.
  static const ExpectedDataset& embedded();
  static ExpectedDataset parse(std::string_view json_text);
  static ExpectedDataset load(const std::filesystem::path& path);

  const std::map<long, IntPolynomial>& ramanujan_table() const { return ramanujan_table_; }
  const std::map<long, ExpectedRow>& rows() const { return rows_; }
  const ExpectedRow* row(long n) const;
  const WorkedExample& worked_example() const { return worked_example_; }
  const std::map<long, std::vector<long>>& class_group_remarks() const { return remarks_; }

 private:
  std::map<long, IntPolynomial> ramanujan_table_;
  std::map<long, ExpectedRow> rows_;
  WorkedExample worked_example_;
  std::map<long, std::vector<long>> remarks_;
};

std::string_view embedded_dataset_text();

}  // namespace classpoly
