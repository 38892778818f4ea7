#pragma once

// Tabular results: one row per measure with optional bootstrap interval and
// achievable bound.  Rendered as an aligned text table, CSV or JSON; numbers
// are printed with six decimals and infinity as "inf".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dircorr/measures.hpp"
#include "dircorr/strategy.hpp"

namespace dircorr {

struct ReportRow {
  Measure measure;
  double value = 0.0;  // NaN when undefined; see `note`
  std::optional<double> ci_lower;
  std::optional<double> ci_upper;
  std::optional<double> bound;
  std::string note;
};

struct MeasureReport {
  std::string dataset;
  SparseStrategy strategy = kDefaultStrategy;
  std::uint64_t n = 0;
  std::vector<ReportRow> rows;

  const ReportRow* find(Measure m) const;
};

std::string format_number(double v);
// Inverse of format_number; accepts "inf", "-inf" and "nan".
double parse_number(std::string_view s);

std::string to_table(const MeasureReport& r);
std::string to_csv(const std::vector<MeasureReport>& reports);
std::string to_json(const std::vector<MeasureReport>& reports);

// Reads text produced by to_csv.  Throws InvalidArgument on malformed input.
std::vector<MeasureReport> reports_from_csv(const std::string& text);

// Published reference values for the three benchmark datasets.
struct ReferenceCell {
  Measure measure;
  double value;
  std::optional<double> ci_lower;
  std::optional<double> ci_upper;
  std::optional<double> bound;
};
struct ReferenceColumn {
  std::string dataset;
  std::uint64_t n;
  std::vector<ReferenceCell> cells;
};
const std::vector<ReferenceColumn>& reference_table();
const ReferenceColumn* reference_for(std::string_view dataset);

inline constexpr double kValueTolerance = 0.002;
inline constexpr double kCiTolerance = 0.02;

struct Comparison {
  std::string dataset;
  Measure measure;
  std::string field;  // value, ci_lower, ci_upper, bound, n
  double expected = 0.0;
  std::optional<double> actual;  // unset when the report lacks the field
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<Comparison> compare_to_reference(const MeasureReport& report, const ReferenceColumn& ref);
std::string comparison_table(const std::vector<Comparison>& cs);

}  // namespace dircorr
