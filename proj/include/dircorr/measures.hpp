#pragma once

// Named registry over every measure the library computes, so that bounds,
// bootstrap and the CLI can address them by id.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dircorr/prob.hpp"
#include "dircorr/strategy.hpp"
#include "dircorr/total_corr.hpp"

namespace dircorr {

enum class Measure {
  pcc,
  pc,
  mi,
  nmi_to_y,
  nmi_to_x,
  nmi,
  rmi,
  cmi,
  cmi_js,
  rcmi,
  pmi,
  rpmi,
  icmi_xy,
  icmi_yx,
  icmi_two,
  ricmi_xy,
  ricmi_yx,
  ricmi_two,
  ace,
  nace,
  ace_kl,
  race,
  mi_do,
  rmi_do,
};

enum class Range {
  Signed,    // [-1, 1]
  Unit,      // [0, 1]
  Bits,      // [0, +inf]
};

struct MeasureInfo {
  Measure id;
  std::string_view name;
  Range range;
  bool direct;       // a direct-correlation measure
  bool boundable;    // has an achievable upper bound by coupling enumeration
  bool do_family;    // relies on back-door adjustment
  bool linear;       // needs numeric encodings
  std::string_view description;
};

const std::vector<MeasureInfo>& all_measures();
const MeasureInfo& info(Measure m);
std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

// Comma-separated ids; throws InvalidArgument listing valid ids on an
// unknown name.  "all" expands to every measure.
std::vector<Measure> parse_measure_list(std::string_view text);
std::string valid_measure_names();

std::vector<Measure> boundable_measures();

struct EvalOptions {
  SparseStrategy strategy = kDefaultStrategy;
  // Ordinal encodings are used when unset.
  std::optional<Encodings> encodings;
};

// Value of one measure on `j`.  Errors from the underlying measure
// (DegenerateVariable, SingularDenominator, SingleCategory) propagate.
double evaluate(Measure m, const Joint3& j, const EvalOptions& opts = {});

// Values of several measures sharing intermediate reconstructions.  A
// measure that throws is reported as NaN with the message in `errors`.
struct MeasureValues {
  std::vector<Measure> measures;
  std::vector<double> values;
  std::vector<std::string> errors;
};
MeasureValues evaluate_all(std::span<const Measure> ms, const Joint3& j, const EvalOptions& opts = {});

}  // namespace dircorr
