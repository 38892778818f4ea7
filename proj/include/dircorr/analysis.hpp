#pragma once

// Dataset resolution and report assembly shared by the command-line tool,
// the Python module and the acceptance tests.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dircorr/bounds.hpp"
#include "dircorr/ingestion.hpp"
#include "dircorr/measures.hpp"
#include "dircorr/report.hpp"

namespace dircorr {

inline constexpr std::uint64_t kReferenceSeed = 20260419;
inline constexpr std::uint64_t kReferenceResamples = 1000;

// titanic and adult load through data_dir/schemas/<name>.yaml; berkeley is
// embedded.  Throws InvalidArgument for an unknown name.
BuiltinDataset load_builtin(std::string_view name, const std::filesystem::path& data_dir = default_data_dir());
BuiltinDataset load_dataset(const std::filesystem::path& csv, const DatasetSchema& schema);
BuiltinDataset to_dataset(const LoadedDataset& loaded);

// Measures reported for each benchmark dataset.
std::vector<Measure> reference_measures();

struct AnalyzeOptions {
  SparseStrategy strategy = kDefaultStrategy;
  std::uint64_t bootstrap = 0;  // 0 disables intervals
  std::uint64_t seed = kReferenceSeed;
  bool bounds = false;
  std::uint64_t cap = kDefaultCouplingCap;
  unsigned threads = 1;
};

// Undefined measures are reported as NaN with the reason in the row note;
// partial correlation is marked not applicable when the dataset disables it.
MeasureReport analyze_dataset(const BuiltinDataset& ds, std::span<const Measure> ms, const AnalyzeOptions& opts);

bool any_do_family(std::span<const Measure> ms);

}  // namespace dircorr
