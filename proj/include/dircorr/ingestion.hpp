#pragma once

// CSV ingestion driven by a declarative YAML schema, plus the embedded
// Berkeley admissions table.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dircorr/prob.hpp"
#include "dircorr/resampling.hpp"
#include "dircorr/total_corr.hpp"

namespace dircorr {

// Half-open numeric interval [min, max) mapped to a label.
struct RangeBin {
  std::string label;
  double min = 0.0;
  double max = 0.0;
};

struct ColumnSpec {
  std::optional<std::string> column;  // header name
  std::optional<std::size_t> index;   // zero-based position
  std::string role_name;              // display name, defaults to the column
  std::vector<std::string> labels;    // alphabet, in declaration order
  std::map<std::string, std::string> map;  // raw value -> label
  std::vector<RangeBin> ranges;
  std::string builtin_bin;            // e.g. "adult_education"
  std::vector<double> encoding;       // numeric value per label; ordinal if empty

  // Label for a raw cell value, or nullopt when no rule covers it.
  std::optional<std::string> label_for(const std::string& raw) const;
};

enum class UnmappedPolicy { Reject, Skip };

struct DatasetSchema {
  std::string name;
  std::optional<std::string> file;  // resolved against the schema's directory
  bool header = true;
  bool trim_spaces = false;
  char delimiter = ',';
  UnmappedPolicy on_unmapped = UnmappedPolicy::Reject;
  std::optional<std::string> weight;  // integer frequency column
  bool partial_correlation = true;    // false when Z has no meaningful order
  ColumnSpec x;
  ColumnSpec y;
  ColumnSpec z;

  Encodings encodings() const;
};

// Throws InvalidArgument on malformed schemas.
DatasetSchema parse_schema(const std::string& yaml_text);
DatasetSchema load_schema(const std::filesystem::path& path);

struct LoadedDataset {
  DatasetSchema schema;
  ObservationTable observations;
  std::uint64_t skipped_rows = 0;   // rows dropped under on_unmapped: skip
  std::uint64_t source_rows = 0;    // non-blank data rows read
};

// Splits CSV text into rows of fields (quoted fields, doubled quotes and
// CRLF endings are understood).  Blank lines are dropped.
std::vector<std::vector<std::string>> parse_csv(const std::string& text, char delimiter = ',');

// Throws Io, MissingColumn, UnknownCategory (reject policy) and
// EmptyAfterFiltering.
LoadedDataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema);
LoadedDataset load_csv_text(const std::string& text, const DatasetSchema& schema);

// Four ordinal groups of the Adult `education` column.
int adult_education_bin(std::string_view raw);

struct BuiltinDataset {
  std::string name;
  Joint3 joint;
  ObservationTable observations;
  Encodings encodings;
  bool partial_correlation = true;
};

// X = gender (Female, Male), Y = admission (Rejected, Admitted),
// Z = department A..F, from the published 1973 counts.
BuiltinDataset builtin_berkeley();

// Directory holding the bundled CSVs and schemas: $DIRCORR_DATA_DIR when
// set, otherwise the source tree's data/ directory.
std::filesystem::path default_data_dir();

}  // namespace dircorr
