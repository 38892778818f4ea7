#include "dircorr/ingestion.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "dircorr/error.hpp"

#ifndef DIRCORR_SOURCE_DATA_DIR
#define DIRCORR_SOURCE_DATA_DIR "data"
#endif

namespace dircorr {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "schema: " + what);
}

std::optional<double> parse_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

ColumnSpec parse_column(const YAML::Node& n, const char* role) {
  if (!n || !n.IsMap()) schema_error(std::string("missing mapping for role '") + role + "'");
  ColumnSpec c;
  if (n["column"]) c.column = n["column"].as<std::string>();
  if (n["index"]) c.index = n["index"].as<std::size_t>();
  if (!c.column && !c.index) schema_error(std::string(role) + ": needs 'column' or 'index'");
  c.role_name = n["name"] ? n["name"].as<std::string>()
                          : (c.column ? *c.column : std::string(role));
  if (!n["labels"] || !n["labels"].IsSequence() || n["labels"].size() == 0)
    schema_error(std::string(role) + ": needs a non-empty 'labels' list");
  for (const auto& l : n["labels"]) c.labels.push_back(l.as<std::string>());
  const std::set<std::string> known(c.labels.begin(), c.labels.end());
  if (known.size() != c.labels.size()) schema_error(std::string(role) + ": duplicate labels");

  if (n["map"]) {
    for (const auto& kv : n["map"]) {
      const auto label = kv.second.as<std::string>();
      if (!known.count(label)) schema_error(std::string(role) + ": map target '" + label + "' is not a label");
      c.map[kv.first.as<std::string>()] = label;
    }
  }
  if (n["bins"]) {
    for (const auto& kv : n["bins"]) {
      const auto label = kv.first.as<std::string>();
      if (!known.count(label)) schema_error(std::string(role) + ": bin '" + label + "' is not a label");
      for (const auto& raw : kv.second) {
        const auto r = raw.as<std::string>();
        if (c.map.count(r)) schema_error(std::string(role) + ": value '" + r + "' binned twice");
        c.map[r] = label;
      }
    }
  }
  if (n["ranges"]) {
    for (const auto& r : n["ranges"]) {
      RangeBin b{r["label"].as<std::string>(), r["min"].as<double>(), r["max"].as<double>()};
      if (!known.count(b.label)) schema_error(std::string(role) + ": range label '" + b.label + "' is not a label");
      if (!(b.min < b.max)) schema_error(std::string(role) + ": empty range for '" + b.label + "'");
      for (const auto& o : c.ranges)
        if (b.min < o.max && o.min < b.max) schema_error(std::string(role) + ": overlapping ranges");
      c.ranges.push_back(std::move(b));
    }
  }
  if (n["bin"]) {
    c.builtin_bin = n["bin"].as<std::string>();
    if (c.builtin_bin != "adult_education") schema_error("unknown builtin bin '" + c.builtin_bin + "'");
    if (c.labels.size() != 4) schema_error(std::string(role) + ": adult_education needs four labels");
  }
  if (n["encoding"]) {
    for (const auto& v : n["encoding"]) c.encoding.push_back(v.as<double>());
    if (c.encoding.size() != c.labels.size())
      schema_error(std::string(role) + ": encoding length differs from labels");
  }
  return c;
}

}  // namespace

std::optional<std::string> ColumnSpec::label_for(const std::string& raw) const {
  if (!builtin_bin.empty()) {
    try {
      return labels.at(static_cast<std::size_t>(adult_education_bin(raw)));
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  if (auto it = map.find(raw); it != map.end()) return it->second;
  if (!ranges.empty()) {
    if (auto v = parse_double(raw))
      for (const auto& r : ranges)
        if (*v >= r.min && *v < r.max) return r.label;
    return std::nullopt;
  }
  if (std::find(labels.begin(), labels.end(), raw) != labels.end()) return raw;
  return std::nullopt;
}

Encodings DatasetSchema::encodings() const {
  auto enc = [](const ColumnSpec& c) {
    return c.encoding.empty() ? NumericEncoding::ordinal(c.labels.size()) : NumericEncoding(c.encoding);
  };
  return {enc(x), enc(y), enc(z)};
}

DatasetSchema parse_schema(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    schema_error(e.what());
  }
  if (!root.IsMap()) schema_error("top level must be a mapping");
  DatasetSchema s;
  try {
    s.name = root["name"] ? root["name"].as<std::string>() : "dataset";
    if (root["file"]) s.file = root["file"].as<std::string>();
    if (root["header"]) s.header = root["header"].as<bool>();
    if (root["trim_spaces"]) s.trim_spaces = root["trim_spaces"].as<bool>();
    if (root["delimiter"]) {
      const auto d = root["delimiter"].as<std::string>();
      if (d.size() != 1) schema_error("delimiter must be one character");
      s.delimiter = d[0];
    }
    if (root["on_unmapped"]) {
      const auto p = root["on_unmapped"].as<std::string>();
      if (p == "reject") s.on_unmapped = UnmappedPolicy::Reject;
      else if (p == "skip") s.on_unmapped = UnmappedPolicy::Skip;
      else schema_error("on_unmapped must be 'reject' or 'skip'");
    }
    if (root["weight"]) s.weight = root["weight"].as<std::string>();
    if (root["partial_correlation"]) s.partial_correlation = root["partial_correlation"].as<bool>();
    s.x = parse_column(root["x"], "x");
    s.y = parse_column(root["y"], "y");
    s.z = parse_column(root["z"], "z");
  } catch (const YAML::Exception& e) {
    schema_error(e.what());
  }
  auto key = [](const ColumnSpec& c) {
    return c.column ? "n:" + *c.column : "i:" + std::to_string(*c.index);
  };
  if (key(s.x) == key(s.y) || key(s.x) == key(s.z) || key(s.y) == key(s.z))
    schema_error("x, y and z must name distinct columns");
  return s;
}

DatasetSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read schema " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  DatasetSchema s = parse_schema(ss.str());
  if (s.file && std::filesystem::path(*s.file).is_relative())
    s.file = (path.parent_path() / *s.file).lexically_normal().string();
  return s;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text, char delim) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;  // current row has content
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    if (any) rows.push_back(std::move(row));
    row.clear();
    any = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == delim) {
      end_field();
      any = true;
    } else if (c == '\n') {
      end_row();
    } else if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      end_row();
    } else {
      field += c;
      if (c != ' ' && c != '\t') any = true;
    }
  }
  if (quoted) throw Error(ErrorKind::InvalidArgument, "unterminated quoted field in CSV");
  end_row();
  return rows;
}

LoadedDataset load_csv_text(const std::string& text, const DatasetSchema& schema) {
  auto rows = parse_csv(text, schema.delimiter);
  if (schema.trim_spaces)
    for (auto& r : rows)
      for (auto& f : r) f = trim(f);

  std::vector<std::string> header;
  std::size_t first = 0;
  if (schema.header) {
    if (rows.empty()) throw Error(ErrorKind::EmptyAfterFiltering, "file has no header row");
    header = rows[0];
    first = 1;
  }
  auto resolve = [&](const std::optional<std::string>& name, const std::optional<std::size_t>& idx,
                     const std::string& what) -> std::size_t {
    if (name) {
      if (!schema.header)
        throw Error(ErrorKind::MissingColumn, what + ": column '" + *name + "' named but file has no header");
      const auto it = std::find(header.begin(), header.end(), *name);
      if (it == header.end()) throw Error(ErrorKind::MissingColumn, what + ": no column '" + *name + "'");
      return static_cast<std::size_t>(it - header.begin());
    }
    if (schema.header && *idx >= header.size())
      throw Error(ErrorKind::MissingColumn, what + ": column index " + std::to_string(*idx) + " out of range");
    return *idx;
  };
  const ColumnSpec* specs[3] = {&schema.x, &schema.y, &schema.z};
  std::size_t cols[3];
  for (int k = 0; k < 3; ++k) cols[k] = resolve(specs[k]->column, specs[k]->index, "xyz"[k] + std::string(" role"));
  std::optional<std::size_t> wcol;
  if (schema.weight) wcol = resolve(schema.weight, std::nullopt, "weight");

  const Alphabet ax(schema.x.labels), ay(schema.y.labels), az(schema.z.labels);
  const Alphabet* abs[3] = {&ax, &ay, &az};
  std::vector<ObservationTable::Record> recs;
  std::uint64_t skipped = 0;
  std::uint64_t source_rows = 0;
  for (std::size_t r = first; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ++source_rows;
    const std::size_t line = r + 1;
    ObservationTable::Record rec{};
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) {
      if (cols[k] >= row.size())
        throw Error(ErrorKind::MissingColumn, "row " + std::to_string(line) + " has only " +
                                                  std::to_string(row.size()) + " fields");
      const auto label = specs[k]->label_for(row[cols[k]]);
      if (!label) {
        if (schema.on_unmapped == UnmappedPolicy::Skip) {
          ok = false;
          break;
        }
        throw Error(ErrorKind::UnknownCategory, "row " + std::to_string(line) + ": value '" + row[cols[k]] +
                                                    "' in column " + specs[k]->role_name + " is not mapped");
      }
      rec[k] = static_cast<std::uint32_t>(*abs[k]->index_of(*label));
    }
    if (!ok) {
      ++skipped;
      continue;
    }
    std::uint64_t w = 1;
    if (wcol) {
      if (*wcol >= row.size()) throw Error(ErrorKind::MissingColumn, "row " + std::to_string(line) + " lacks the weight field");
      const std::string& f = row[*wcol];
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), w);
      if (ec != std::errc() || p != f.data() + f.size())
        throw Error(ErrorKind::InvalidArgument, "row " + std::to_string(line) + ": weight '" + f + "' is not a count");
    }
    recs.insert(recs.end(), w, rec);
  }
  if (recs.empty()) throw Error(ErrorKind::EmptyAfterFiltering, "no usable rows in " + schema.name);
  return {schema, ObservationTable(ax, ay, az, std::move(recs)), skipped, source_rows};
}

LoadedDataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_csv_text(ss.str(), schema);
}

int adult_education_bin(std::string_view raw) {
  static const std::map<std::string, int, std::less<>> groups = {
      {"Preschool", 0}, {"1st-4th", 0},   {"5th-6th", 0},      {"7th-8th", 0},
      {"9th", 0},       {"10th", 0},      {"11th", 0},         {"12th", 0},
      {"HS-grad", 1},   {"Some-college", 1},
      {"Assoc-voc", 2}, {"Assoc-acdm", 2}, {"Bachelors", 2},
      {"Masters", 3},   {"Prof-school", 3}, {"Doctorate", 3},
  };
  const std::string key = trim(raw);
  const auto it = groups.find(key);
  if (it == groups.end()) throw Error(ErrorKind::UnknownCategory, "unknown education level '" + key + "'");
  return it->second;
}

BuiltinDataset builtin_berkeley() {
  // admitted / applied, per department, male then female.
  struct Dept {
    std::uint64_t male_admit, male_total, female_admit, female_total;
  };
  static constexpr Dept depts[6] = {
      {512, 825, 89, 108}, {353, 560, 17, 25},   {120, 325, 202, 593},
      {138, 417, 131, 375}, {53, 191, 94, 393},  {22, 373, 24, 341},
  };
  const Alphabet x({"Female", "Male"});
  const Alphabet y({"Rejected", "Admitted"});
  const Alphabet z({"A", "B", "C", "D", "E", "F"});
  std::vector<std::uint64_t> counts(2 * 2 * 6);
  auto at = [&](int g, int a, int d) -> std::uint64_t& { return counts[(g * 2 + a) * 6 + d]; };
  for (int d = 0; d < 6; ++d) {
    at(1, 1, d) = depts[d].male_admit;
    at(1, 0, d) = depts[d].male_total - depts[d].male_admit;
    at(0, 1, d) = depts[d].female_admit;
    at(0, 0, d) = depts[d].female_total - depts[d].female_admit;
  }
  Joint3 j = from_counts(counts, x, y, z);
  Encodings enc = Encodings::ordinal(j);
  return {"berkeley", j, from_joint_counts(x, y, z, counts), enc, false};
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("DIRCORR_DATA_DIR"); env && *env) return env;
  return DIRCORR_SOURCE_DATA_DIR;
}

}  // namespace dircorr
