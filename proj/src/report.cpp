#include "dircorr/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "dircorr/error.hpp"
#include "dircorr/ingestion.hpp"

namespace dircorr {

const ReportRow* MeasureReport::find(Measure m) const {
  for (const auto& r : rows)
    if (r.measure == m) return &r;
  return nullptr;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

double parse_number(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(std::string(s), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(s) + "'");
  return v;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

constexpr const char* kCsvHeader = "dataset,strategy,n,measure,value,ci_lower,ci_upper,bound,note";

}  // namespace

std::string to_table(const MeasureReport& r) {
  std::ostringstream os;
  os << "dataset " << r.dataset << "  n=" << r.n << "  strategy " << to_string(r.strategy) << "\n";
  const bool ci = std::any_of(r.rows.begin(), r.rows.end(), [](const auto& x) { return x.ci_lower.has_value(); });
  const bool bd = std::any_of(r.rows.begin(), r.rows.end(), [](const auto& x) { return x.bound.has_value(); });
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %12s", "measure", "value");
  os << line;
  if (ci) os << "  " << std::string(25 - 6, ' ') << "95% CI";
  if (bd) os << "  " << std::string(12 - 5, ' ') << "bound";
  os << "\n";
  for (const auto& row : r.rows) {
    std::snprintf(line, sizeof line, "%-10s %12s", std::string(to_string(row.measure)).c_str(),
                  format_number(row.value).c_str());
    os << line;
    if (ci) {
      const std::string iv = row.ci_lower ? "[" + opt(row.ci_lower) + ", " + opt(row.ci_upper) + "]" : "";
      std::snprintf(line, sizeof line, "  %25s", iv.c_str());
      os << line;
    }
    if (bd) {
      std::snprintf(line, sizeof line, "  %12s", opt(row.bound).c_str());
      os << line;
    }
    if (!row.note.empty()) os << "  " << row.note;
    os << "\n";
  }
  return os.str();
}

std::string to_csv(const std::vector<MeasureReport>& reports) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& r : reports)
    for (const auto& row : r.rows)
      os << csv_field(r.dataset) << ',' << to_string(r.strategy) << ',' << r.n << ','
         << to_string(row.measure) << ',' << format_number(row.value) << ',' << opt(row.ci_lower) << ','
         << opt(row.ci_upper) << ',' << opt(row.bound) << ',' << csv_field(row.note) << "\n";
  return os.str();
}

std::string to_json(const std::vector<MeasureReport>& reports) {
  // Numbers go out as their six-decimal text so the JSON carries exactly the
  // printed precision; non-finite values become the strings "inf"/"nan".
  auto num = [](double v) -> nlohmann::ordered_json {
    if (!std::isfinite(v)) return format_number(v);
    return nlohmann::ordered_json::parse(format_number(v));
  };
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json jr;
    jr["dataset"] = r.dataset;
    jr["strategy"] = std::string(to_string(r.strategy));
    jr["n"] = r.n;
    jr["measures"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
      nlohmann::ordered_json m;
      m["measure"] = std::string(to_string(row.measure));
      m["value"] = num(row.value);
      if (row.ci_lower) m["ci"] = {num(*row.ci_lower), num(*row.ci_upper)};
      if (row.bound) m["bound"] = num(*row.bound);
      if (!row.note.empty()) m["note"] = row.note;
      jr["measures"].push_back(std::move(m));
    }
    arr.push_back(std::move(jr));
  }
  return arr.dump(2) + "\n";
}

std::vector<MeasureReport> reports_from_csv(const std::string& text) {
  const auto rows = parse_csv(text);
  if (rows.empty() || rows[0].size() != 9)
    throw Error(ErrorKind::InvalidArgument, "report CSV lacks the expected header");
  std::vector<MeasureReport> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != 9) throw Error(ErrorKind::InvalidArgument, "report CSV row " + std::to_string(i + 1) + " has " + std::to_string(f.size()) + " fields");
    if (out.empty() || out.back().dataset != f[0]) {
      MeasureReport r;
      r.dataset = f[0];
      const auto s = parse_strategy(f[1]);
      if (!s) throw Error(ErrorKind::InvalidArgument, "bad strategy '" + f[1] + "'");
      r.strategy = *s;
      r.n = std::stoull(f[2]);
      out.push_back(std::move(r));
    }
    const auto m = parse_measure(f[3]);
    if (!m) throw Error(ErrorKind::InvalidArgument, "bad measure '" + f[3] + "'");
    ReportRow row{*m, parse_number(f[4]), std::nullopt, std::nullopt, std::nullopt, f[8]};
    if (!f[5].empty()) row.ci_lower = parse_number(f[5]);
    if (!f[6].empty()) row.ci_upper = parse_number(f[6]);
    if (!f[7].empty()) row.bound = parse_number(f[7]);
    out.back().rows.push_back(std::move(row));
  }
  return out;
}

const std::vector<ReferenceColumn>& reference_table() {
  using M = Measure;
  using std::nullopt;
  static const std::vector<ReferenceColumn> t = {
      {"titanic", 891,
       {
           {M::pcc, -0.339, -0.40, -0.28, nullopt},
           {M::pc, -0.321, -0.38, -0.26, nullopt},
           {M::rmi, 0.146, 0.119, 0.174, 0.555},
           {M::rcmi, 0.160, 0.129, 0.186, 0.246},
           {M::rpmi, 0.195, 0.165, 0.224, 0.206},
           {M::ricmi_xy, 0.159, 0.130, 0.186, 0.252},
           {M::ricmi_yx, 0.221, 0.173, 0.257, 0.326},
           {M::ricmi_two, 0.190, 0.154, 0.221, 0.269},
           {M::nace, 0.316, 0.247, 0.383, 1.000},
           {M::race, 0.275, 0.215, 0.332, 1.000},
           {M::rmi_do, 0.116, 0.091, 0.141, 0.555},
       }},
      {"adult", 32561,
       {
           {M::pcc, 0.346, 0.336, 0.356, nullopt},
           {M::pc, 0.349, 0.338, 0.359, nullopt},
           {M::rmi, 0.148, 0.143, 0.152, 0.556},
           {M::rcmi, 0.149, 0.144, 0.154, 0.247},
           {M::rpmi, 0.152, 0.148, 0.157, 0.190},
           {M::ricmi_xy, 0.148, 0.143, 0.152, 0.248},
           {M::ricmi_yx, 0.156, 0.151, 0.162, 0.392},
           {M::ricmi_two, 0.152, 0.147, 0.157, 0.284},
           {M::nace, 0.544, 0.525, 0.562, 1.000},
           {M::race, 0.521, 0.505, 0.538, 1.000},
           {M::rmi_do, 0.144, 0.139, 0.148, 0.556},
       }},
      {"berkeley", 4526,
       {
           {M::pcc, 0.143, 0.113, 0.172, nullopt},
           {M::rmi, 0.061, 0.048, 0.074, 0.549},
           {M::rcmi, 0.030, 0.021, 0.046, 0.222},
           {M::rpmi, 0.042, 0.030, 0.064, 0.277},
           {M::ricmi_xy, 0.053, 0.037, 0.082, 0.304},
           {M::ricmi_yx, 0.037, 0.026, 0.059, 0.343},
           {M::ricmi_two, 0.045, 0.031, 0.070, 0.310},
           {M::nace, 0.043, 0.008, 0.078, 1.000},
           {M::race, 0.037, 0.007, 0.067, 1.000},
           {M::rmi_do, 0.018, 0.003, 0.033, 0.549},
       }},
  };
  return t;
}

const ReferenceColumn* reference_for(std::string_view dataset) {
  for (const auto& c : reference_table())
    if (c.dataset == dataset) return &c;
  return nullptr;
}

std::vector<Comparison> compare_to_reference(const MeasureReport& report, const ReferenceColumn& ref) {
  std::vector<Comparison> out;
  auto add = [&](Measure m, const char* field, double expected, std::optional<double> actual, double tol) {
    Comparison c{ref.dataset, m, field, expected, actual, tol, false};
    c.pass = actual && std::abs(*actual - expected) <= tol + 1e-12;
    out.push_back(std::move(c));
  };
  out.push_back({ref.dataset, Measure::pcc, "n", static_cast<double>(ref.n), static_cast<double>(report.n), 0.0,
                 report.n == ref.n});
  for (const auto& cell : ref.cells) {
    const ReportRow* row = report.find(cell.measure);
    if (!row) continue;
    add(cell.measure, "value", cell.value, row->value, kValueTolerance);
    if (cell.ci_lower && row->ci_lower) {
      add(cell.measure, "ci_lower", *cell.ci_lower, row->ci_lower, kCiTolerance);
      add(cell.measure, "ci_upper", *cell.ci_upper, row->ci_upper, kCiTolerance);
    }
    if (cell.bound && row->bound) add(cell.measure, "bound", *cell.bound, row->bound, kValueTolerance);
  }
  return out;
}

std::string comparison_table(const std::vector<Comparison>& cs) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-9s %-10s %-9s %10s %10s %10s %7s  %s\n", "dataset", "measure", "field",
                "expected", "actual", "delta", "tol", "status");
  os << line;
  for (const auto& c : cs) {
    const std::string name = c.field == "n" ? "-" : std::string(to_string(c.measure));
    const std::string act = c.actual ? format_number(*c.actual) : "missing";
    const std::string delta = c.actual ? format_number(*c.actual - c.expected) : "";
    std::snprintf(line, sizeof line, "%-9s %-10s %-9s %10s %10s %10s %7.3f  %s\n", c.dataset.c_str(), name.c_str(),
                  c.field.c_str(), format_number(c.expected).c_str(), act.c_str(), delta.c_str(), c.tolerance,
                  c.pass ? "PASS" : "FAIL");
    os << line;
  }
  return os.str();
}

}  // namespace dircorr
