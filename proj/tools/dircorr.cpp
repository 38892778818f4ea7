// dircorr: direct-correlation measures on three-variable categorical data.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "dircorr/analysis.hpp"
#include "dircorr/do_calculus.hpp"
#include "dircorr/error.hpp"
#include "dircorr/toy_models.hpp"

namespace {

using namespace dircorr;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitCompute = 2;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::MissingColumn:
    case ErrorKind::EmptyAfterFiltering:
    case ErrorKind::UnknownCategory:
    case ErrorKind::Io:
    case ErrorKind::ZeroTotal:
      return kExitData;
    default:
      return kExitCompute;
  }
}

struct DataArgs {
  std::string builtin;
  std::string data;
  std::string schema;
  std::string data_dir;

  void attach(CLI::App* cmd) {
    cmd->add_option("--builtin", builtin, "Bundled dataset: titanic, adult or berkeley");
    cmd->add_option("--data", data, "CSV file to load (needs --schema)");
    cmd->add_option("--schema", schema, "YAML schema mapping CSV columns to X, Y, Z");
    cmd->add_option("--data-dir", data_dir, "Directory with bundled data (default $DIRCORR_DATA_DIR)");
  }

  std::filesystem::path dir() const { return data_dir.empty() ? default_data_dir() : std::filesystem::path(data_dir); }

  BuiltinDataset load() const {
    if (!builtin.empty()) {
      if (!data.empty() || !schema.empty())
        throw Error(ErrorKind::InvalidArgument, "--builtin cannot be combined with --data or --schema");
      return load_builtin(builtin, dir());
    }
    if (schema.empty()) throw Error(ErrorKind::InvalidArgument, "give --builtin NAME or --schema FILE [--data FILE]");
    const DatasetSchema s = load_schema(schema);
    if (!data.empty()) return load_dataset(data, s);
    if (!s.file) throw Error(ErrorKind::InvalidArgument, "schema names no file; pass --data");
    return load_dataset(*s.file, s);
  }
};

struct OutputArgs {
  std::string format = "table";
  std::string output;

  void attach(CLI::App* cmd, bool table) {
    if (!table) format = "csv";
    cmd->add_option("--format", format, table ? "table, csv or json" : "csv or json")
        ->check(table ? CLI::IsMember({"table", "csv", "json"}) : CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", output, "Write to this file instead of standard output");
  }

  void emit(const std::string& text) const {
    if (output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + output);
    out << text;
  }
};

std::string render(const std::vector<MeasureReport>& reps, const std::string& format) {
  if (format == "csv") return to_csv(reps);
  if (format == "json") return to_json(reps);
  std::string s;
  for (const auto& r : reps) s += to_table(r) + "\n";
  return s;
}

SparseStrategy strategy_arg(const std::string& s) {
  const auto v = parse_strategy(s);
  if (!v) throw Error(ErrorKind::InvalidArgument, "strategy must be a, b or c");
  return *v;
}

void caveat(std::span<const Measure> ms, const OutputArgs& out) {
  if (!any_do_family(ms)) return;
  // Keep machine-readable streams clean.
  (out.format == "table" && out.output.empty() ? std::cout : std::cerr) << kBackdoorCaveat << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct-correlation measures for three categorical variables X, Y, Z"};
  app.require_subcommand(1);

  std::string strategy = "b";
  std::string measures;
  std::uint64_t bootstrap = 0;
  std::uint64_t seed = kReferenceSeed;
  std::uint64_t cap = kDefaultCouplingCap;
  unsigned threads = 1;
  bool with_bounds = false;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", strategy, "Sparse-data fill: a (uniform), b (marginal), c (conditional marginal)")
        ->capture_default_str();
    cmd->add_option("--measures", measures, "Comma-separated measure ids, or 'all'");
    cmd->add_option("--threads", threads, "Worker threads for bootstrap and bounds (0 = all cores)")
        ->capture_default_str();
  };

  // analyze
  DataArgs a_data;
  OutputArgs a_out;
  auto* analyze = app.add_subcommand("analyze", "Compute measures on a dataset");
  a_data.attach(analyze);
  a_out.attach(analyze, true);
  analyze->add_option("--bootstrap", bootstrap, "Bootstrap resamples for 95% intervals (0 = off)");
  analyze->add_option("--seed", seed, "Bootstrap seed")->capture_default_str();
  analyze->add_flag("--bounds", with_bounds, "Add achievable upper bounds");
  analyze->add_option("--cap", cap, "Maximum couplings to enumerate")->capture_default_str();

  // bounds
  DataArgs b_data;
  OutputArgs b_out;
  auto* bounds = app.add_subcommand("bounds", "Achievable upper bounds by coupling enumeration");
  b_data.attach(bounds);
  b_out.attach(bounds, true);
  bounds->add_option("--cap", cap, "Maximum couplings to enumerate")->capture_default_str();
  std::vector<std::uint64_t> uniform_k;
  bounds->add_option("--uniform-k", uniform_k, "Print the closed-form uniform rmi maximum for these sizes");
  bool argmax = false;
  bounds->add_flag("--argmax", argmax, "Also print the maximizing coupling y = f(x, z) as CSV");

  // bootstrap
  DataArgs s_data;
  OutputArgs s_out;
  auto* boot = app.add_subcommand("bootstrap", "Percentile bootstrap intervals");
  s_data.attach(boot);
  s_out.attach(boot, true);
  std::uint64_t boot_b = kReferenceResamples;
  boot->add_option("-B,--resamples", boot_b, "Number of resamples")->capture_default_str();
  boot->add_option("--seed", seed, "Seed")->capture_default_str();

  // reproduce
  std::string r_data_dir;
  OutputArgs r_out;
  std::uint64_t r_boot = kReferenceResamples;
  auto* reproduce = app.add_subcommand("reproduce", "Recompute the benchmark table and compare with reference values");
  reproduce->add_option("--data-dir", r_data_dir, "Directory with bundled data (default $DIRCORR_DATA_DIR)");
  reproduce->add_option("--bootstrap", r_boot, "Bootstrap resamples (0 = skip intervals)")->capture_default_str();
  reproduce->add_option("--seed", seed, "Bootstrap seed")->capture_default_str();
  reproduce->add_option("--cap", cap, "Maximum couplings to enumerate")->capture_default_str();
  r_out.attach(reproduce, true);

  // sweep
  std::string model;
  std::string param;
  double q[5] = {0, 0, 0, 0, 0};
  double lambda0 = 0;
  double lambda1 = 0;
  double lo = 0;
  double hi = 1;
  std::size_t points = 21;
  OutputArgs w_out;
  auto* sw = app.add_subcommand("sweep", "Measures along a parameter grid of a toy model");
  sw->add_option("--model", model, "decision or simple")->required()->check(CLI::IsMember({"decision", "simple"}));
  sw->add_option("--param", param, "Parameter to vary: q0..q4, lambda0, lambda1")->required();
  for (int i = 0; i < 5; ++i) sw->add_option("--q" + std::to_string(i), q[i], "Fixed value of q" + std::to_string(i));
  sw->add_option("--lambda0", lambda0, "Fixed value of lambda0");
  sw->add_option("--lambda1", lambda1, "Fixed value of lambda1");
  sw->add_option("--from", lo, "Grid start")->capture_default_str();
  sw->add_option("--to", hi, "Grid end")->capture_default_str();
  sw->add_option("--points", points, "Grid points")->capture_default_str();
  w_out.attach(sw, false);

  for (auto* cmd : {analyze, bounds, boot, sw}) common(cmd);
  reproduce->add_option("--strategy", strategy, "Sparse-data fill: a, b or c")->capture_default_str();
  reproduce->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  const std::string bounds_default = [] {
    std::string s;
    for (Measure m : boundable_measures()) s += (s.empty() ? "" : ",") + std::string(to_string(m));
    return s;
  }();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitData;
  }

  try {
    const SparseStrategy strat = strategy_arg(strategy);
    auto measure_list = [&](const std::string& fallback) {
      return parse_measure_list(measures.empty() ? fallback : measures);
    };

    if (analyze->parsed()) {
      const auto ms = measure_list("all");
      const BuiltinDataset ds = a_data.load();
      AnalyzeOptions o{strat, bootstrap, seed, with_bounds, cap, threads};
      a_out.emit(render({analyze_dataset(ds, ms, o)}, a_out.format));
      caveat(ms, a_out);
    } else if (bounds->parsed()) {
      if (!uniform_k.empty()) {
        std::ostringstream os;
        os << "k,rmi_max_uniform\n";
        for (auto k : uniform_k) os << k << ',' << format_number(rmi_max_uniform(k)) << "\n";
        b_out.emit(os.str());
        return kExitOk;
      }
      const auto ms = measure_list(bounds_default);
      const BuiltinDataset ds = b_data.load();
      for (Measure m : ms)
        if (!info(m).boundable)
          throw Error(ErrorKind::InvalidArgument, "no achievable bound for '" + std::string(to_string(m)) +
                                                      "'; boundable ids: " + bounds_default);
      AnalyzeOptions o{strat, 0, seed, true, cap, threads};
      std::string text = render({analyze_dataset(ds, ms, o)}, b_out.format);
      if (argmax) {
        // Cells with p(x, z) = 0 carry no mass and are omitted.
        const Joint2 pxz = marginal(ds.joint, Axis::X, Axis::Z);
        std::ostringstream os;
        os << "\nmeasure,bound,x,z,y\n";
        for (const BoundReport& r : achievable_bounds(ds.joint, ms, strat, cap, threads))
          for (std::size_t x = 0; x < ds.joint.dx(); ++x)
            for (std::size_t z = 0; z < ds.joint.dz(); ++z) {
              if (pxz(x, z) <= 0.0) continue;
              os << to_string(r.measure) << ',' << format_number(r.max_value) << ','
                 << ds.joint.x_alphabet().label(x) << ',' << ds.joint.z_alphabet().label(z) << ','
                 << ds.joint.y_alphabet().label(r.argmax_function[x * ds.joint.dz() + z]) << "\n";
            }
        text += os.str();
      }
      b_out.emit(text);
      caveat(ms, b_out);
    } else if (boot->parsed()) {
      const auto ms = measure_list("rcmi");
      const BuiltinDataset ds = s_data.load();
      AnalyzeOptions o{strat, boot_b, seed, false, cap, threads};
      s_out.emit(render({analyze_dataset(ds, ms, o)}, s_out.format));
      caveat(ms, s_out);
    } else if (reproduce->parsed()) {
      const auto ms = reference_measures();
      const std::filesystem::path dir = r_data_dir.empty() ? default_data_dir() : std::filesystem::path(r_data_dir);
      std::vector<MeasureReport> reps;
      std::vector<Comparison> cmp;
      std::ostringstream skipped;
      for (const auto& ref : reference_table()) {
        std::optional<BuiltinDataset> ds;
        try {
          ds = load_builtin(ref.dataset, dir);
        } catch (const Error& e) {
          if (exit_code(e.kind()) != kExitData) throw;
          skipped << "skipped " << ref.dataset << ": " << e.what() << "\n";
          continue;
        }
        AnalyzeOptions o{strat, r_boot, seed, true, cap, threads};
        reps.push_back(analyze_dataset(*ds, ms, o));
        const auto c = compare_to_reference(reps.back(), ref);
        cmp.insert(cmp.end(), c.begin(), c.end());
      }
      std::string text = render(reps, r_out.format);
      if (r_out.format == "table") {
        std::size_t pass = 0;
        for (const auto& c : cmp) pass += c.pass;
        text += comparison_table(cmp);
        text += skipped.str();
        text += std::to_string(pass) + " of " + std::to_string(cmp.size()) + " reference cells within tolerance\n";
      } else {
        std::cerr << skipped.str();
      }
      r_out.emit(text);
      caveat(ms, r_out);
    } else if (sw->parsed()) {
      const auto ms = measure_list("rcmi,ricmi_two,nace,race,rmi_do");
      const ToyModel tm = model == "decision" ? ToyModel::Decision : ToyModel::Simple;
      const DecisionParams dp{q[0], q[1], q[2], q[3], q[4]};
      const SimpleParams sp{lambda0, lambda1};
      const auto grid = linear_grid(lo, hi, points);
      const auto rows = sweep(tm, dp, sp, param, grid, ms, EvalOptions{strat, std::nullopt});
      std::ostringstream os;
      if (w_out.format == "csv") {
        os << "model,param,value,measure,measure_value\n";
        for (const auto& r : rows)
          os << model << ',' << param << ',' << format_number(r.param) << ',' << to_string(r.measure) << ','
             << format_number(r.value) << "\n";
      } else {
        for (const auto& r : rows)
          os << "{\"model\":\"" << model << "\",\"param\":\"" << param << "\",\"value\":" << format_number(r.param)
             << ",\"measure\":\"" << to_string(r.measure) << "\",\"measure_value\":"
             << (std::isfinite(r.value) ? format_number(r.value) : "\"" + format_number(r.value) + "\"") << "}\n";
      }
      w_out.emit(os.str());
      caveat(ms, w_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  return kExitOk;
}
