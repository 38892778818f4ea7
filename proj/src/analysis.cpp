#include "dircorr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dircorr/error.hpp"
#include "dircorr/resampling.hpp"

namespace dircorr {

BuiltinDataset to_dataset(const LoadedDataset& loaded) {
  return {loaded.schema.name, to_joint(loaded.observations), loaded.observations, loaded.schema.encodings(),
          loaded.schema.partial_correlation};
}

BuiltinDataset load_dataset(const std::filesystem::path& csv, const DatasetSchema& schema) {
  return to_dataset(load_csv(csv, schema));
}

BuiltinDataset load_builtin(std::string_view name, const std::filesystem::path& data_dir) {
  if (name == "berkeley") return builtin_berkeley();
  if (name != "titanic" && name != "adult")
    throw Error(ErrorKind::InvalidArgument,
                "unknown builtin dataset '" + std::string(name) + "'; choose titanic, adult or berkeley");
  const DatasetSchema schema = load_schema(data_dir / "schemas" / (std::string(name) + ".yaml"));
  if (!schema.file) throw Error(ErrorKind::InvalidArgument, "schema for " + std::string(name) + " names no file");
  return load_dataset(*schema.file, schema);
}

std::vector<Measure> reference_measures() {
  using M = Measure;
  return {M::pcc, M::pc, M::rmi, M::rcmi, M::rpmi, M::ricmi_xy, M::ricmi_yx, M::ricmi_two, M::nace, M::race, M::rmi_do};
}

bool any_do_family(std::span<const Measure> ms) {
  return std::any_of(ms.begin(), ms.end(), [](Measure m) { return info(m).do_family; });
}

MeasureReport analyze_dataset(const BuiltinDataset& ds, std::span<const Measure> ms, const AnalyzeOptions& opts) {
  const EvalOptions eval{opts.strategy, ds.encodings};
  MeasureReport rep;
  rep.dataset = ds.name;
  rep.strategy = opts.strategy;
  rep.n = ds.observations.size();

  std::vector<Measure> active;
  for (Measure m : ms)
    if (m != Measure::pc || ds.partial_correlation) active.push_back(m);

  const MeasureValues values = evaluate_all(active, ds.joint, eval);
  std::vector<CiReport> cis;
  std::vector<Measure> ci_measures;
  if (opts.bootstrap > 0) {
    for (std::size_t i = 0; i < active.size(); ++i)
      if (!std::isnan(values.values[i])) ci_measures.push_back(active[i]);
    cis = bootstrap_cis(ds.observations, ci_measures, eval, opts.bootstrap, opts.seed, opts.threads);
  }
  std::vector<Measure> bound_measures;
  std::vector<BoundReport> bounds;
  if (opts.bounds) {
    for (Measure m : active)
      if (info(m).boundable) bound_measures.push_back(m);
    if (!bound_measures.empty())
      bounds = achievable_bounds(ds.joint, bound_measures, opts.strategy, opts.cap, opts.threads);
  }

  for (Measure m : ms) {
    ReportRow row{m, std::numeric_limits<double>::quiet_NaN(), std::nullopt, std::nullopt, std::nullopt, {}};
    const auto a = std::find(active.begin(), active.end(), m);
    if (a == active.end()) {
      row.note = "not applicable: Z is nominal";
      rep.rows.push_back(std::move(row));
      continue;
    }
    const std::size_t i = static_cast<std::size_t>(a - active.begin());
    row.value = values.values[i];
    if (!values.errors[i].empty()) row.note = values.errors[i];
    if (std::isinf(row.value)) row.note = "+infinity: KL support mismatch";
    if (const auto c = std::find(ci_measures.begin(), ci_measures.end(), m); c != ci_measures.end()) {
      const CiReport& ci = cis[static_cast<std::size_t>(c - ci_measures.begin())];
      row.ci_lower = ci.lower;
      row.ci_upper = ci.upper;
      if (ci.excluded > 0) {
        if (!row.note.empty()) row.note += "; ";
        row.note += std::to_string(ci.excluded) + " resamples excluded";
      }
    }
    if (const auto b = std::find(bound_measures.begin(), bound_measures.end(), m); b != bound_measures.end())
      row.bound = bounds[static_cast<std::size_t>(b - bound_measures.begin())].max_value;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace dircorr
