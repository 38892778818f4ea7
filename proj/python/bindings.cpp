#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>
#include <vector>

#include "dircorr/analysis.hpp"
#include "dircorr/bounds.hpp"
#include "dircorr/error.hpp"
#include "dircorr/measures.hpp"
#include "dircorr/report.hpp"
#include "dircorr/resampling.hpp"
#include "dircorr/toy_models.hpp"

namespace py = pybind11;
using namespace dircorr;

namespace {

using Shape = std::array<std::size_t, 3>;

Joint3 make_joint(const std::vector<double>& flat, const Shape& shape) {
  return Joint3::normalized(Alphabet::ordinal(shape[0]), Alphabet::ordinal(shape[1]),
                            Alphabet::ordinal(shape[2]), flat);
}

SparseStrategy strategy_of(const std::string& s) {
  const auto v = parse_strategy(s);
  if (!v) throw Error(ErrorKind::InvalidArgument, "unknown strategy '" + s + "'; expected a, b or c");
  return *v;
}

Measure measure_of(const std::string& name) {
  const auto m = parse_measure(name);
  if (!m) throw Error(ErrorKind::InvalidArgument, "unknown measure '" + name + "'; valid ids: " + valid_measure_names());
  return *m;
}

std::vector<Measure> measures_of(const std::vector<std::string>& names) {
  if (names.empty()) {
    std::vector<Measure> all;
    for (const auto& i : all_measures()) all.push_back(i.id);
    return all;
  }
  std::vector<Measure> out;
  for (const auto& n : names) out.push_back(measure_of(n));
  return out;
}

py::tuple joint_out(const Joint3& j) {
  const auto p = j.probs();
  return py::make_tuple(std::vector<double>(p.begin(), p.end()), py::make_tuple(j.dx(), j.dy(), j.dz()));
}

py::dict ci_dict(const CiReport& r) {
  py::dict d;
  d["point"] = r.point;
  d["lower"] = r.lower;
  d["upper"] = r.upper;
  d["resamples"] = r.resamples;
  d["seed"] = r.seed;
  d["excluded"] = r.excluded;
  d["rng_algorithm"] = r.rng_algorithm;
  return d;
}

py::list report_rows(const MeasureReport& r) {
  py::list rows;
  for (const ReportRow& row : r.rows) {
    py::dict d;
    d["measure"] = std::string(to_string(row.measure));
    d["value"] = row.value;
    d["ci_lower"] = row.ci_lower ? py::cast(*row.ci_lower) : py::none();
    d["ci_upper"] = row.ci_upper ? py::cast(*row.ci_upper) : py::none();
    d["bound"] = row.bound ? py::cast(*row.bound) : py::none();
    d["note"] = row.note;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_dircorr, m) {
  m.doc() = "Direct-correlation measures for three categorical variables";

  // Kept alive for the life of the interpreter.
  static PyObject* error_type = py::exception<Error>(m, "DircorrError").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("measure_names", [] {
    std::vector<std::string> out;
    for (const auto& i : all_measures()) out.emplace_back(i.name);
    return out;
  });

  m.def(
      "evaluate",
      [](const std::vector<double>& flat, const Shape& shape, const std::string& measure, const std::string& strategy) {
        return evaluate(measure_of(measure), make_joint(flat, shape), {strategy_of(strategy), std::nullopt});
      },
      py::arg("flat"), py::arg("shape"), py::arg("measure"), py::arg("strategy") = "b");

  m.def(
      "evaluate_all",
      [](const std::vector<double>& flat, const Shape& shape, const std::vector<std::string>& names,
         const std::string& strategy) {
        const auto ms = measures_of(names);
        const MeasureValues v = evaluate_all(ms, make_joint(flat, shape), {strategy_of(strategy), std::nullopt});
        py::dict out;
        for (std::size_t i = 0; i < ms.size(); ++i) out[py::str(std::string(to_string(ms[i])))] = v.values[i];
        return out;
      },
      py::arg("flat"), py::arg("shape"), py::arg("measures") = std::vector<std::string>{},
      py::arg("strategy") = "b");

  m.def(
      "achievable_bound",
      [](const std::vector<double>& flat, const Shape& shape, const std::string& measure, const std::string& strategy,
         std::uint64_t cap) {
        const Joint3 j = make_joint(flat, shape);
        const Measure m = measure_of(measure);
        const SparseStrategy s = strategy_of(strategy);
        BoundReport r;
        {
          py::gil_scoped_release release;
          r = achievable_bound(j, m, s, cap, 1);
        }
        py::dict d;
        d["max_value"] = r.max_value;
        d["argmax_index"] = r.argmax_index;
        d["argmax_function"] = r.argmax_function;
        d["couplings_examined"] = r.couplings_examined;
        return d;
      },
      py::arg("flat"), py::arg("shape"), py::arg("measure"), py::arg("strategy") = "b",
      py::arg("cap") = kDefaultCouplingCap);

  m.def("rmi_max_uniform", &rmi_max_uniform, py::arg("k"));

  m.def(
      "bootstrap_ci",
      [](const std::vector<std::uint64_t>& counts, const Shape& shape, const std::string& measure,
         std::uint64_t resamples, std::uint64_t seed, const std::string& strategy, double level) {
        const ObservationTable obs = from_joint_counts(Alphabet::ordinal(shape[0]), Alphabet::ordinal(shape[1]),
                                                       Alphabet::ordinal(shape[2]), counts);
        const Measure m = measure_of(measure);
        const EvalOptions opts{strategy_of(strategy), std::nullopt};
        CiReport r;
        {
          py::gil_scoped_release release;
          r = bootstrap_ci(obs, m, opts, resamples, seed, 1, level);
        }
        return ci_dict(r);
      },
      py::arg("counts"), py::arg("shape"), py::arg("measure"), py::arg("resamples") = kReferenceResamples,
      py::arg("seed") = kReferenceSeed, py::arg("strategy") = "b", py::arg("level") = 0.95);

  m.def(
      "analyze",
      [](const std::string& builtin, const std::string& data, const std::string& schema,
         const std::vector<std::string>& names, std::uint64_t bootstrap, std::uint64_t seed, bool bounds,
         const std::string& strategy, const std::string& data_dir) {
        BuiltinDataset ds = [&] {
          if (!builtin.empty()) return data_dir.empty() ? load_builtin(builtin) : load_builtin(builtin, data_dir);
          if (data.empty() || schema.empty())
            throw Error(ErrorKind::InvalidArgument, "pass either builtin or both data and schema");
          return load_dataset(data, load_schema(schema));
        }();
        std::vector<Measure> ms = names.empty() ? reference_measures() : measures_of(names);
        AnalyzeOptions opts;
        opts.bootstrap = bootstrap;
        opts.seed = seed;
        opts.bounds = bounds;
        opts.strategy = strategy_of(strategy);
        const MeasureReport r = analyze_dataset(ds, ms, opts);
        py::dict d;
        d["dataset"] = r.dataset;
        d["strategy"] = std::string(to_string(r.strategy));
        d["n"] = r.n;
        d["rows"] = report_rows(r);
        d["csv"] = to_csv({r});
        return d;
      },
      py::arg("builtin") = "", py::arg("data") = "", py::arg("schema") = "",
      py::arg("measures") = std::vector<std::string>{}, py::arg("bootstrap") = 0, py::arg("seed") = kReferenceSeed,
      py::arg("bounds") = false, py::arg("strategy") = "b", py::arg("data_dir") = "");

  m.def(
      "decision_model_joint",
      [](double q0, double q1, double q2, double q3, double q4) {
        return joint_out(decision_model_joint({q0, q1, q2, q3, q4}));
      },
      py::arg("q0") = 0.0, py::arg("q1") = 0.0, py::arg("q2") = 0.0, py::arg("q3") = 0.0, py::arg("q4") = 0.0);
  m.def(
      "simple_model_joint",
      [](double lambda0, double lambda1) { return joint_out(simple_model_joint({lambda0, lambda1})); },
      py::arg("lambda0") = 0.0, py::arg("lambda1") = 0.0);
}
