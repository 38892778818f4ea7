// Acceptance checks.  Each criterion prints its detail lines followed by a
// single "PASS cN ..." or "FAIL cN ..." line.  `--criterion N` runs one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "../oracle/oracle.hpp"
#include "../support/gen.hpp"
#include "dircorr/analysis.hpp"
#include "dircorr/bounds.hpp"
#include "dircorr/do_calculus.hpp"
#include "dircorr/error.hpp"
#include "dircorr/measures.hpp"
#include "dircorr/prob.hpp"
#include "dircorr/removal.hpp"
#include "dircorr/report.hpp"
#include "dircorr/resampling.hpp"
#include "dircorr/toy_models.hpp"

using namespace dircorr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects sub-checks; prints failures always and passes only in verbose mode.
struct Checker {
  bool verbose = true;
  int passed = 0;
  int failed = 0;

  bool check(bool ok, const std::string& what) {
    ok ? ++passed : ++failed;
    if (!ok || verbose) std::printf("  [%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    return ok;
  }
  bool near(double actual, double expected, double tol, const std::string& what) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s = %.6f (expected %.6f +- %g)", what.c_str(), actual, expected, tol);
    return check(std::isfinite(actual) && std::fabs(actual - expected) <= tol, buf);
  }
  bool ok() const { return failed == 0; }
};

MeasureReport run_reference(const BuiltinDataset& ds, bool bounds, std::uint64_t bootstrap) {
  AnalyzeOptions opts;
  opts.bounds = bounds;
  opts.bootstrap = bootstrap;
  const auto ms = reference_measures();
  return analyze_dataset(ds, ms, opts);
}

// Reference comparisons for the given fields only.
void compare_fields(Checker& c, const MeasureReport& r, const std::vector<std::string>& fields,
                    const std::vector<Measure>& only = {}) {
  const ReferenceColumn* ref = reference_for(r.dataset);
  if (!c.check(ref != nullptr, "reference column for " + r.dataset)) return;
  for (const Comparison& cmp : compare_to_reference(r, *ref)) {
    if (std::find(fields.begin(), fields.end(), cmp.field) == fields.end()) continue;
    if (!only.empty() && std::find(only.begin(), only.end(), cmp.measure) == only.end()) continue;
    char buf[256];
    const std::string name = cmp.field == "n" ? "n" : std::string(to_string(cmp.measure)) + "." + cmp.field;
    std::snprintf(buf, sizeof buf, "%s %s = %s (expected %s +- %g)", r.dataset.c_str(), name.c_str(),
                  cmp.actual ? format_number(*cmp.actual).c_str() : "missing",
                  format_number(cmp.expected).c_str(), cmp.tolerance);
    c.check(cmp.pass, buf);
  }
}

bool c1() {
  Checker c;
  const auto t0 = Clock::now();
  const BuiltinDataset ds = load_builtin("titanic");
  const MeasureReport r = run_reference(ds, true, 0);
  const double secs = seconds_since(t0);
  compare_fields(c, r, {"n", "value", "bound"});
  char buf[96];
  std::snprintf(buf, sizeof buf, "runtime %.3f s < 5 s", secs);
  c.check(secs < 5.0, buf);
  return c.ok();
}

bool c2() {
  Checker c;
  const auto t0 = Clock::now();
  const BuiltinDataset ds = load_builtin("adult");
  const MeasureReport r = run_reference(ds, false, 0);
  const double secs = seconds_since(t0);
  compare_fields(c, r, {"n", "value"}, {Measure::rcmi, Measure::nace, Measure::race, Measure::rmi_do});
  const Dist px = marginal(ds.joint, Axis::X);
  const double expected[] = {0.132, 0.540, 0.244, 0.084};
  c.check(px.size() == 4, "four education groups");
  for (std::size_t i = 0; i < std::min<std::size_t>(px.size(), 4); ++i)
    c.near(px[i], expected[i], 0.01, "p(education = " + px.alphabet().label(i) + ")");
  char buf[96];
  std::snprintf(buf, sizeof buf, "runtime %.3f s < 30 s including ingestion", secs);
  c.check(secs < 30.0, buf);
  return c.ok();
}

bool c3() {
  Checker c;
  const BuiltinDataset ds = load_builtin("berkeley");
  const MeasureReport r = run_reference(ds, true, 0);
  compare_fields(c, r, {"n", "value"}, {Measure::rmi, Measure::rcmi, Measure::rmi_do});
  const ReportRow* row = r.find(Measure::rcmi);
  if (c.check(row && row->bound && *row->bound > 0, "rcmi bound available")) {
    const double ratio = row->value / *row->bound;
    // 0.030 / 0.222 = 0.135; "about 14%" is read as 12% to 16%.
    c.near(ratio, 0.14, 0.02, "rcmi / bound");
  }
  return c.ok();
}

bool c4() {
  Checker c;
  const BuiltinDataset titanic = load_builtin("titanic");
  const BuiltinDataset berkeley = load_builtin("berkeley");
  const EvalOptions opts{};
  const CiReport t = bootstrap_ci(titanic.observations, Measure::rcmi, opts, kReferenceResamples, kReferenceSeed);
  c.near(t.lower, 0.129, 0.02, "titanic rcmi CI lower");
  c.near(t.upper, 0.186, 0.02, "titanic rcmi CI upper");
  const CiReport b = bootstrap_ci(berkeley.observations, Measure::rmi_do, opts, kReferenceResamples, kReferenceSeed);
  c.near(b.lower, 0.003, 0.02, "berkeley rmi_do CI lower");
  c.near(b.upper, 0.033, 0.02, "berkeley rmi_do CI upper");

  auto same = [](const CiReport& x, const CiReport& y) {
    if (x.values.size() != y.values.size()) return false;
    for (std::size_t i = 0; i < x.values.size(); ++i)
      if (std::memcmp(&x.values[i], &y.values[i], sizeof(double)) != 0) return false;
    return std::memcmp(&x.lower, &y.lower, sizeof(double)) == 0 && std::memcmp(&x.upper, &y.upper, sizeof(double)) == 0;
  };
  const CiReport t2 = bootstrap_ci(titanic.observations, Measure::rcmi, opts, kReferenceResamples, kReferenceSeed);
  c.check(same(t, t2), "titanic rcmi repeat is bit-identical");
  const CiReport t4 = bootstrap_ci(titanic.observations, Measure::rcmi, opts, kReferenceResamples, kReferenceSeed, 4);
  c.check(same(t, t4), "titanic rcmi with 4 threads is bit-identical");
  const CiReport b2 = bootstrap_ci(berkeley.observations, Measure::rmi_do, opts, kReferenceResamples, kReferenceSeed);
  c.check(same(b, b2), "berkeley rmi_do repeat is bit-identical");
  c.check(t.rng_algorithm == kRngAlgorithm && !t.rng_algorithm.empty(), "rng algorithm recorded: " + t.rng_algorithm);
  return c.ok();
}

bool c5() {
  Checker c;
  c.near(rmi_max_uniform(2), 0.558, 0.001, "rmi_max_uniform(2)");
  c.near(rmi_max_uniform(4), 0.741, 0.001, "rmi_max_uniform(4)");
  c.near(rmi_max_uniform(16), 0.910, 0.001, "rmi_max_uniform(16)");
  for (std::size_t k : {2u, 3u, 4u}) {
    // Uniform X and Y on k symbols, independent of each other; Z trivial.
    const double w = 1.0 / static_cast<double>(k * k);
    const Joint3 j(Alphabet::ordinal(k), Alphabet::ordinal(k), Alphabet::ordinal(1),
                   std::vector<double>(k * k, w));
    // Keep only couplings whose Y marginal is uniform as well.
    const CouplingIterator it(j);
    double best = 0.0;
    for (std::uint64_t i = 0; i < it.total(); ++i) {
      const Joint3 cpl = it.coupling_at(i);
      const Dist py = marginal(cpl, Axis::Y);
      bool uniform = true;
      for (std::size_t y = 0; y < k; ++y) uniform = uniform && std::fabs(py[y] - 1.0 / k) < 1e-12;
      if (uniform) best = std::max(best, evaluate(Measure::rmi, cpl));
    }
    c.near(best, rmi_max_uniform(k), 1e-9, "enumerated rmi max, k = " + std::to_string(k));
  }
  return c.ok();
}

bool c6() {
  Checker c;
  const Joint3 j = decision_model_joint({0.0, 1.0, 1.0, 1.0, 0.0});
  const double mi_do_expected = 0.75 * std::log2(3.0) - 1.0;
  for (SparseStrategy s : {SparseStrategy::Uniform, SparseStrategy::Marginal}) {
    const std::string tag = "strategy " + std::string(to_string(s)) + ": ";
    const EvalOptions o{s, std::nullopt};
    c.near(evaluate(Measure::pmi, j, o), 0.83, 0.01, tag + "pmi");
    c.near(evaluate(Measure::nace, j, o), 0.5, 1e-12, tag + "nace");
    c.near(evaluate(Measure::race, j, o), 0.43, 0.01, tag + "race");
    c.near(evaluate(Measure::mi_do, j, o), mi_do_expected, 1e-9, tag + "mi_do");
  }
  const EvalOptions oc{SparseStrategy::ConditionalMarginal, std::nullopt};
  for (const MeasureInfo& mi : all_measures()) {
    // Partial correlation ignores the strategy and is singular here (X = Z).
    if (!mi.direct || mi.linear) continue;
    c.near(evaluate(mi.id, j, oc), 0.0, 1e-12, "strategy c: " + std::string(mi.name));
  }
  for (SparseStrategy s : {SparseStrategy::Uniform, SparseStrategy::Marginal, SparseStrategy::ConditionalMarginal})
    c.near(evaluate(Measure::cmi, j, {s, std::nullopt}), 0.0, 1e-12, "cmi, strategy " + std::string(to_string(s)));
  return c.ok();
}

bool c7() {
  Checker c;
  c.verbose = false;
  testgen::Gen g(7);

  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = g.size(2, 8);
    const double zr = t % 3 == 0 ? 0.3 : 0.0;
    const auto p = g.simplex(n, zr), q = g.simplex(n, zr), r = g.simplex(n, zr);
    const double pq = js_distance(p, q), qp = js_distance(q, p), pr = js_distance(p, r), qr = js_distance(q, r);
    c.check(pq >= 0 && pr >= 0 && qr >= 0, "js distance non-negative, triple " + std::to_string(t));
    c.check(js_distance(p, p) <= 1e-12, "js distance identity, triple " + std::to_string(t));
    c.check(pq == qp, "js distance symmetric, triple " + std::to_string(t));
    c.check(pr <= pq + qr + 1e-12, "js triangle inequality, triple " + std::to_string(t));
  }
  std::printf("  js metric axioms on 1000 triples: %d checks failed\n", c.failed);

  const int before_cmi = c.failed;
  for (int t = 0; t < 1000; ++t) {
    const Joint3 j = g.joint_up_to(4, t % 2 == 0 ? 0.2 : 0.0);
    const double a = cmi(j), b = cmi_kl_form(j);
    c.check(std::fabs(a - b) <= 1e-10, "cmi KL form vs entropy form, joint " + std::to_string(t));
  }
  std::printf("  cmi forms on 1000 joints: %d disagreements\n", c.failed - before_cmi);

  const int before_ci = c.failed;
  for (int t = 0; t < 1000; ++t) {
    const Joint3 j = g.cond_independent(g.size(2, 4), g.size(2, 4), g.size(1, 4));
    c.check(rcmi(j) <= 1e-10, "rcmi zero on conditionally independent joint " + std::to_string(t));
  }
  std::printf("  rcmi on 1000 conditionally independent joints: %d non-zero\n", c.failed - before_ci);

  const int before_bound = c.failed;
  const auto bm = boundable_measures();
  for (int t = 0; t < 100; ++t) {
    const Joint3 j = g.joint(g.size(2, 3), g.size(2, 3), g.size(1, 3), t % 4 == 0 ? 0.25 : 0.0);
    const auto bounds = achievable_bounds(j, bm, kDefaultStrategy, kDefaultCouplingCap, 1);
    const MeasureValues v = evaluate_all(bm, j);
    for (std::size_t k = 0; k < bm.size(); ++k) {
      if (std::isnan(v.values[k])) continue;
      c.check(v.values[k] <= bounds[k].max_value + 1e-10,
              std::string(to_string(bm[k])) + " <= bound on joint " + std::to_string(t) + " (" +
                  format_number(v.values[k]) + " vs " + format_number(bounds[k].max_value) + ")");
    }
  }
  std::printf("  measure <= enumerated bound on 100 joints: %d violations\n", c.failed - before_bound);
  return c.ok();
}

bool monotone(Checker& c, const std::vector<SweepRow>& rows, std::span<const Measure> ms, const std::string& tag) {
  bool all = true;
  for (Measure m : ms) {
    double prev = -INFINITY;
    bool ok = true;
    double worst = 0.0;
    for (const SweepRow& r : rows) {
      if (r.measure != m) continue;
      if (!r.error.empty() || std::isnan(r.value)) {
        ok = false;
        continue;
      }
      if (r.value < prev - 1e-9) {
        ok = false;
        worst = std::max(worst, prev - r.value);
      }
      prev = r.value;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %s non-decreasing (largest drop %.3g)", tag.c_str(),
                  std::string(to_string(m)).c_str(), worst);
    all = c.check(ok, buf) && all;
  }
  return all;
}

bool c8() {
  Checker c;
  const std::vector<Measure> simple_ms = {Measure::cmi,       Measure::rcmi,     Measure::rpmi,
                                          Measure::ricmi_xy,  Measure::ricmi_yx, Measure::ricmi_two,
                                          Measure::nace,      Measure::race,     Measure::rmi_do};
  const auto grid = linear_grid(0.0, 1.0, 21);
  for (double l0 : {0.0, 0.5, 0.99}) {
    const auto rows = sweep(ToyModel::Simple, {}, {l0, 0.0}, "lambda1", grid, simple_ms);
    char tag[64];
    std::snprintf(tag, sizeof tag, "simple lambda0=%g:", l0);
    monotone(c, rows, simple_ms, tag);
  }
  // Documented fixed set: q0 = 0, q1 = q2 = 0.5, q4 = 0, q3 swept over [0, 1].
  const std::vector<Measure> decision_ms = {Measure::rcmi, Measure::ricmi_two, Measure::nace, Measure::race,
                                            Measure::rmi_do};
  const auto rows = sweep(ToyModel::Decision, {0.0, 0.5, 0.5, 0.0, 0.0}, {}, "q3", grid, decision_ms);
  monotone(c, rows, decision_ms, "decision q0=0 q1=q2=0.5 q4=0:");
  return c.ok();
}

bool c9() {
  Checker c;
  c.verbose = false;
  const auto& ms = all_measures();
  std::vector<Measure> ids;
  for (const auto& m : ms) ids.push_back(m.id);

  std::size_t joints = 0, comparisons = 0, undefined = 0;
  double worst = 0.0;
  std::string worst_at;
  // Compositions of 8 into 8 parts: every (2,2,2) joint on the 1/8 grid.
  std::vector<int> k(8, 0);
  std::function<void(int, int)> rec = [&](int cell, int left) {
    if (cell == 7) {
      k[7] = left;
      ++joints;
      oracle::Table t{2, 2, 2, {}};
      std::vector<double> probs;
      for (int v : k) {
        t.p.emplace_back(v, 8);
        probs.push_back(v / 8.0);
      }
      const Joint3 j(Alphabet::ordinal(2), Alphabet::ordinal(2), Alphabet::ordinal(2), probs);
      for (SparseStrategy s : {SparseStrategy::Uniform, SparseStrategy::Marginal, SparseStrategy::ConditionalMarginal}) {
        const char sc = s == SparseStrategy::Uniform ? 'a' : s == SparseStrategy::Marginal ? 'b' : 'c';
        const auto expected = oracle::evaluate(t, sc);
        const MeasureValues got = evaluate_all(ids, j, {s, std::nullopt});
        for (std::size_t i = 0; i < ids.size(); ++i) {
          ++comparisons;
          const std::string name(to_string(ids[i]));
          const auto it = expected.find(name);
          std::string where = name + " strategy " + sc + " at [";
          for (int v : k) where += std::to_string(v);
          where += "]/8";
          if (!c.check(it != expected.end(), "oracle covers " + name)) continue;
          const double a = got.values[i];
          if (!it->second) {
            ++undefined;
            c.check(std::isnan(a), where + ": oracle undefined, library " + format_number(a));
            continue;
          }
          const long double e = *it->second;
          if (std::isinf(e) || std::isinf(a)) {
            c.check(std::isinf(e) && std::isinf(a) && (e > 0) == (a > 0),
                    where + ": " + format_number(a) + " vs oracle " + format_number(static_cast<double>(e)));
            continue;
          }
          const double d = std::fabs(static_cast<double>(static_cast<long double>(a) - e));
          if (std::isnan(a) || d > worst) {
            worst = std::isnan(a) ? INFINITY : d;
            worst_at = where;
          }
          c.check(!std::isnan(a) && d <= 1e-10, where + ": " + format_number(a) + " vs oracle " +
                                                    format_number(static_cast<double>(e)));
        }
      }
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[cell] = v;
      rec(cell + 1, left - v);
    }
  };
  rec(0, 8);
  std::printf("  %zu joints, %zu comparisons (%zu undefined in both), largest difference %.3g at %s\n", joints,
              comparisons, undefined, worst, worst_at.c_str());
  c.check(joints == 6435, "6435 grid joints enumerated");
  return c.ok();
}

struct Criterion {
  int id;
  const char* title;
  bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "titanic values, bounds and runtime", c1},
    {2, "adult values, education marginals and runtime", c2},
    {3, "berkeley values and rcmi/bound ratio", c3},
    {4, "bootstrap intervals and determinism", c4},
    {5, "closed-form uniform bound", c5},
    {6, "sparse special case", c6},
    {7, "property suite", c7},
    {8, "monotonicity sweeps", c8},
    {9, "oracle equivalence on the 1/8 grid", c9},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0, ran = 0;
  for (const Criterion& cr : kCriteria) {
    if (only != 0 && cr.id != only) continue;
    ++ran;
    std::printf("c%d: %s\n", cr.id, cr.title);
    bool ok = false;
    const auto t0 = Clock::now();
    try {
      ok = cr.run();
    } catch (const std::exception& e) {
      std::printf("  [FAIL] exception: %s\n", e.what());
    }
    std::printf("%s c%d %s (%.2f s)\n", ok ? "PASS" : "FAIL", cr.id, cr.title, seconds_since(t0));
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
