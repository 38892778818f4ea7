#include "dircorr/toy_models.hpp"

#include <cmath>

#include "dircorr/error.hpp"

namespace dircorr {

namespace {

void check_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi))
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " = " + std::to_string(v) +
                                                " is outside [" + std::to_string(lo) + ", " +
                                                std::to_string(hi) + "]");
}

// Probability that a binary child equals `parent` with strength q.
double keep(double q, int child, int parent) { return child == parent ? (1 + q) / 2 : (1 - q) / 2; }

Alphabet binary() { return Alphabet::ordinal(2); }

}  // namespace

void DecisionParams::validate() const {
  check_range(q0, -1, 1, "q0");
  check_range(q1, -1, 1, "q1");
  check_range(q2, -1, 1, "q2");
  check_range(q3, -1, 1, "q3");
  check_range(q4, -1, 1, "q4");
}

void SimpleParams::validate() const {
  check_range(lambda0, -1, 1, "lambda0");
  check_range(lambda1, 0, 1, "lambda1");
}

Joint3 decision_model_joint(const DecisionParams& p) {
  p.validate();
  std::vector<double> w(8, 0.0);
  for (int z = 0; z < 2; ++z) {
    const double pz = z == 0 ? (1 + p.q0) / 2 : (1 - p.q0) / 2;
    for (int x = 0; x < 2; ++x)
      for (int y1 = 0; y1 < 2; ++y1)
        for (int y2 = 0; y2 < 2; ++y2)
          for (int y = 0; y < 2; ++y) {
            const double py = y1 == y2 ? (y == y1 ? 1.0 : 0.0) : keep(p.q4, y, 0);
            w[(x * 2 + y) * 2 + z] += py * keep(p.q3, y1, x) * keep(p.q2, y2, z) * keep(p.q1, x, z) * pz;
          }
  }
  return Joint3::normalized(binary(), binary(), binary(), std::move(w));
}

Joint3 simple_model_joint(const SimpleParams& p) {
  p.validate();
  const double l0 = p.lambda0;
  const double l1 = p.lambda1;
  std::vector<double> w(8);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        double v;
        if (x == z) v = y == z ? (1 + l0) / 4 : 0.0;
        else v = y == x ? (1 - l0) * l1 / 4 : (1 - l0) * (1 - l1) / 4;
        w[(x * 2 + y) * 2 + z] = v;
      }
  return Joint3::normalized(binary(), binary(), binary(), std::move(w));
}

std::vector<NamedJoint> markov_equivalent_pair() {
  std::vector<double> p(8, 0.0);
  p[0] = 0.5;  // x = y = z = 0
  p[7] = 0.5;  // x = y = z = 1
  const Joint3 j(binary(), binary(), binary(), p);
  return {
      {"model_A", "Z -> X -> Y with X = Z and Y = X", j},
      {"model_B", "X <- Z -> Y with X = Z and Y = Z", j},
  };
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points == 0) throw Error(ErrorKind::InvalidArgument, "grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  g.back() = hi;
  return g;
}

std::vector<SweepRow> sweep(ToyModel model, const DecisionParams& decision,
                            const SimpleParams& simple, const std::string& sweep_param,
                            std::span<const double> grid, std::span<const Measure> measures,
                            const EvalOptions& opts) {
  std::vector<SweepRow> rows;
  for (double v : grid) {
    Joint3 j = [&] {
      if (model == ToyModel::Decision) {
        DecisionParams d = decision;
        if (sweep_param == "q0") d.q0 = v;
        else if (sweep_param == "q1") d.q1 = v;
        else if (sweep_param == "q2") d.q2 = v;
        else if (sweep_param == "q3") d.q3 = v;
        else if (sweep_param == "q4") d.q4 = v;
        else throw Error(ErrorKind::InvalidArgument, "decision model has no parameter '" + sweep_param + "'");
        return decision_model_joint(d);
      }
      SimpleParams s = simple;
      if (sweep_param == "lambda0") s.lambda0 = v;
      else if (sweep_param == "lambda1") s.lambda1 = v;
      else throw Error(ErrorKind::InvalidArgument, "simple model has no parameter '" + sweep_param + "'");
      return simple_model_joint(s);
    }();
    const MeasureValues mv = evaluate_all(measures, j, opts);
    for (std::size_t k = 0; k < measures.size(); ++k)
      rows.push_back({v, measures[k], mv.values[k], mv.errors[k]});
  }
  return rows;
}

}  // namespace dircorr
