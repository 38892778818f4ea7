#pragma once

// Closed-form generators for the two binary decision-making models and the
// Markov-equivalent pair sharing p = 1/2 on x = y = z.

#include <string>
#include <vector>

#include "dircorr/measures.hpp"
#include "dircorr/prob.hpp"

namespace dircorr {

// p(z) = (1 + q0)/2 at z = 0, p(x|z) keeps x = z with (1 + q1)/2,
// p(y1|x) keeps y1 = x with (1 + q3)/2, p(y2|z) keeps y2 = z with
// (1 + q2)/2.  Y copies y1 when y1 == y2, else Y = 0 with (1 + q4)/2.
struct DecisionParams {
  double q0 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double q4 = 0.0;

  void validate() const;  // InvalidArgument outside [-1, 1]
};

// lambda0 in [-1, 1] couples X to Z, lambda1 in [0, 1] is the share of Y
// following X when X and Z disagree.
struct SimpleParams {
  double lambda0 = 0.0;
  double lambda1 = 0.0;

  void validate() const;
};

Joint3 decision_model_joint(const DecisionParams& p);
Joint3 simple_model_joint(const SimpleParams& p);

struct NamedJoint {
  std::string name;
  std::string description;
  Joint3 joint;
};

// Two causal models, X <- Z with X -> Y versus X <- Z -> Y, both
// deterministic, that produce the same observational joint.
std::vector<NamedJoint> markov_equivalent_pair();

enum class ToyModel { Decision, Simple };

struct SweepRow {
  double param = 0.0;
  Measure measure;
  double value = 0.0;
  std::string error;  // set when the measure is undefined at this point
};

// `sweep` names the parameter varied ("q0".."q4" for the decision model,
// "lambda0"/"lambda1" for the simple one); the other fields of the params
// struct hold the fixed values.  One row per (grid point, measure).
std::vector<SweepRow> sweep(ToyModel model, const DecisionParams& decision,
                            const SimpleParams& simple, const std::string& sweep_param,
                            std::span<const double> grid, std::span<const Measure> measures,
                            const EvalOptions& opts = {});

// `points` evenly spaced values on [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

}  // namespace dircorr
