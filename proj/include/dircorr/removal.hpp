#pragma once

// Measures that remove the direct X-Y correlation from p(x,y,z) and report
// how far the reconstruction moved: CMI, PMI, ICMI and their
// Jensen-Shannon (regularized) counterparts.

#include "dircorr/prob.hpp"
#include "dircorr/strategy.hpp"

namespace dircorr {

// q(x,y,z) = p(x|z) p(y|z) p(z).  Preserves p(x,z) and p(y,z).
Joint3 reconstruct_q_cmi(const Joint3& j);

// Conditional mutual information I(X;Y|Z) in bits (entropy form).
double cmi(const Joint3& j);
// KL(p || q_cmi); equal to cmi() up to rounding.
double cmi_kl_form(const Joint3& j);
double cmi_js(const Joint3& j);
double rcmi(const Joint3& j);

struct PmiReconstruction {
  Joint3 q;
  // Total mass of q'(x|z) q'(y|z) p(z) before per-stratum renormalization.
  double pre_normalization_mass = 1.0;
  std::size_t fill_count = 0;
};

// q'(x,y,z) = q(x|z) q(y|z) p(z) with q(x|z) = sum_y p(x|y,z) p(y) and
// q(y|z) = sum_x p(y|x,z) p(x); undefined inner conditionals are filled per
// strategy, then each stratum is renormalized.
PmiReconstruction reconstruct_q_pmi(const Joint3& j, SparseStrategy s);

// KL(p || q'); may be +infinity.
double pmi(const Joint3& j, SparseStrategy s);
double rpmi(const Joint3& j, SparseStrategy s);

enum class Direction { XtoY, YtoX };

struct IcmiPair {
  Joint3 p1;  // p(y|x,z) p(x) p(z)   (X->Y)
  Joint3 p2;  // p(x) p(y,z)
};
// For YtoX the pair is p(x|y,z) p(y) p(z) and p(y) p(x,z), laid out in the
// original (x, y, z) order.
IcmiPair icmi_reconstruction(const Joint3& j, Direction d, SparseStrategy s);

double icmi_oneway(const Joint3& j, Direction d, SparseStrategy s);

struct IcmiValues {
  double xy = 0.0;
  double yx = 0.0;
  double two_way = 0.0;
};
IcmiValues icmi(const Joint3& j, SparseStrategy s);
IcmiValues ricmi(const Joint3& j, SparseStrategy s);

struct RemovalReport {
  double cmi = 0.0;
  double cmi_js = 0.0;
  double rcmi = 0.0;
  double pmi = 0.0;
  double rpmi = 0.0;
  double icmi_xy = 0.0;
  double icmi_yx = 0.0;
  double ricmi_xy = 0.0;
  double ricmi_yx = 0.0;
  double ricmi_two = 0.0;
  double pmi_pre_normalization_mass = 1.0;
  SparseStrategy strategy = kDefaultStrategy;
};

RemovalReport removal_report(const Joint3& j, SparseStrategy s = kDefaultStrategy);

}  // namespace dircorr
