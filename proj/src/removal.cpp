#include "dircorr/removal.hpp"

#include <algorithm>
#include <cmath>

namespace dircorr {

Joint3 reconstruct_q_cmi(const Joint3& j) {
  const Joint2 pxz = marginal(j, Axis::X, Axis::Z);
  const Joint2 pyz = marginal(j, Axis::Y, Axis::Z);
  const Dist pz = marginal(j, Axis::Z);
  std::vector<double> q(j.probs().size(), 0.0);
  for (std::size_t z = 0; z < j.dz(); ++z) {
    if (pz[z] <= 0.0) continue;
    for (std::size_t x = 0; x < j.dx(); ++x)
      for (std::size_t y = 0; y < j.dy(); ++y)
        q[j.index(x, y, z)] = pxz(x, z) * pyz(y, z) / pz[z];
  }
  return Joint3::normalized(j.x_alphabet(), j.y_alphabet(), j.z_alphabet(), std::move(q));
}

double cmi(const Joint3& j) {
  const double v = entropy(marginal(j, Axis::X, Axis::Z)) + entropy(marginal(j, Axis::Y, Axis::Z)) -
                   entropy(j) - entropy(marginal(j, Axis::Z));
  return std::max(0.0, v);
}

double cmi_kl_form(const Joint3& j) { return kl_divergence(j, reconstruct_q_cmi(j)); }

double cmi_js(const Joint3& j) { return js_divergence(j, reconstruct_q_cmi(j)); }

double rcmi(const Joint3& j) { return std::sqrt(cmi_js(j)); }

PmiReconstruction reconstruct_q_pmi(const Joint3& j, SparseStrategy s) {
  const FilledConditional y_given_xz = filled_y_given_xz(j, s);
  const FilledConditional x_given_yz = filled_x_given_yz(j, s);
  const Dist px = marginal(j, Axis::X);
  const Dist py = marginal(j, Axis::Y);
  const Dist pz = marginal(j, Axis::Z);

  std::vector<double> q(j.probs().size(), 0.0);
  std::vector<double> qx(j.dx());
  std::vector<double> qy(j.dy());
  double raw_mass = 0.0;
  for (std::size_t z = 0; z < j.dz(); ++z) {
    if (pz[z] <= 0.0) continue;
    for (std::size_t x = 0; x < j.dx(); ++x) {
      double acc = 0.0;
      for (std::size_t y = 0; y < j.dy(); ++y) acc += x_given_yz(y, z, x) * py[y];
      qx[x] = acc;
    }
    for (std::size_t y = 0; y < j.dy(); ++y) {
      double acc = 0.0;
      for (std::size_t x = 0; x < j.dx(); ++x) acc += y_given_xz(x, z, y) * px[x];
      qy[y] = acc;
    }
    double sx = 0.0, sy = 0.0;
    for (double v : qx) sx += v;
    for (double v : qy) sy += v;
    raw_mass += sx * sy * pz[z];
    for (std::size_t x = 0; x < j.dx(); ++x)
      for (std::size_t y = 0; y < j.dy(); ++y)
        q[j.index(x, y, z)] = (qx[x] / sx) * (qy[y] / sy) * pz[z];
  }
  return {Joint3::normalized(j.x_alphabet(), j.y_alphabet(), j.z_alphabet(), std::move(q)),
          raw_mass, y_given_xz.fill_count + x_given_yz.fill_count};
}

double pmi(const Joint3& j, SparseStrategy s) {
  return kl_divergence(j, reconstruct_q_pmi(j, s).q);
}

double rpmi(const Joint3& j, SparseStrategy s) {
  return std::sqrt(js_divergence(j, reconstruct_q_pmi(j, s).q));
}

namespace {

// p1 = t(y|x,z) p(x) p(z), p2 = p(x) p(y,z), computed on a table whose first
// axis is the "cause" side.
IcmiPair icmi_forward(const Joint3& j, SparseStrategy s) {
  const FilledConditional y_given_xz = filled_y_given_xz(j, s);
  const Dist px = marginal(j, Axis::X);
  const Dist pz = marginal(j, Axis::Z);
  const Joint2 pyz = marginal(j, Axis::Y, Axis::Z);
  std::vector<double> p1(j.probs().size());
  std::vector<double> p2(j.probs().size());
  for (std::size_t x = 0; x < j.dx(); ++x)
    for (std::size_t y = 0; y < j.dy(); ++y)
      for (std::size_t z = 0; z < j.dz(); ++z) {
        p1[j.index(x, y, z)] = y_given_xz(x, z, y) * px[x] * pz[z];
        p2[j.index(x, y, z)] = px[x] * pyz(y, z);
      }
  return {Joint3::normalized(j.x_alphabet(), j.y_alphabet(), j.z_alphabet(), std::move(p1)),
          Joint3::normalized(j.x_alphabet(), j.y_alphabet(), j.z_alphabet(), std::move(p2))};
}

}  // namespace

IcmiPair icmi_reconstruction(const Joint3& j, Direction d, SparseStrategy s) {
  if (d == Direction::XtoY) return icmi_forward(j, s);
  IcmiPair swapped = icmi_forward(j.swap_xy(), s);
  return {swapped.p1.swap_xy(), swapped.p2.swap_xy()};
}

double icmi_oneway(const Joint3& j, Direction d, SparseStrategy s) {
  const IcmiPair pr = icmi_reconstruction(j, d, s);
  return kl_divergence(pr.p1, pr.p2);
}

IcmiValues icmi(const Joint3& j, SparseStrategy s) {
  IcmiValues v;
  v.xy = icmi_oneway(j, Direction::XtoY, s);
  v.yx = icmi_oneway(j, Direction::YtoX, s);
  v.two_way = 0.5 * (v.xy + v.yx);
  return v;
}

IcmiValues ricmi(const Joint3& j, SparseStrategy s) {
  IcmiValues v;
  const IcmiPair f = icmi_reconstruction(j, Direction::XtoY, s);
  const IcmiPair b = icmi_reconstruction(j, Direction::YtoX, s);
  v.xy = std::sqrt(js_divergence(f.p1, f.p2));
  v.yx = std::sqrt(js_divergence(b.p1, b.p2));
  v.two_way = 0.5 * (v.xy + v.yx);
  return v;
}

RemovalReport removal_report(const Joint3& j, SparseStrategy s) {
  RemovalReport r;
  r.strategy = s;
  r.cmi = cmi(j);
  r.cmi_js = cmi_js(j);
  r.rcmi = std::sqrt(r.cmi_js);
  const PmiReconstruction pm = reconstruct_q_pmi(j, s);
  r.pmi = kl_divergence(j, pm.q);
  r.rpmi = std::sqrt(js_divergence(j, pm.q));
  r.pmi_pre_normalization_mass = pm.pre_normalization_mass;
  const IcmiValues kl = icmi(j, s);
  r.icmi_xy = kl.xy;
  r.icmi_yx = kl.yx;
  const IcmiValues js = ricmi(j, s);
  r.ricmi_xy = js.xy;
  r.ricmi_yx = js.yx;
  r.ricmi_two = js.two_way;
  return r;
}

}  // namespace dircorr
