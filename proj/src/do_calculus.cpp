#include "dircorr/do_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dircorr/error.hpp"
#include "dircorr/total_corr.hpp"

namespace dircorr {

DoConditional::DoConditional(Alphabet x, Alphabet y, std::vector<double> rows,
                             SparseStrategy strategy, std::size_t fill_count)
    : x_(std::move(x)),
      y_(std::move(y)),
      rows_(std::move(rows)),
      strategy_(strategy),
      fill_count_(fill_count) {
  if (rows_.size() != x_.size() * y_.size())
    throw Error(ErrorKind::ShapeMismatch, "DoConditional rows do not match alphabets");
  for (std::size_t i = 0; i < dx(); ++i) {
    double s = 0.0;
    for (double v : row(i)) {
      if (!(v >= 0.0)) throw Error(ErrorKind::InvalidArgument, "negative do-conditional entry");
      s += v;
    }
    if (std::abs(s - 1.0) > kNormTolerance)
      throw Error(ErrorKind::InvalidArgument, "do-conditional row does not sum to 1");
  }
}

DoConditional do_conditional(const Joint3& j, SparseStrategy s) {
  const FilledConditional y_given_xz = filled_y_given_xz(j, s);
  const Dist pz = marginal(j, Axis::Z);
  std::vector<double> rows(j.dx() * j.dy(), 0.0);
  for (std::size_t x = 0; x < j.dx(); ++x) {
    double total = 0.0;
    for (std::size_t y = 0; y < j.dy(); ++y) {
      double acc = 0.0;
      for (std::size_t z = 0; z < j.dz(); ++z) acc += y_given_xz(x, z, y) * pz[z];
      rows[x * j.dy() + y] = acc;
      total += acc;
    }
    for (std::size_t y = 0; y < j.dy(); ++y) rows[x * j.dy() + y] /= total;
  }
  return DoConditional(j.x_alphabet(), j.y_alphabet(), std::move(rows), s, y_given_xz.fill_count);
}

namespace {

template <typename Kernel>
PairMax max_over_pairs(const DoConditional& dc, Kernel kernel) {
  if (dc.dx() < 2) throw Error(ErrorKind::SingleCategory, "X has a single category");
  PairMax best{-1.0, 0, 0};
  for (std::size_t a = 0; a < dc.dx(); ++a)
    for (std::size_t b = 0; b < dc.dx(); ++b) {
      if (a == b) continue;
      const double v = kernel(dc.row(a), dc.row(b));
      if (v > best.value) best = {v, a, b};
    }
  return best;
}

}  // namespace

PairMax ace_pair(const DoConditional& dc) {
  return max_over_pairs(dc, [](std::span<const double> p, std::span<const double> q) {
    double m = 0.0;
    for (std::size_t y = 0; y < p.size(); ++y) m = std::max(m, p[y] - q[y]);
    return std::min(m, 1.0);
  });
}

PairMax nace_pair(const DoConditional& dc) {
  return max_over_pairs(dc, [](std::span<const double> p, std::span<const double> q) {
    return total_variation(p, q);
  });
}

PairMax ace_kl_pair(const DoConditional& dc) {
  return max_over_pairs(dc, [](std::span<const double> p, std::span<const double> q) {
    return kl_divergence(p, q);
  });
}

PairMax race_pair(const DoConditional& dc) {
  return max_over_pairs(dc, [](std::span<const double> p, std::span<const double> q) {
    return js_distance(p, q);
  });
}

double ace(const DoConditional& dc) { return ace_pair(dc).value; }
double nace(const DoConditional& dc) { return nace_pair(dc).value; }
double ace_kl(const DoConditional& dc) { return ace_kl_pair(dc).value; }
double race(const DoConditional& dc) { return race_pair(dc).value; }

DoJoint do_joint(const Joint3& j, const DoConditional& dc) {
  const Dist px = marginal(j, Axis::X);
  std::vector<double> p(dc.dx() * dc.dy());
  std::vector<double> py(dc.dy(), 0.0);
  for (std::size_t x = 0; x < dc.dx(); ++x)
    for (std::size_t y = 0; y < dc.dy(); ++y) {
      p[x * dc.dy() + y] = dc(x, y) * px[x];
      py[y] += p[x * dc.dy() + y];
    }
  double total = 0.0;
  for (double v : py) total += v;
  for (double& v : py) v /= total;
  return {Joint2(dc.x_alphabet(), dc.y_alphabet(), std::move(p)), px,
          Dist(dc.y_alphabet(), std::move(py))};
}

DoJoint do_joint(const Joint3& j, SparseStrategy s) { return do_joint(j, do_conditional(j, s)); }

double mi_do(const DoJoint& dj) {
  const double hy = entropy(dj.py);
  if (hy <= 0.0) return 0.0;
  const double mi = entropy(dj.px) + entropy(dj.py) - entropy(dj.joint);
  return std::clamp(mi / hy, 0.0, 1.0);
}

double rmi_do(const DoJoint& dj) { return regularized_mi(dj.joint); }

}  // namespace dircorr
