#include "dircorr/total_corr.hpp"

#include <algorithm>
#include <cmath>

#include "dircorr/error.hpp"

namespace dircorr {

NumericEncoding::NumericEncoding(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::InvalidArgument, "encoding must be non-empty");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "encoding values must be finite");
}

NumericEncoding NumericEncoding::ordinal(std::size_t size) {
  std::vector<double> v(size);
  for (std::size_t i = 0; i < size; ++i) v[i] = static_cast<double>(i);
  return NumericEncoding(std::move(v));
}

NumericEncoding NumericEncoding::negated() const {
  std::vector<double> v = values_;
  for (double& e : v) e = -e;
  return NumericEncoding(std::move(v));
}

Encodings Encodings::ordinal(const Joint3& j) {
  return {NumericEncoding::ordinal(j.dx()), NumericEncoding::ordinal(j.dy()),
          NumericEncoding::ordinal(j.dz())};
}

double pcc(const Joint2& j, const NumericEncoding& first, const NumericEncoding& second) {
  if (first.size() != j.rows() || second.size() != j.cols())
    throw Error(ErrorKind::ShapeMismatch, "encoding does not match alphabet size");
  const Dist pa = j.marginal_first();
  const Dist pb = j.marginal_second();
  double ma = 0.0, ma2 = 0.0, mb = 0.0, mb2 = 0.0, mab = 0.0;
  for (std::size_t a = 0; a < j.rows(); ++a) {
    ma += first[a] * pa[a];
    ma2 += first[a] * first[a] * pa[a];
  }
  for (std::size_t b = 0; b < j.cols(); ++b) {
    mb += second[b] * pb[b];
    mb2 += second[b] * second[b] * pb[b];
  }
  for (std::size_t a = 0; a < j.rows(); ++a)
    for (std::size_t b = 0; b < j.cols(); ++b) mab += first[a] * second[b] * j(a, b);
  const double va = ma2 - ma * ma;
  const double vb = mb2 - mb * mb;
  // Relative threshold: a constant variable leaves only rounding in ma2 - ma^2.
  const double eps = 1e-12;
  if (va <= eps * std::max(1.0, ma2) || vb <= eps * std::max(1.0, mb2))
    throw Error(ErrorKind::DegenerateVariable, "a variable has zero variance");
  return std::clamp((mab - ma * mb) / std::sqrt(va * vb), -1.0, 1.0);
}

double partial_correlation(const Joint3& j, const Encodings& enc) {
  const double rxy = pcc(marginal(j, Axis::X, Axis::Y), enc.x, enc.y);
  const double rxz = pcc(marginal(j, Axis::X, Axis::Z), enc.x, enc.z);
  const double ryz = pcc(marginal(j, Axis::Y, Axis::Z), enc.y, enc.z);
  const double den = (1.0 - rxz * rxz) * (1.0 - ryz * ryz);
  if (den <= 1e-12) throw Error(ErrorKind::SingularDenominator, "a conditioning correlation has magnitude 1");
  return std::clamp((rxy - rxz * ryz) / std::sqrt(den), -1.0, 1.0);
}

double mutual_information(const Joint2& j) {
  const double mi = entropy(j.marginal_first()) + entropy(j.marginal_second()) - entropy(j);
  return std::max(0.0, mi);
}

NormalizedMi normalized_mi(const Joint2& j) {
  const double mi = mutual_information(j);
  const double hx = entropy(j.marginal_first());
  const double hy = entropy(j.marginal_second());
  NormalizedMi out;
  out.to_y = hy > 0.0 ? std::min(1.0, mi / hy) : 0.0;
  out.to_x = hx > 0.0 ? std::min(1.0, mi / hx) : 0.0;
  out.max = std::max(out.to_y, out.to_x);
  return out;
}

double regularized_mi(const Joint2& j) {
  return js_distance(j.probs(), j.product_of_marginals().probs());
}

}  // namespace dircorr
