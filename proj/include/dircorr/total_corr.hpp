#pragma once

#include <vector>

#include "dircorr/prob.hpp"

namespace dircorr {

// Real value attached to each category, used by the linear measures.
class NumericEncoding {
 public:
  explicit NumericEncoding(std::vector<double> values);
  // 0, 1, 2, ... in alphabet order.
  static NumericEncoding ordinal(std::size_t size);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  NumericEncoding negated() const;

 private:
  std::vector<double> values_;
};

struct Encodings {
  NumericEncoding x;
  NumericEncoding y;
  NumericEncoding z;

  static Encodings ordinal(const Joint3& j);
};

// Pearson correlation of the first and second variable under the encodings.
// Throws DegenerateVariable when either variance is zero.
double pcc(const Joint2& j, const NumericEncoding& first, const NumericEncoding& second);

// Partial correlation of X and Y given Z from the three pairwise PCCs.
// Throws SingularDenominator when |pcc(X,Z)| or |pcc(Y,Z)| is 1.
double partial_correlation(const Joint3& j, const Encodings& enc);

double mutual_information(const Joint2& j);

struct NormalizedMi {
  double to_y = 0.0;  // H(X:Y)/H(Y)
  double to_x = 0.0;  // H(X:Y)/H(X)
  double max = 0.0;
};
// A direction whose denominator entropy is zero is reported as 0.
NormalizedMi normalized_mi(const Joint2& j);

// sqrt(JS(p(x,y) || p(x)p(y))).
double regularized_mi(const Joint2& j);

}  // namespace dircorr
