#pragma once

// Finite-alphabet probability tables and the divergences every measure is
// built from.  All logarithms are base 2 and 0*log(0) is taken as 0.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dircorr {

inline constexpr double kNormTolerance = 1e-12;

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

std::string_view to_string(Axis axis) noexcept;

class Alphabet {
 public:
  // Throws InvalidArgument when `labels` is empty or has duplicates.
  explicit Alphabet(std::vector<std::string> labels);

  // Labels "0", "1", ..., "size-1".
  static Alphabet ordinal(std::size_t size);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(std::string_view label) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> labels_;
};

// One-variable distribution p(v).
class Dist {
 public:
  Dist(Alphabet alphabet, std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

 private:
  Alphabet alphabet_;
  std::vector<double> probs_;
};

// Two-variable distribution p(a, b), row-major in (a, b).
class Joint2 {
 public:
  Joint2(Alphabet first, Alphabet second, std::vector<double> probs);

  std::size_t rows() const noexcept { return first_.size(); }
  std::size_t cols() const noexcept { return second_.size(); }
  double operator()(std::size_t a, std::size_t b) const { return probs_[a * cols() + b]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const Alphabet& first() const noexcept { return first_; }
  const Alphabet& second() const noexcept { return second_; }

  Dist marginal_first() const;
  Dist marginal_second() const;
  // p(a) p(b) on the same shape.
  Joint2 product_of_marginals() const;

 private:
  Alphabet first_;
  Alphabet second_;
  std::vector<double> probs_;
};

// Three-variable distribution p(x, y, z), row-major in (x, y, z).
class Joint3 {
 public:
  Joint3(Alphabet x, Alphabet y, Alphabet z, std::vector<double> probs);

  // Divides `weights` by their sum; for tables produced by arithmetic on
  // other valid tables.  Throws ZeroTotal when the sum is not positive.
  static Joint3 normalized(Alphabet x, Alphabet y, Alphabet z, std::vector<double> weights);

  std::size_t dx() const noexcept { return x_.size(); }
  std::size_t dy() const noexcept { return y_.size(); }
  std::size_t dz() const noexcept { return z_.size(); }
  std::array<std::size_t, 3> shape() const noexcept { return {dx(), dy(), dz()}; }

  std::size_t index(std::size_t x, std::size_t y, std::size_t z) const noexcept {
    return (x * dy() + y) * dz() + z;
  }
  double operator()(std::size_t x, std::size_t y, std::size_t z) const {
    return probs_[index(x, y, z)];
  }
  std::span<const double> probs() const noexcept { return probs_; }

  const Alphabet& alphabet(Axis axis) const noexcept;
  const Alphabet& x_alphabet() const noexcept { return x_; }
  const Alphabet& y_alphabet() const noexcept { return y_; }
  const Alphabet& z_alphabet() const noexcept { return z_; }

  // Same table with X and Y roles exchanged: result(y, x, z) = p(x, y, z).
  Joint3 swap_xy() const;

  // Same alphabets, new probabilities (validated).
  Joint3 with_probs(std::vector<double> probs) const;

 private:
  Alphabet x_;
  Alphabet y_;
  Alphabet z_;
  std::vector<double> probs_;
};

// Conditional distribution p(target | given...).  Cells are enumerated
// row-major over the `given` axes in the order they were requested.
class CondTable {
 public:
  CondTable(Alphabet target, std::vector<std::size_t> given_dims, std::vector<double> entries,
            std::vector<bool> defined);

  std::size_t target_size() const noexcept { return target_.size(); }
  std::size_t cell_count() const noexcept { return defined_.size(); }
  const std::vector<std::size_t>& given_dims() const noexcept { return given_dims_; }
  const Alphabet& target() const noexcept { return target_; }

  std::size_t cell_index(std::span<const std::size_t> coords) const;
  bool is_defined(std::size_t cell) const { return defined_.at(cell); }
  std::size_t undefined_count() const noexcept;
  // Row of an undefined cell is all zeros.
  std::span<const double> row(std::size_t cell) const;
  double at(std::size_t cell, std::size_t t) const { return row(cell)[t]; }

 private:
  Alphabet target_;
  std::vector<std::size_t> given_dims_;
  std::vector<double> entries_;
  std::vector<bool> defined_;
};

// Empirical distribution; `counts` is laid out like Joint3::probs.
Joint3 from_counts(std::span<const std::uint64_t> counts, Alphabet x, Alphabet y, Alphabet z);

Dist marginal(const Joint3& j, Axis keep);
// Result axes are ordered (first, second).
Joint2 marginal(const Joint3& j, Axis first, Axis second);

CondTable conditional(const Joint3& j, Axis target, std::span<const Axis> given);

double entropy(std::span<const double> probs);
double entropy(const Dist& d);
double entropy(const Joint2& j);
double entropy(const Joint3& j);

// Sum p*log2(p/q); +infinity when some p > 0 meets q = 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);
double kl_divergence(const Dist& p, const Dist& q);
double kl_divergence(const Joint2& p, const Joint2& q);
double kl_divergence(const Joint3& p, const Joint3& q);

// Jensen-Shannon divergence in bits, in [0, 1].
double js_divergence(std::span<const double> p, std::span<const double> q);
double js_divergence(const Dist& p, const Dist& q);
double js_divergence(const Joint2& p, const Joint2& q);
double js_divergence(const Joint3& p, const Joint3& q);

// sqrt(JS): the metric the regularized measures are built on.
double js_distance(std::span<const double> p, std::span<const double> q);

double total_variation(std::span<const double> p, std::span<const double> q);
double total_variation(const Dist& p, const Dist& q);

}  // namespace dircorr
