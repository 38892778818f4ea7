#pragma once

// Intervention measures under back-door adjustment on Z:
//   p(y | do(x)) = sum_z p(y | x, z) p(z).
// Whether Z is a valid adjustment set is an assumption of the caller.

#include <cstddef>
#include <vector>

#include "dircorr/prob.hpp"
#include "dircorr/strategy.hpp"

namespace dircorr {

inline constexpr const char* kBackdoorCaveat =
    "note: do-family measures assume Z is a sufficient back-door adjustment set for X -> Y; "
    "this is not checked.";

class DoConditional {
 public:
  DoConditional(Alphabet x, Alphabet y, std::vector<double> rows, SparseStrategy strategy,
                std::size_t fill_count);

  std::size_t dx() const noexcept { return x_.size(); }
  std::size_t dy() const noexcept { return y_.size(); }
  std::span<const double> row(std::size_t x) const {
    return std::span<const double>(rows_).subspan(x * dy(), dy());
  }
  double operator()(std::size_t x, std::size_t y) const { return rows_[x * dy() + y]; }
  const Alphabet& x_alphabet() const noexcept { return x_; }
  const Alphabet& y_alphabet() const noexcept { return y_; }
  SparseStrategy strategy() const noexcept { return strategy_; }
  // Number of (x, z) cells with p(x, z) = 0 that were filled.
  std::size_t fill_count() const noexcept { return fill_count_; }

 private:
  Alphabet x_;
  Alphabet y_;
  std::vector<double> rows_;
  SparseStrategy strategy_;
  std::size_t fill_count_;
};

struct DoJoint {
  Joint2 joint;  // p_do(x, y) = p(y | do(x)) p(x)
  Dist px;       // equals the observational p(x)
  Dist py;
};

DoConditional do_conditional(const Joint3& j, SparseStrategy s = kDefaultStrategy);

// Pair of X values attaining a max-over-pairs measure (first encountered).
struct PairMax {
  double value = 0.0;
  std::size_t x = 0;
  std::size_t x_prime = 0;
};

// All four throw SingleCategory when d_X = 1.
PairMax ace_pair(const DoConditional& dc);
PairMax nace_pair(const DoConditional& dc);
PairMax ace_kl_pair(const DoConditional& dc);
PairMax race_pair(const DoConditional& dc);

double ace(const DoConditional& dc);
double nace(const DoConditional& dc);
double ace_kl(const DoConditional& dc);
double race(const DoConditional& dc);

DoJoint do_joint(const Joint3& j, SparseStrategy s = kDefaultStrategy);
DoJoint do_joint(const Joint3& j, const DoConditional& dc);

// Normalized MI of p_do toward Y; 0 when H(p_do(y)) = 0.
double mi_do(const DoJoint& dj);
double rmi_do(const DoJoint& dj);

}  // namespace dircorr
