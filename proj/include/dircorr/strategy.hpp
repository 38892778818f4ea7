#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dircorr/prob.hpp"

namespace dircorr {

// How a conditional p(target | partner, z) is filled at cells where
// p(partner, z) = 0 and the conditional is undefined.
enum class SparseStrategy {
  Uniform,              // (a) 1/d_target
  Marginal,             // (b) p(target)
  ConditionalMarginal,  // (c) p(target | z)
};

inline constexpr SparseStrategy kDefaultStrategy = SparseStrategy::Marginal;

std::string_view to_string(SparseStrategy s) noexcept;
// Accepts "a"/"b"/"c" and "uniform"/"marginal"/"conditional-marginal".
std::optional<SparseStrategy> parse_strategy(std::string_view text);

// Filled conditional table t(target | partner, z), laid out [partner][z][target].
// Every row is a valid distribution.
struct FilledConditional {
  std::size_t partner_size = 0;
  std::size_t z_size = 0;
  std::size_t target_size = 0;
  std::vector<double> rows;
  std::size_t fill_count = 0;

  double operator()(std::size_t partner, std::size_t z, std::size_t target) const {
    return rows[(partner * z_size + z) * target_size + target];
  }
};

// p(y | x, z) filled per strategy.
FilledConditional filled_y_given_xz(const Joint3& j, SparseStrategy s);
// p(x | y, z) filled per strategy.
FilledConditional filled_x_given_yz(const Joint3& j, SparseStrategy s);

}  // namespace dircorr
