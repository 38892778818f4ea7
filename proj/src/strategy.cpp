#include "dircorr/strategy.hpp"

#include <array>

namespace dircorr {

std::string_view to_string(SparseStrategy s) noexcept {
  switch (s) {
    case SparseStrategy::Uniform: return "a";
    case SparseStrategy::Marginal: return "b";
    case SparseStrategy::ConditionalMarginal: return "c";
  }
  return "?";
}

std::optional<SparseStrategy> parse_strategy(std::string_view text) {
  if (text == "a" || text == "uniform") return SparseStrategy::Uniform;
  if (text == "b" || text == "marginal") return SparseStrategy::Marginal;
  if (text == "c" || text == "conditional-marginal") return SparseStrategy::ConditionalMarginal;
  return std::nullopt;
}

namespace {

FilledConditional fill(const Joint3& j, Axis target, Axis partner, SparseStrategy s) {
  const std::array<Axis, 2> given{partner, Axis::Z};
  const CondTable cond = conditional(j, target, given);
  const Dist target_marginal = marginal(j, target);
  const std::array<Axis, 1> z_only{Axis::Z};
  const CondTable target_given_z = conditional(j, target, z_only);

  FilledConditional out;
  out.partner_size = j.alphabet(partner).size();
  out.z_size = j.dz();
  out.target_size = j.alphabet(target).size();
  out.rows.assign(out.partner_size * out.z_size * out.target_size, 0.0);

  for (std::size_t p = 0; p < out.partner_size; ++p) {
    for (std::size_t z = 0; z < out.z_size; ++z) {
      const std::size_t cell = p * out.z_size + z;
      double* dst = &out.rows[cell * out.target_size];
      if (cond.is_defined(cell)) {
        auto r = cond.row(cell);
        std::copy(r.begin(), r.end(), dst);
        continue;
      }
      ++out.fill_count;
      SparseStrategy effective = s;
      // An empty stratum carries no p(target|z); it also carries zero weight
      // in every reconstruction, so the marginal is used.
      if (effective == SparseStrategy::ConditionalMarginal && !target_given_z.is_defined(z)) {
        effective = SparseStrategy::Marginal;
      }
      switch (effective) {
        case SparseStrategy::Uniform:
          for (std::size_t t = 0; t < out.target_size; ++t)
            dst[t] = 1.0 / static_cast<double>(out.target_size);
          break;
        case SparseStrategy::Marginal:
          for (std::size_t t = 0; t < out.target_size; ++t) dst[t] = target_marginal[t];
          break;
        case SparseStrategy::ConditionalMarginal: {
          auto r = target_given_z.row(z);
          std::copy(r.begin(), r.end(), dst);
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace

FilledConditional filled_y_given_xz(const Joint3& j, SparseStrategy s) {
  return fill(j, Axis::Y, Axis::X, s);
}

FilledConditional filled_x_given_yz(const Joint3& j, SparseStrategy s) {
  return fill(j, Axis::X, Axis::Y, s);
}

}  // namespace dircorr
