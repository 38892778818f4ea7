#pragma once

// Achievable upper bounds: the maximum of a measure over every deterministic
// coupling Y = f(X, Z) that keeps the observed p(x, z).

#include <cstdint>
#include <optional>
#include <vector>

#include "dircorr/measures.hpp"
#include "dircorr/prob.hpp"

namespace dircorr {

inline constexpr std::uint64_t kDefaultCouplingCap = std::uint64_t{1} << 24;

// Enumerates f : (x, z) -> y.  Cells with p(x, z) = 0 carry no mass, so f is
// pinned to y = 0 there and each distinct coupling joint is produced once.
// Index i encodes f in base d_Y over the supported cells, first cell least
// significant; any partition of [0, total()) covers every coupling once.
class CouplingIterator {
 public:
  CouplingIterator(const Joint3& base, std::uint64_t cap = kDefaultCouplingCap);

  // Couplings actually enumerated, d_Y^(supported cells).
  std::uint64_t total() const noexcept { return total_; }
  // d_Y^(d_X d_Z), or nullopt when that does not fit in 64 bits.
  std::optional<std::uint64_t> raw_total() const noexcept { return raw_total_; }
  std::size_t supported_cells() const noexcept { return cells_.size(); }

  // f(x, z) for coupling `index`, laid out [x][z].
  std::vector<std::size_t> function_at(std::uint64_t index) const;
  Joint3 coupling_at(std::uint64_t index) const;

  // Sequential access.
  bool has_next() const noexcept { return next_ < total_; }
  Joint3 next();
  std::uint64_t position() const noexcept { return next_; }

 private:
  Alphabet x_;
  Alphabet y_;
  Alphabet z_;
  std::vector<double> pxz_;             // [x][z]
  std::vector<std::size_t> cells_;      // supported x*dz+z
  std::uint64_t total_ = 1;
  std::optional<std::uint64_t> raw_total_;
  std::uint64_t next_ = 0;
};

CouplingIterator enumerate_couplings(const Joint3& j, std::uint64_t cap = kDefaultCouplingCap);

struct BoundReport {
  Measure measure;
  double max_value = 0.0;
  std::uint64_t argmax_index = 0;
  std::vector<std::size_t> argmax_function;  // f(x, z), laid out [x][z]
  std::uint64_t couplings_examined = 0;
};

// `threads` = 0 uses the hardware concurrency.  Ties resolve to the lowest
// coupling index, so the report is independent of the thread count.
// Throws InvalidArgument for a measure without a bound, ExplosionGuard
// beyond the cap.
BoundReport achievable_bound(const Joint3& j, Measure m, SparseStrategy s = kDefaultStrategy,
                             std::uint64_t cap = kDefaultCouplingCap, unsigned threads = 0);

// Several bounds from a single pass over the couplings.
std::vector<BoundReport> achievable_bounds(const Joint3& j, std::span<const Measure> ms,
                                           SparseStrategy s = kDefaultStrategy,
                                           std::uint64_t cap = kDefaultCouplingCap,
                                           unsigned threads = 0);

// Regularized MI of the coupling Y = X under uniform marginals on k symbols.
double rmi_max_uniform(std::uint64_t k);

}  // namespace dircorr
