#include "dircorr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dircorr/error.hpp"

namespace dircorr {

namespace {

// base^exp, or nullopt on overflow past `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) return std::nullopt;
    r *= base;
  }
  return r;
}

}  // namespace

CouplingIterator::CouplingIterator(const Joint3& base, std::uint64_t cap)
    : x_(base.x_alphabet()), y_(base.y_alphabet()), z_(base.z_alphabet()) {
  const Joint2 pxz = marginal(base, Axis::X, Axis::Z);
  pxz_.assign(pxz.probs().begin(), pxz.probs().end());
  for (std::size_t c = 0; c < pxz_.size(); ++c)
    if (pxz_[c] > 0.0) cells_.push_back(c);
  raw_total_ = checked_pow(y_.size(), pxz_.size(), UINT64_MAX);
  const auto canonical = checked_pow(y_.size(), cells_.size(), cap);
  if (!canonical) {
    throw Error(ErrorKind::ExplosionGuard,
                "d_Y^(supported cells) = " + std::to_string(y_.size()) + "^" +
                    std::to_string(cells_.size()) + " couplings exceeds the cap of " +
                    std::to_string(cap));
  }
  total_ = *canonical;
}

std::vector<std::size_t> CouplingIterator::function_at(std::uint64_t index) const {
  if (index >= total_) throw Error(ErrorKind::InvalidArgument, "coupling index out of range");
  std::vector<std::size_t> f(pxz_.size(), 0);
  const std::uint64_t dy = y_.size();
  for (std::size_t c : cells_) {
    f[c] = static_cast<std::size_t>(index % dy);
    index /= dy;
  }
  return f;
}

Joint3 CouplingIterator::coupling_at(std::uint64_t index) const {
  const std::vector<std::size_t> f = function_at(index);
  const std::size_t dy = y_.size();
  const std::size_t dz = z_.size();
  std::vector<double> p(x_.size() * dy * dz, 0.0);
  for (std::size_t x = 0; x < x_.size(); ++x)
    for (std::size_t z = 0; z < dz; ++z) {
      const std::size_t c = x * dz + z;
      p[(x * dy + f[c]) * dz + z] = pxz_[c];
    }
  return Joint3(x_, y_, z_, std::move(p));
}

Joint3 CouplingIterator::next() {
  if (!has_next()) throw Error(ErrorKind::InvalidArgument, "coupling iterator exhausted");
  return coupling_at(next_++);
}

CouplingIterator enumerate_couplings(const Joint3& j, std::uint64_t cap) {
  return CouplingIterator(j, cap);
}

std::vector<BoundReport> achievable_bounds(const Joint3& j, std::span<const Measure> ms,
                                           SparseStrategy s, std::uint64_t cap, unsigned threads) {
  for (Measure m : ms)
    if (!info(m).boundable)
      throw Error(ErrorKind::InvalidArgument,
                  "no achievable bound is defined for '" + std::string(to_string(m)) + "'");
  const CouplingIterator it(j, cap);
  const std::uint64_t total = it.total();
  const EvalOptions opts{s, std::nullopt};

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

  struct Best {
    double value = -1.0;
    std::uint64_t index = 0;
  };
  // best[w][k]: worker w's maximum for measure k over its stride.
  std::vector<std::vector<Best>> best(threads, std::vector<Best>(ms.size()));
  auto work = [&](unsigned w) {
    for (std::uint64_t i = w; i < total; i += threads) {
      const Joint3 c = it.coupling_at(i);
      const MeasureValues v = evaluate_all(ms, c, opts);
      for (std::size_t k = 0; k < ms.size(); ++k) {
        if (std::isnan(v.values[k])) continue;
        if (v.values[k] > best[w][k].value) best[w][k] = {v.values[k], i};
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  std::vector<BoundReport> out;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    Best b;
    for (unsigned w = 0; w < threads; ++w) {
      const Best& c = best[w][k];
      if (c.value > b.value || (c.value == b.value && c.index < b.index)) b = c;
    }
    BoundReport r;
    r.measure = ms[k];
    r.max_value = std::max(0.0, b.value);
    r.argmax_index = b.index;
    r.argmax_function = it.function_at(b.index);
    r.couplings_examined = total;
    out.push_back(std::move(r));
  }
  return out;
}

BoundReport achievable_bound(const Joint3& j, Measure m, SparseStrategy s, std::uint64_t cap,
                             unsigned threads) {
  const Measure one[] = {m};
  return std::move(achievable_bounds(j, one, s, cap, threads).front());
}

double rmi_max_uniform(std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "alphabet size must be positive");
  const double kd = static_cast<double>(k);
  const double bracket = std::log2(2.0 * kd / (kd + 1.0)) + std::log2(2.0 / (kd + 1.0)) / kd +
                         (1.0 - 1.0 / kd);
  return std::sqrt(std::max(0.0, bracket)) / std::sqrt(2.0);
}

}  // namespace dircorr
