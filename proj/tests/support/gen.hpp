#pragma once

// Random table generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dircorr/prob.hpp"

namespace testgen {

using dircorr::Alphabet;
using dircorr::Joint3;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  bool coin(double p) { return unit() < p; }

  // Strictly positive weights, normalized.  `zero_rate` > 0 punches holes.
  std::vector<double> simplex(std::size_t n, double zero_rate = 0.0) {
    std::vector<double> w(n);
    double s = 0.0;
    for (auto& v : w) {
      v = coin(zero_rate) ? 0.0 : -std::log(1.0 - unit());
      s += v;
    }
    if (s == 0.0) {
      w[size(0, n - 1)] = 1.0;
      s = 1.0;
    }
    for (auto& v : w) v /= s;
    return w;
  }

  Joint3 joint(std::size_t dx, std::size_t dy, std::size_t dz, double zero_rate = 0.0) {
    return Joint3::normalized(Alphabet::ordinal(dx), Alphabet::ordinal(dy), Alphabet::ordinal(dz),
                              simplex(dx * dy * dz, zero_rate));
  }

  Joint3 joint_up_to(std::size_t max_d, double zero_rate = 0.0) {
    return joint(size(2, max_d), size(2, max_d), size(1, max_d), zero_rate);
  }

  // p(z) p(x|z) p(y|z): X and Y independent given Z.
  Joint3 cond_independent(std::size_t dx, std::size_t dy, std::size_t dz) {
    const auto pz = simplex(dz);
    std::vector<double> w(dx * dy * dz);
    for (std::size_t z = 0; z < dz; ++z) {
      const auto px = simplex(dx);
      const auto py = simplex(dy);
      for (std::size_t x = 0; x < dx; ++x)
        for (std::size_t y = 0; y < dy; ++y) w[(x * dy + y) * dz + z] = pz[z] * px[x] * py[y];
    }
    return Joint3::normalized(Alphabet::ordinal(dx), Alphabet::ordinal(dy), Alphabet::ordinal(dz), std::move(w));
  }

  // Fisher-Yates permutation of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[size(0, i - 1)]);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Relabel categories: result(px[x], py[y], pz[z]) = j(x, y, z).
inline Joint3 permuted(const Joint3& j, const std::vector<std::size_t>& px, const std::vector<std::size_t>& py,
                       const std::vector<std::size_t>& pz) {
  std::vector<double> w(j.probs().size());
  for (std::size_t x = 0; x < j.dx(); ++x)
    for (std::size_t y = 0; y < j.dy(); ++y)
      for (std::size_t z = 0; z < j.dz(); ++z) w[j.index(px[x], py[y], pz[z])] = j(x, y, z);
  return j.with_probs(std::move(w));
}

inline Joint3 from_list(std::size_t dx, std::size_t dy, std::size_t dz, std::vector<double> p) {
  return Joint3(Alphabet::ordinal(dx), Alphabet::ordinal(dy), Alphabet::ordinal(dz), std::move(p));
}

// p = 1/2 on x = y = z (binary).
inline Joint3 diagonal() {
  std::vector<double> p(8, 0.0);
  p[0] = p[7] = 0.5;
  return from_list(2, 2, 2, p);
}

}  // namespace testgen
