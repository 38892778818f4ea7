#pragma once

// Nonparametric bootstrap over observation-level records.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dircorr/measures.hpp"
#include "dircorr/prob.hpp"

namespace dircorr {

// Records are stored as alphabet indices; alphabets are fixed up front so
// every resample shares the same table shape.
class ObservationTable {
 public:
  using Record = std::array<std::uint32_t, 3>;

  ObservationTable(Alphabet x, Alphabet y, Alphabet z, std::vector<Record> records);

  // Looks each label up in its alphabet; throws UnknownCategory on a miss.
  static ObservationTable from_labels(Alphabet x, Alphabet y, Alphabet z,
                                      const std::vector<std::array<std::string, 3>>& rows);

  std::size_t size() const noexcept { return records_.size(); }
  const std::vector<Record>& records() const noexcept { return records_; }
  const Alphabet& x_alphabet() const noexcept { return x_; }
  const Alphabet& y_alphabet() const noexcept { return y_; }
  const Alphabet& z_alphabet() const noexcept { return z_; }

  // Cell counts laid out like Joint3::probs.
  std::vector<std::uint64_t> counts() const;

 private:
  Alphabet x_;
  Alphabet y_;
  Alphabet z_;
  std::vector<Record> records_;
};

Joint3 to_joint(const ObservationTable& obs);

// Expands a contingency table back into one record per observation.
ObservationTable from_joint_counts(const Alphabet& x, const Alphabet& y, const Alphabet& z,
                                   std::span<const std::uint64_t> counts);

inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64/seed_seq(seed,b)/lemire-bounded";

struct CiReport {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t resamples = 0;
  std::uint64_t seed = 0;
  std::uint64_t excluded = 0;
  std::string rng_algorithm{kRngAlgorithm};
  std::vector<double> values;  // per resample, NaN where excluded
};

using JointStatistic = std::function<double(const Joint3&)>;

// Percentile interval at `level` (0.95 gives the 2.5th/97.5th percentiles).
// Resample b draws from a generator seeded by (seed, b) alone, so the result
// does not depend on `threads` (0 uses the hardware concurrency).
// A resample on which `stat` throws dircorr::Error is excluded; more than
// 5% exclusions throw MeasureFailure.
CiReport bootstrap_ci(const ObservationTable& obs, const JointStatistic& stat, std::uint64_t B,
                      std::uint64_t seed, unsigned threads = 1, double level = 0.95);

CiReport bootstrap_ci(const ObservationTable& obs, Measure m, const EvalOptions& opts,
                      std::uint64_t B, std::uint64_t seed, unsigned threads = 1,
                      double level = 0.95);

// Intervals for several measures from one shared set of resamples.  Each
// measure's exclusions are counted separately; the 5% rule applies per
// measure and throws MeasureFailure naming the first offender.
std::vector<CiReport> bootstrap_cis(const ObservationTable& obs, std::span<const Measure> ms,
                                    const EvalOptions& opts, std::uint64_t B, std::uint64_t seed,
                                    unsigned threads = 1, double level = 0.95);

// Linear interpolation between order statistics of sorted data, q in [0, 1],
// at rank (n + 1) q; ranks outside [1, n] clamp to the extremes.
double percentile_sorted(std::span<const double> sorted, double q);

}  // namespace dircorr
