#include "dircorr/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "dircorr/error.hpp"

namespace dircorr {

ObservationTable::ObservationTable(Alphabet x, Alphabet y, Alphabet z, std::vector<Record> records)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), records_(std::move(records)) {
  if (records_.empty()) throw Error(ErrorKind::EmptyAfterFiltering, "observation table is empty");
  for (const Record& r : records_)
    if (r[0] >= x_.size() || r[1] >= y_.size() || r[2] >= z_.size())
      throw Error(ErrorKind::InvalidArgument, "record index outside its alphabet");
}

ObservationTable ObservationTable::from_labels(Alphabet x, Alphabet y, Alphabet z,
                                               const std::vector<std::array<std::string, 3>>& rows) {
  std::vector<Record> recs;
  recs.reserve(rows.size());
  const Alphabet* abs[3] = {&x, &y, &z};
  for (const auto& row : rows) {
    Record r{};
    for (int k = 0; k < 3; ++k) {
      const auto i = abs[k]->index_of(row[k]);
      if (!i) throw Error(ErrorKind::UnknownCategory, "label '" + row[k] + "' is not in the alphabet");
      r[k] = static_cast<std::uint32_t>(*i);
    }
    recs.push_back(r);
  }
  return ObservationTable(std::move(x), std::move(y), std::move(z), std::move(recs));
}

std::vector<std::uint64_t> ObservationTable::counts() const {
  std::vector<std::uint64_t> c(x_.size() * y_.size() * z_.size(), 0);
  for (const Record& r : records_) ++c[(r[0] * y_.size() + r[1]) * z_.size() + r[2]];
  return c;
}

Joint3 to_joint(const ObservationTable& obs) {
  const auto c = obs.counts();
  return from_counts(c, obs.x_alphabet(), obs.y_alphabet(), obs.z_alphabet());
}

ObservationTable from_joint_counts(const Alphabet& x, const Alphabet& y, const Alphabet& z,
                                   std::span<const std::uint64_t> counts) {
  if (counts.size() != x.size() * y.size() * z.size())
    throw Error(ErrorKind::ShapeMismatch, "count table does not match alphabets");
  std::vector<ObservationTable::Record> recs;
  for (std::uint32_t a = 0; a < x.size(); ++a)
    for (std::uint32_t b = 0; b < y.size(); ++b)
      for (std::uint32_t c = 0; c < z.size(); ++c)
        recs.insert(recs.end(), counts[(a * y.size() + b) * z.size() + c], {a, b, c});
  return ObservationTable(x, y, z, std::move(recs));
}

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(ErrorKind::InvalidArgument, "percentile of empty sample");
  // Rank h = (n + 1) q on 1-based order statistics, clamped to the sample.
  const double n = static_cast<double>(sorted.size());
  const double h = std::clamp(q * (n + 1.0), 1.0, n) - 1.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

__extension__ using u128 = unsigned __int128;

// Unbiased draw in [0, n) (Lemire's multiply-and-reject).
std::uint64_t bounded(std::mt19937_64& g, std::uint64_t n) {
  u128 m = static_cast<u128>(g()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t t = (0 - n) % n;
    while (low < t) {
      m = static_cast<u128>(g()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t b) {
  std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(ss);
}

}  // namespace

namespace {

using VectorStatistic = std::function<std::vector<double>(const Joint3&)>;

// values[b * k + i]: statistic i on resample b, NaN where undefined.
std::vector<double> resample_values(const ObservationTable& obs, const VectorStatistic& stat, std::size_t k,
                                    std::uint64_t B, std::uint64_t seed, unsigned threads) {
  std::vector<double> values(B * k, std::numeric_limits<double>::quiet_NaN());
  const auto& recs = obs.records();
  const std::size_t n = recs.size();
  const std::size_t dy = obs.y_alphabet().size();
  const std::size_t dz = obs.z_alphabet().size();
  const std::size_t cells = obs.x_alphabet().size() * dy * dz;

  auto work = [&](unsigned w, unsigned stride) {
    std::vector<std::uint64_t> counts(cells);
    for (std::uint64_t b = w; b < B; b += stride) {
      std::mt19937_64 g = stream(seed, b);
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& r = recs[bounded(g, n)];
        ++counts[(r[0] * dy + r[1]) * dz + r[2]];
      }
      const Joint3 j = from_counts(counts, obs.x_alphabet(), obs.y_alphabet(), obs.z_alphabet());
      const std::vector<double> v = stat(j);
      std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(b * k));
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, B));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
  }
  return values;
}

void check_args(std::uint64_t B, double level) {
  if (B < 2) throw Error(ErrorKind::InvalidArgument, "bootstrap needs B >= 2");
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorKind::InvalidArgument, "level must be in (0, 1)");
}

void summarize(CiReport& rep, double level, const std::string& what) {
  std::vector<double> kept;
  kept.reserve(rep.values.size());
  for (double v : rep.values)
    if (std::isnan(v)) ++rep.excluded;
    else kept.push_back(v);
  if (rep.excluded * 20 > rep.resamples || kept.empty())
    throw Error(ErrorKind::MeasureFailure, what + ": " + std::to_string(rep.excluded) + " of " +
                                               std::to_string(rep.resamples) +
                                               " resamples left the measure undefined");
  std::sort(kept.begin(), kept.end());
  const double tail = (1.0 - level) / 2.0;
  rep.lower = percentile_sorted(kept, tail);
  rep.upper = percentile_sorted(kept, 1.0 - tail);
}

}  // namespace

CiReport bootstrap_ci(const ObservationTable& obs, const JointStatistic& stat, std::uint64_t B,
                      std::uint64_t seed, unsigned threads, double level) {
  check_args(B, level);
  CiReport rep;
  rep.point = stat(to_joint(obs));
  rep.resamples = B;
  rep.seed = seed;
  rep.values = resample_values(
      obs,
      [&](const Joint3& j) {
        try {
          return std::vector<double>{stat(j)};
        } catch (const Error&) {
          return std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
        }
      },
      1, B, seed, threads);
  summarize(rep, level, "statistic");
  return rep;
}

CiReport bootstrap_ci(const ObservationTable& obs, Measure m, const EvalOptions& opts,
                      std::uint64_t B, std::uint64_t seed, unsigned threads, double level) {
  const Measure one[] = {m};
  return std::move(bootstrap_cis(obs, one, opts, B, seed, threads, level).front());
}

std::vector<CiReport> bootstrap_cis(const ObservationTable& obs, std::span<const Measure> ms,
                                    const EvalOptions& opts, std::uint64_t B, std::uint64_t seed,
                                    unsigned threads, double level) {
  check_args(B, level);
  const Joint3 full = to_joint(obs);
  std::vector<CiReport> reps(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    reps[i].point = evaluate(ms[i], full, opts);
    reps[i].resamples = B;
    reps[i].seed = seed;
    reps[i].values.resize(B);
  }
  const std::vector<double> v = resample_values(
      obs, [&](const Joint3& j) { return evaluate_all(ms, j, opts).values; }, ms.size(), B, seed, threads);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::uint64_t b = 0; b < B; ++b) reps[i].values[b] = v[b * ms.size() + i];
    summarize(reps[i], level, std::string(to_string(ms[i])));
  }
  return reps;
}

}  // namespace dircorr
