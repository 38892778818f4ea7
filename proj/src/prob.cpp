#include "dircorr/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "dircorr/error.hpp"

namespace dircorr {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroTotal: return "ZeroTotal";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DegenerateVariable: return "DegenerateVariable";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::SingleCategory: return "SingleCategory";
    case ErrorKind::ExplosionGuard: return "ExplosionGuard";
    case ErrorKind::MeasureFailure: return "MeasureFailure";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::EmptyAfterFiltering: return "EmptyAfterFiltering";
    case ErrorKind::UnknownCategory: return "UnknownCategory";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(Axis axis) noexcept {
  switch (axis) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
  }
  return "?";
}

namespace {

void validate_distribution(std::span<const double> probs, std::string_view what) {
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(what) + " has a negative or non-finite entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " does not sum to 1 (sum = " + std::to_string(total) + ")");
  }
}

void check_size(std::size_t got, std::size_t want, std::string_view what) {
  if (got != want) {
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": expected " +
                                              std::to_string(want) + " entries, got " +
                                              std::to_string(got));
  }
}

// x*log2(x/y) contributions are summed in natural log and converted once.
constexpr double kInvLn2 = 1.4426950408889634074;

}  // namespace

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorKind::InvalidArgument, "alphabet must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate alphabet label '" + l + "'");
    }
  }
}

Alphabet Alphabet::ordinal(std::size_t size) {
  std::vector<std::string> labels;
  labels.reserve(size);
  for (std::size_t i = 0; i < size; ++i) labels.push_back(std::to_string(i));
  return Alphabet(std::move(labels));
}

std::optional<std::size_t> Alphabet::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

// ---------------------------------------------------------------------------
// Tables

Dist::Dist(Alphabet alphabet, std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
  check_size(probs_.size(), alphabet_.size(), "Dist");
  validate_distribution(probs_, "Dist");
}

Joint2::Joint2(Alphabet first, Alphabet second, std::vector<double> probs)
    : first_(std::move(first)), second_(std::move(second)), probs_(std::move(probs)) {
  check_size(probs_.size(), first_.size() * second_.size(), "Joint2");
  validate_distribution(probs_, "Joint2");
}

Dist Joint2::marginal_first() const {
  std::vector<double> m(rows(), 0.0);
  for (std::size_t a = 0; a < rows(); ++a)
    for (std::size_t b = 0; b < cols(); ++b) m[a] += (*this)(a, b);
  return Dist(first_, std::move(m));
}

Dist Joint2::marginal_second() const {
  std::vector<double> m(cols(), 0.0);
  for (std::size_t a = 0; a < rows(); ++a)
    for (std::size_t b = 0; b < cols(); ++b) m[b] += (*this)(a, b);
  return Dist(second_, std::move(m));
}

Joint2 Joint2::product_of_marginals() const {
  const Dist pa = marginal_first();
  const Dist pb = marginal_second();
  std::vector<double> out(probs_.size());
  for (std::size_t a = 0; a < rows(); ++a)
    for (std::size_t b = 0; b < cols(); ++b) out[a * cols() + b] = pa[a] * pb[b];
  return Joint2(first_, second_, std::move(out));
}

Joint3::Joint3(Alphabet x, Alphabet y, Alphabet z, std::vector<double> probs)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), probs_(std::move(probs)) {
  check_size(probs_.size(), x_.size() * y_.size() * z_.size(), "Joint3");
  validate_distribution(probs_, "Joint3");
}

Joint3 Joint3::normalized(Alphabet x, Alphabet y, Alphabet z, std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "negative or non-finite weight");
    }
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::ZeroTotal, "all weights are zero");
  for (double& w : weights) w /= total;
  return Joint3(std::move(x), std::move(y), std::move(z), std::move(weights));
}

const Alphabet& Joint3::alphabet(Axis axis) const noexcept {
  switch (axis) {
    case Axis::X: return x_;
    case Axis::Y: return y_;
    case Axis::Z: break;
  }
  return z_;
}

Joint3 Joint3::swap_xy() const {
  std::vector<double> out(probs_.size());
  for (std::size_t x = 0; x < dx(); ++x)
    for (std::size_t y = 0; y < dy(); ++y)
      for (std::size_t z = 0; z < dz(); ++z) out[(y * dx() + x) * dz() + z] = (*this)(x, y, z);
  return Joint3(y_, x_, z_, std::move(out));
}

Joint3 Joint3::with_probs(std::vector<double> probs) const {
  return Joint3(x_, y_, z_, std::move(probs));
}

CondTable::CondTable(Alphabet target, std::vector<std::size_t> given_dims,
                     std::vector<double> entries, std::vector<bool> defined)
    : target_(std::move(target)),
      given_dims_(std::move(given_dims)),
      entries_(std::move(entries)),
      defined_(std::move(defined)) {
  const std::size_t cells = std::accumulate(given_dims_.begin(), given_dims_.end(),
                                            std::size_t{1}, std::multiplies<>());
  check_size(defined_.size(), cells, "CondTable mask");
  check_size(entries_.size(), cells * target_.size(), "CondTable entries");
  for (std::size_t c = 0; c < cells; ++c) {
    auto r = std::span<const double>(entries_).subspan(c * target_.size(), target_.size());
    if (defined_[c]) {
      validate_distribution(r, "CondTable row");
    } else if (std::any_of(r.begin(), r.end(), [](double v) { return v != 0.0; })) {
      throw Error(ErrorKind::InvalidArgument, "undefined CondTable row must be zero");
    }
  }
}

std::size_t CondTable::cell_index(std::span<const std::size_t> coords) const {
  check_size(coords.size(), given_dims_.size(), "CondTable coordinates");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] >= given_dims_[k]) throw Error(ErrorKind::InvalidArgument, "coordinate out of range");
    idx = idx * given_dims_[k] + coords[k];
  }
  return idx;
}

std::size_t CondTable::undefined_count() const noexcept {
  return static_cast<std::size_t>(std::count(defined_.begin(), defined_.end(), false));
}

std::span<const double> CondTable::row(std::size_t cell) const {
  if (cell >= cell_count()) throw Error(ErrorKind::InvalidArgument, "cell out of range");
  return std::span<const double>(entries_).subspan(cell * target_size(), target_size());
}

// ---------------------------------------------------------------------------
// Operations

Joint3 from_counts(std::span<const std::uint64_t> counts, Alphabet x, Alphabet y, Alphabet z) {
  check_size(counts.size(), x.size() * y.size() * z.size(), "counts");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw Error(ErrorKind::ZeroTotal, "all counts are zero");
  std::vector<double> probs(counts.size());
  const double n = static_cast<double>(total);
  for (std::size_t i = 0; i < counts.size(); ++i) probs[i] = static_cast<double>(counts[i]) / n;
  return Joint3(std::move(x), std::move(y), std::move(z), std::move(probs));
}

Dist marginal(const Joint3& j, Axis keep) {
  const std::size_t k = static_cast<std::size_t>(keep);
  std::vector<double> m(j.shape()[k], 0.0);
  for (std::size_t x = 0; x < j.dx(); ++x)
    for (std::size_t y = 0; y < j.dy(); ++y)
      for (std::size_t z = 0; z < j.dz(); ++z) {
        const std::array<std::size_t, 3> c{x, y, z};
        m[c[k]] += j(x, y, z);
      }
  return Dist(j.alphabet(keep), std::move(m));
}

Joint2 marginal(const Joint3& j, Axis first, Axis second) {
  if (first == second) throw Error(ErrorKind::InvalidArgument, "marginal axes must differ");
  const std::size_t a = static_cast<std::size_t>(first);
  const std::size_t b = static_cast<std::size_t>(second);
  const auto shape = j.shape();
  std::vector<double> m(shape[a] * shape[b], 0.0);
  for (std::size_t x = 0; x < j.dx(); ++x)
    for (std::size_t y = 0; y < j.dy(); ++y)
      for (std::size_t z = 0; z < j.dz(); ++z) {
        const std::array<std::size_t, 3> c{x, y, z};
        m[c[a] * shape[b] + c[b]] += j(x, y, z);
      }
  return Joint2(j.alphabet(first), j.alphabet(second), std::move(m));
}

CondTable conditional(const Joint3& j, Axis target, std::span<const Axis> given) {
  std::array<bool, 3> used{};
  used[static_cast<std::size_t>(target)] = true;
  for (Axis g : given) {
    auto& u = used[static_cast<std::size_t>(g)];
    if (u) throw Error(ErrorKind::InvalidArgument, "conditioning axes must be distinct from target and each other");
    u = true;
  }
  const auto shape = j.shape();
  const std::size_t t = static_cast<std::size_t>(target);
  std::vector<std::size_t> dims;
  for (Axis g : given) dims.push_back(shape[static_cast<std::size_t>(g)]);
  const std::size_t cells =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  const std::size_t dt = shape[t];

  std::vector<double> joint(cells * dt, 0.0);
  for (std::size_t x = 0; x < j.dx(); ++x)
    for (std::size_t y = 0; y < j.dy(); ++y)
      for (std::size_t z = 0; z < j.dz(); ++z) {
        const std::array<std::size_t, 3> c{x, y, z};
        std::size_t cell = 0;
        for (std::size_t k = 0; k < given.size(); ++k)
          cell = cell * dims[k] + c[static_cast<std::size_t>(given[k])];
        joint[cell * dt + c[t]] += j(x, y, z);
      }

  std::vector<bool> defined(cells, false);
  for (std::size_t c = 0; c < cells; ++c) {
    double mass = 0.0;
    for (std::size_t v = 0; v < dt; ++v) mass += joint[c * dt + v];
    if (mass > 0.0) {
      defined[c] = true;
      for (std::size_t v = 0; v < dt; ++v) joint[c * dt + v] /= mass;
    }
  }
  return CondTable(j.alphabet(target), std::move(dims), std::move(joint), std::move(defined));
}

double entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return std::max(0.0, h * kInvLn2);
}
double entropy(const Dist& d) { return entropy(d.probs()); }
double entropy(const Joint2& j) { return entropy(j.probs()); }
double entropy(const Joint3& j) { return entropy(j.probs()); }

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  check_size(q.size(), p.size(), "kl_divergence");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    s += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(0.0, s * kInvLn2);
}
double kl_divergence(const Dist& p, const Dist& q) { return kl_divergence(p.probs(), q.probs()); }
double kl_divergence(const Joint2& p, const Joint2& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols())
    throw Error(ErrorKind::ShapeMismatch, "kl_divergence: Joint2 shapes differ");
  return kl_divergence(p.probs(), q.probs());
}
double kl_divergence(const Joint3& p, const Joint3& q) {
  if (p.shape() != q.shape()) throw Error(ErrorKind::ShapeMismatch, "kl_divergence: Joint3 shapes differ");
  return kl_divergence(p.probs(), q.probs());
}

double js_divergence(std::span<const double> p, std::span<const double> q) {
  check_size(q.size(), p.size(), "js_divergence");
  // Per cell: p*log(2p/(p+q)) + q*log(2q/(p+q)), written with log1p of the
  // relative difference so that nearly equal cells contribute O(d^2).
  // Each cell is evaluated with its larger entry first, which makes the
  // result exactly symmetric in p and q.
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double a = std::max(p[i], q[i]);
    const double b = std::min(p[i], q[i]);
    const double sum = a + b;
    if (sum <= 0.0) continue;
    const double d = (a - b) / sum;
    double cell = a * std::log1p(d);
    if (b > 0.0) cell += b * std::log1p(-d);
    s += cell;
  }
  return std::clamp(0.5 * s * kInvLn2, 0.0, 1.0);
}
double js_divergence(const Dist& p, const Dist& q) { return js_divergence(p.probs(), q.probs()); }
double js_divergence(const Joint2& p, const Joint2& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols())
    throw Error(ErrorKind::ShapeMismatch, "js_divergence: Joint2 shapes differ");
  return js_divergence(p.probs(), q.probs());
}
double js_divergence(const Joint3& p, const Joint3& q) {
  if (p.shape() != q.shape()) throw Error(ErrorKind::ShapeMismatch, "js_divergence: Joint3 shapes differ");
  return js_divergence(p.probs(), q.probs());
}

double js_distance(std::span<const double> p, std::span<const double> q) {
  return std::sqrt(js_divergence(p, q));
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  check_size(q.size(), p.size(), "total_variation");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return std::clamp(0.5 * s, 0.0, 1.0);
}
double total_variation(const Dist& p, const Dist& q) {
  return total_variation(p.probs(), q.probs());
}

}  // namespace dircorr
