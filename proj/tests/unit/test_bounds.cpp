#include <doctest.h>

#include <cmath>
#include <set>

#include "../support/gen.hpp"
#include "dircorr/analysis.hpp"
#include "dircorr/bounds.hpp"
#include "dircorr/error.hpp"

using namespace dircorr;

namespace {

Joint3 uniform_xz(std::size_t k, std::size_t dy) {
  std::vector<double> w(k * dy, 0.0);
  for (std::size_t x = 0; x < k; ++x) w[x * dy] = 1.0;
  return Joint3::normalized(Alphabet::ordinal(k), Alphabet::ordinal(dy), Alphabet::ordinal(1), w);
}

}  // namespace

TEST_CASE("coupling enumeration") {
  SUBCASE("counts") {
    CHECK(enumerate_couplings(load_builtin("titanic").joint).total() == 64);
    CHECK(enumerate_couplings(load_builtin("berkeley").joint).total() == 4096);
    CHECK(enumerate_couplings(testgen::from_list(2, 1, 2, {0.1, 0.2, 0.3, 0.4})).total() == 1);
    CHECK(enumerate_couplings(load_builtin("titanic").joint).raw_total() == 64);
  }
  SUBCASE("unsupported cells are pinned") {
    const Joint3 j = testgen::diagonal();
    const auto it = enumerate_couplings(j);
    CHECK(it.supported_cells() == 2);
    CHECK(it.total() == 4);
    CHECK(it.raw_total() == 16);
  }
  SUBCASE("every coupling keeps p(x,z), is deterministic and distinct") {
    testgen::Gen g(9);
    const Joint3 j = g.joint(3, 3, 2, 0.2);
    auto it = enumerate_couplings(j);
    const Joint2 base = marginal(j, Axis::X, Axis::Z);
    std::set<std::vector<double>> seen;
    std::uint64_t n = 0;
    while (it.has_next()) {
      const Joint3 c = it.next();
      ++n;
      const Joint2 m = marginal(c, Axis::X, Axis::Z);
      for (std::size_t i = 0; i < m.probs().size(); ++i) CHECK(m.probs()[i] == doctest::Approx(base.probs()[i]).epsilon(1e-15));
      for (std::size_t x = 0; x < c.dx(); ++x)
        for (std::size_t z = 0; z < c.dz(); ++z) {
          int nonzero = 0;
          for (std::size_t y = 0; y < c.dy(); ++y) nonzero += c(x, y, z) > 0.0;
          CHECK(nonzero <= 1);
        }
      seen.insert(std::vector<double>(c.probs().begin(), c.probs().end()));
    }
    CHECK(n == it.total());
    CHECK(seen.size() == n);
  }
  SUBCASE("explosion guard") {
    const Joint3 big = testgen::Gen(1).joint(5, 4, 5);  // 4^25
    try {
      enumerate_couplings(big);
      FAIL("expected ExplosionGuard");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ExplosionGuard);
    }
    CHECK(enumerate_couplings(load_builtin("berkeley").joint, 4096).total() == 4096);
    CHECK_THROWS_AS(enumerate_couplings(load_builtin("berkeley").joint, 4095), Error);
  }
}

TEST_CASE("closed-form uniform rmi maximum") {
  CHECK(rmi_max_uniform(1) == 0.0);
  CHECK(std::abs(rmi_max_uniform(2) - 0.558) <= 0.001);
  CHECK(std::abs(rmi_max_uniform(4) - 0.741) <= 0.001);
  CHECK(std::abs(rmi_max_uniform(16) - 0.910) <= 0.001);
  CHECK(rmi_max_uniform(1024) > 0.99);
  for (std::uint64_t k = 1; k < 200; ++k) CHECK(rmi_max_uniform(k + 1) > rmi_max_uniform(k));
  CHECK_THROWS_AS(rmi_max_uniform(0), Error);
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto b = achievable_bound(uniform_xz(k, k), Measure::rmi);
    CHECK(std::abs(b.max_value - rmi_max_uniform(k)) <= 1e-9);
  }
}

TEST_CASE("achievable bounds") {
  const Joint3 ti = load_builtin("titanic").joint;
  SUBCASE("bounds that agree with the reference table") {
    CHECK(std::abs(achievable_bound(ti, Measure::rmi).max_value - 0.555) <= 0.002);
    CHECK(achievable_bound(ti, Measure::nace).max_value == doctest::Approx(1.0));
    CHECK(achievable_bound(ti, Measure::race).max_value == doctest::Approx(1.0));
    CHECK(std::abs(achievable_bound(load_builtin("berkeley").joint, Measure::rmi).max_value - 0.549) <= 0.002);
  }
  SUBCASE("argmax reproduces the maximum") {
    const auto b = achievable_bound(ti, Measure::rcmi);
    const auto it = enumerate_couplings(ti);
    CHECK(it.function_at(b.argmax_index) == b.argmax_function);
    CHECK(evaluate(Measure::rcmi, it.coupling_at(b.argmax_index)) == b.max_value);
    CHECK(b.couplings_examined == 64);
  }
  SUBCASE("thread count does not change the report") {
    const Measure ms[] = {Measure::rcmi, Measure::ricmi_two, Measure::rmi_do};
    const auto a = achievable_bounds(ti, ms, kDefaultStrategy, kDefaultCouplingCap, 1);
    const auto b = achievable_bounds(ti, ms, kDefaultStrategy, kDefaultCouplingCap, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a[i].max_value == b[i].max_value);
      CHECK(a[i].argmax_index == b[i].argmax_index);
    }
  }
  SUBCASE("relabeling Y leaves the bound unchanged") {
    testgen::Gen g(12);
    const Joint3 j = g.joint(2, 3, 2);
    const Joint3 p = testgen::permuted(j, {0, 1}, {2, 0, 1}, {0, 1});
    for (Measure m : boundable_measures())
      CHECK(achievable_bound(j, m).max_value == doctest::Approx(achievable_bound(p, m).max_value).epsilon(1e-12));
  }
  SUBCASE("measures without a bound are rejected") {
    CHECK_THROWS_AS(achievable_bound(ti, Measure::pcc), Error);
    CHECK_THROWS_AS(achievable_bound(ti, Measure::cmi), Error);
  }
  SUBCASE("values never exceed their bound") {
    testgen::Gen g(13);
    for (int i = 0; i < 20; ++i) {
      const Joint3 j = g.joint_up_to(3, 0.2);
      const auto ms = boundable_measures();
      const auto bs = achievable_bounds(j, ms);
      const auto v = evaluate_all(ms, j);
      for (std::size_t k = 0; k < ms.size(); ++k)
        if (!std::isnan(v.values[k])) CHECK(v.values[k] <= bs[k].max_value + 1e-9);
    }
  }
}
