#include <doctest.h>

#include <cmath>

#include "../support/gen.hpp"
#include "dircorr/bounds.hpp"
#include "dircorr/do_calculus.hpp"
#include "dircorr/error.hpp"
#include "dircorr/removal.hpp"
#include "dircorr/toy_models.hpp"

using namespace dircorr;

namespace {

// Independent brute force over (y, y1, y2, x, z).
double decision_cell(const DecisionParams& p, int x, int y, int z) {
  auto bern = [](double q, bool same) { return same ? (1 + q) / 2 : (1 - q) / 2; };
  double s = 0.0;
  for (int y1 = 0; y1 < 2; ++y1)
    for (int y2 = 0; y2 < 2; ++y2) {
      double py;
      if (y1 == y2) py = y == y1;
      else py = y == 0 ? (1 + p.q4) / 2 : (1 - p.q4) / 2;
      s += py * bern(p.q3, y1 == x) * bern(p.q2, y2 == z) * bern(p.q1, x == z) * bern(p.q0, z == 0);
    }
  return s;
}

}  // namespace

TEST_CASE("decision model") {
  SUBCASE("fully coupled case reduces to the diagonal") {
    const Joint3 j = decision_model_joint({0, 1, 1, 1, 0});
    for (std::size_t i = 0; i < 8; ++i) CHECK(j.probs()[i] == doctest::Approx(testgen::diagonal().probs()[i]));
  }
  SUBCASE("no couplings give mutual independence") {
    const Joint3 j = decision_model_joint({0.4, 0, 0, 0, 0.3});
    CHECK(mutual_information(marginal(j, Axis::X, Axis::Y)) == doctest::Approx(0.0));
    CHECK(mutual_information(marginal(j, Axis::X, Axis::Z)) == doctest::Approx(0.0));
    CHECK(mutual_information(marginal(j, Axis::Y, Axis::Z)) == doctest::Approx(0.0));
    CHECK(rcmi(j) == doctest::Approx(0.0));
    CHECK(nace(do_conditional(j)) == doctest::Approx(0.0));
  }
  SUBCASE("matches a brute-force sum") {
    const DecisionParams p{0, 0.5, 0.3, 0.7, 0.2};
    const Joint3 j = decision_model_joint(p);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) CHECK(j(x, y, z) == doctest::Approx(decision_cell(p, x, y, z)).epsilon(1e-15));
    CHECK(std::isfinite(pmi(j, kDefaultStrategy)));
  }
  CHECK_THROWS_AS(decision_model_joint({0, 1.5, 0, 0, 0}), Error);
  CHECK_THROWS_AS(decision_model_joint({0, 0, 0, 0, -1.01}), Error);
}

TEST_CASE("simple model") {
  SUBCASE("four-case formula on an 11 x 11 grid") {
    for (int a = 0; a <= 10; ++a)
      for (int b = 0; b <= 10; ++b) {
        const double l0 = -1.0 + 0.2 * a, l1 = 0.1 * b;
        const Joint3 j = simple_model_joint({l0, l1});
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
              double e;
              if (x == z) e = y == z ? (1 + l0) / 4 : 0.0;
              else e = y == x ? (1 - l0) * l1 / 4 : (1 - l0) * (1 - l1) / 4;
              CHECK(j(x, y, z) == doctest::Approx(e).epsilon(1e-15));
            }
      }
  }
  SUBCASE("lambda1 = 1 with lambda0 = 0") {
    const Joint3 j = simple_model_joint({0, 1});
    CHECK(j(0, 0, 0) == doctest::Approx(0.25));
    CHECK(j(0, 0, 1) == doctest::Approx(0.25));
    CHECK(nace(do_conditional(j)) == doctest::Approx(1.0));
  }
  SUBCASE("lambda1 = 0 means Y = Z") {
    const Joint3 j = simple_model_joint({0.3, 0});
    CHECK(cmi(j) == doctest::Approx(0.0));
    CHECK(nace(do_conditional(j)) == doctest::Approx(0.0));
  }
  SUBCASE("lambda0 = 1 keeps only the diagonal") {
    const Joint3 j = simple_model_joint({1, 0.4});
    CHECK(j(0, 0, 0) == doctest::Approx(0.5));
    CHECK(j(1, 1, 1) == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(simple_model_joint({0, 1.2}), Error);
  CHECK_THROWS_AS(simple_model_joint({0, -0.1}), Error);
}

TEST_CASE("observationally equivalent corpus") {
  const auto c = markov_equivalent_pair();
  REQUIRE(c.size() == 2);
  CHECK(c[0].name == "model_A");
  CHECK(c[1].name == "model_B");
  const Joint3& j = c[0].joint;
  CHECK(std::equal(j.probs().begin(), j.probs().end(), c[1].joint.probs().begin()));
  CHECK(cmi(j) == 0.0);
  CHECK(nace(do_conditional(j, SparseStrategy::Marginal)) == doctest::Approx(0.5));
  for (const auto& info : all_measures())
    if (info.direct && info.id != Measure::pc) {
      const double v = evaluate(info.id, j, {SparseStrategy::ConditionalMarginal, std::nullopt});
      CHECK_MESSAGE(v == doctest::Approx(0.0), info.name);
    }
}

TEST_CASE("sweeps") {
  const auto grid = linear_grid(0, 1, 21);
  CHECK(grid.size() == 21);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  const Measure ms[] = {Measure::nace, Measure::cmi};
  const auto rows = sweep(ToyModel::Simple, {}, {0.5, 0}, "lambda1", grid, ms);
  CHECK(rows.size() == 42);
  CHECK(rows[0].value == doctest::Approx(0.0));
  CHECK(rows[1].value == doctest::Approx(0.0));
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i].value >= rows[i - 2].value - 1e-9);
  CHECK_THROWS_AS(sweep(ToyModel::Simple, {}, {}, "q3", grid, ms), Error);
  CHECK_THROWS_AS(sweep(ToyModel::Decision, {}, {}, "q3", linear_grid(0, 2, 3), ms), Error);
}
