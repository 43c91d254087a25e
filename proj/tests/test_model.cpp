#include "perceptlet/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "perceptlet/basis.hpp"

using namespace perceptlet;

namespace {

bool near(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol;
}

PerceptionModel five_weight_sin() {
  PerceptionModel m(Perceptlet::sine(), 3);
  m.set_weight({1, Dyadic::make(-1, 0)}, 0.8);
  m.set_weight({1, Dyadic::make(1, 0)}, 0.2);
  m.set_weight({2, Dyadic::make(0, 0)}, 0.0);
  m.set_weight({3, Dyadic::make(-1, 1)}, -0.062);
  m.set_weight({3, Dyadic::make(1, 1)}, 0.062);
  return m;
}

PerceptionModel square_fit_linear() {
  PerceptionModel m(Perceptlet::linear(), 3);
  m.set_weight({1, Dyadic::make(-1, 0)}, 1.0);
  m.set_weight({1, Dyadic::make(1, 0)}, 1.0);
  m.set_weight({2, Dyadic::make(0, 0)}, -1.0);
  m.set_weight({3, Dyadic::make(-1, 1)}, -0.25);
  m.set_weight({3, Dyadic::make(1, 1)}, -0.25);
  return m;
}

// Straight-line reference for the piecewise-linear family, bypassing the
// library's basis machinery.
double tent_at(double x, double center, int level) {
  if (level == 1) {
    return center > 0 ? (1.0 + x) / 2.0 : (1.0 - x) / 2.0;
  }
  const double scale = level == 2 ? 1.0 : std::ldexp(1.0, level - 2);
  const double t = scale * (x - center);
  return std::abs(t) >= 1.0 ? 0.0 : 1.0 - std::abs(t);
}

PerceptionModel random_model(std::mt19937& rng, int pr) {
  PerceptionModel m(Perceptlet::sine(), pr);
  std::uniform_real_distribution<double> w(-0.5, 0.5);
  for (int level = 1; level <= pr; ++level) {
    for (const Dyadic& c : centers_at_level(level)) {
      m.set_weight({level, c}, w(rng));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("model construction guards") {
  CHECK_THROWS_AS(PerceptionModel(Perceptlet::linear(), 0),
                  std::domain_error);
  CHECK_THROWS_AS(PerceptionModel(Perceptlet::linear(), 41),
                  std::domain_error);
  CHECK_THROWS_AS(
      PerceptionModel(Perceptlet::custom([](double x) { return x * x; }), 2),
      std::invalid_argument);
  const PerceptionModel m(Perceptlet::sine(), 4);
  CHECK_EQ(m.pr(), 4);
  CHECK_EQ(m.perceptlet().name(), "sin");
}

TEST_CASE("weights are stored per basis") {
  PerceptionModel m(Perceptlet::linear(), 3);
  const BasisId id{3, Dyadic::make(1, 1)};
  CHECK_FALSE(m.weight(id).has_value());
  m.set_weight(id, 0.25);
  CHECK_EQ(m.weight(id).value(), 0.25);
  CHECK_EQ(m.weights().size(), 1);
  m.remove_weight(id);
  CHECK(m.weights().empty());
  CHECK_THROWS_AS(m.set_weight({4, Dyadic::make(1, 2)}, 0.1),
                  std::domain_error);
  CHECK_THROWS_AS(m.set_weight({3, Dyadic::make(1, 2)}, 0.1),
                  std::domain_error);
}

TEST_CASE("five weight example model") {
  const PerceptionModel m = five_weight_sin();
  CHECK(near(m.evaluate(-1.0, 3), 0.8));
  CHECK(near(m.evaluate(1.0, 3), 0.2));
  CHECK(near(m.evaluate(0.0, 3), 0.5));
  CHECK(near(m.evaluate(0.0, 1), 0.5));

  const auto levels = m.realize_all_levels(0.0);
  REQUIRE_EQ(levels.size(), 3);
  CHECK(near(levels[0], 0.5));
  CHECK(near(levels[1], 0.5));
  CHECK(near(levels[2], 0.5));
}

TEST_CASE("square fit model evaluates exactly at grid nodes") {
  const PerceptionModel m = square_fit_linear();
  CHECK(near(m.evaluate(0.25, 3), 0.125));
  CHECK(near(m.evaluate(-0.5, 3), 0.25));
  CHECK(near(m.evaluate(0.0, 3), 0.0));
  CHECK(near(m.evaluate(1.0, 3), 1.0));

  SUBCASE("partial realizations coarsen the estimate") {
    const auto levels = m.realize_all_levels(0.5);
    REQUIRE_EQ(levels.size(), 3);
    CHECK(near(levels[0], 1.0));
    CHECK(near(levels[1], 0.5));
    CHECK(near(levels[2], 0.25));
  }
  SUBCASE("independent summation agrees") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> span(-1.0, 1.0);
    const std::vector<std::pair<std::pair<double, int>, double>> terms = {
        {{-1.0, 1}, 1.0}, {{1.0, 1}, 1.0},   {{0.0, 2}, -1.0},
        {{-0.5, 3}, -0.25}, {{0.5, 3}, -0.25}};
    for (int i = 0; i < 300; ++i) {
      const double x = span(rng);
      double expected = 0.0;
      for (const auto& [key, w] : terms) {
        expected += w * tent_at(x, key.first, key.second);
      }
      CHECK(near(m.evaluate(x, 3), expected));
    }
  }
}

TEST_CASE("evaluation at the left edge reproduces the mother weight") {
  std::mt19937 rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    PerceptionModel m = random_model(rng, 4);
    const double w_left = m.weight({1, Dyadic::make(-1, 0)}).value();
    for (int level = 1; level <= 4; ++level) {
      CHECK(near(m.evaluate(-1.0, level), w_left));
    }
  }
}

TEST_CASE("level differences isolate single corrections") {
  const PerceptionModel m = five_weight_sin();
  CHECK(near(m.level_difference(0.0, 2), 0.0));

  PerceptionModel k(Perceptlet::sine(), 3);
  k.set_weight({1, Dyadic::make(-1, 0)}, 0.5);
  k.set_weight({1, Dyadic::make(1, 0)}, 0.2);
  k.set_weight({2, Dyadic::make(0, 0)}, 0.35);
  k.set_weight({3, Dyadic::make(-1, 1)}, 0.088);
  k.set_weight({3, Dyadic::make(1, 1)}, 0.081);
  CHECK(near(k.level_difference(0.5, 3), 0.081));
  CHECK(near(k.level_difference(1.0, 3), 0.0));
  CHECK(near(k.level_difference(-1.0, 3), 0.0));
  CHECK_THROWS_AS(k.level_difference(0.0, 1), std::domain_error);
  CHECK_THROWS_AS(k.level_difference(0.0, 4), std::domain_error);
}

TEST_CASE("realizations telescope and stay pinned at the coarse nodes") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    PerceptionModel m = random_model(rng, 5);
    for (int i = 0; i <= 1000; ++i) {
      const double x = -1.0 + 2.0 * i / 1000.0;
      const auto levels = m.realize_all_levels(x);
      REQUIRE_EQ(levels.size(), 5);
      double acc = levels[0];
      for (int level = 2; level <= 5; ++level) {
        acc += m.level_difference(x, level);
        CHECK(near(levels[static_cast<std::size_t>(level - 1)], acc));
      }
      CHECK(near(m.evaluate(x), levels[4]));
    }
    for (int level = 1; level <= 4; ++level) {
      for (const Dyadic& c : centers_at_level(level)) {
        const double pinned = m.evaluate(c.value(), level);
        for (int finer = level + 1; finer <= 5; ++finer) {
          CHECK(near(m.evaluate(c.value(), finer), pinned));
        }
      }
    }
  }
}

TEST_CASE("evaluate rejects out of range input") {
  const PerceptionModel m = five_weight_sin();
  CHECK_THROWS_AS(m.evaluate(1.5, 3), std::domain_error);
  CHECK_THROWS_AS(m.evaluate(-1.0 - 1e-6, 2), std::domain_error);
  CHECK_THROWS_AS(m.evaluate(0.0, 0), std::domain_error);
  CHECK_THROWS_AS(m.evaluate(0.0, 4), std::domain_error);
}

TEST_CASE("node counts and resolutions invert each other") {
  CHECK_EQ(basis_count(1), 2);
  CHECK_EQ(basis_count(2), 3);
  CHECK_EQ(basis_count(3), 5);
  CHECK_EQ(basis_count(4), 9);
  CHECK_EQ(basis_count(5), 17);
  CHECK_EQ(basis_count(6), 33);
  CHECK_EQ(resolution_for(17), 5);
  CHECK_EQ(resolution_for(3), 2);
  CHECK_EQ(resolution_for(2), 1);
  for (int pr = 1; pr <= 20; ++pr) {
    CHECK_EQ(resolution_for(basis_count(pr)), pr);
  }
  CHECK_THROWS_AS(resolution_for(10), std::domain_error);
  CHECK_THROWS_AS(resolution_for(1), std::domain_error);
  CHECK_THROWS_AS(basis_count(0), std::domain_error);
}

TEST_CASE("truncation drops small refinements only") {
  PerceptionModel m = five_weight_sin();
  m.set_weight({2, Dyadic::make(0, 0)}, 0.3);

  SUBCASE("zero threshold keeps everything") {
    const TruncationResult r = truncate(m, 0.0);
    CHECK_EQ(r.removed_count, 0);
    CHECK_EQ(r.error_bound, 0.0);
    CHECK_EQ(r.model.weights().size(), m.weights().size());
  }
  SUBCASE("level one anchors always survive") {
    const TruncationResult r = truncate(m, 10.0);
    CHECK_EQ(r.removed_count, 3);
    CHECK_EQ(r.model.weights().size(), 2);
    CHECK(near(r.error_bound, 0.3 + 0.062 + 0.062));
  }
  SUBCASE("the bound covers the worst case on a fine sweep") {
    const TruncationResult r = truncate(m, 0.5);
    CHECK_EQ(r.removed_count, 3);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = -1.0 + 2.0 * i / 1000.0;
      worst = std::max(worst,
                       std::abs(m.evaluate(x, 3) - r.model.evaluate(x, 3)));
    }
    CHECK(worst <= r.error_bound + 1e-12);
  }
  SUBCASE("negative thresholds are rejected") {
    CHECK_THROWS_AS(truncate(m, -0.1), std::domain_error);
  }
}

TEST_CASE("perception space mappings") {
  CHECK_EQ(to_perception_space(0.0), 0.0);
  CHECK(near(to_perception_space(1.0), 0.7615941559557649));
  CHECK(near(from_perception_space(to_perception_space(2.5)), 2.5, 1e-9));
  CHECK(near(to_perception_space(from_perception_space(0.3)), 0.3));
  CHECK_THROWS_AS(from_perception_space(1.0), std::domain_error);
  CHECK_THROWS_AS(from_perception_space(-1.0), std::domain_error);
  CHECK(to_perception_space(5.0) < 1.0);
}

TEST_CASE("samples validate their coordinates") {
  const Sample s = Sample::make(0.5, 0.25);
  CHECK_EQ(s.x, 0.5);
  CHECK_EQ(s.y, 0.25);
  CHECK_THROWS_AS(Sample::make(1.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(Sample::make(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(Sample::make(0.0, -0.25), std::domain_error);
  CHECK_THROWS_AS(Sample::make(std::nan(""), 0.0), std::domain_error);
  CHECK_THROWS_AS(Sample::make(0.0, std::nan("")), std::domain_error);
}
