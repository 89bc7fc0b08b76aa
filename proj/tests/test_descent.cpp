#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pcgrad/descent.hpp"
#include "pcgrad/errors.hpp"
#include "pcgrad/repro.hpp"
#include "random_matrices.hpp"

using namespace pcgrad;
using testutil::throws_kind;

namespace {

PExponent P(double p) { return PExponent::finite(p); }

double max_defect(const AdditivePCMatrix& b) {
  auto d = triad_defects(b);
  return *std::max_element(d.begin(), d.end());
}

void check_result_invariants(const DescentResult& r, PExponent p) {
  REQUIRE(!r.trace.records.empty());
  double lowest = r.trace.records.front().indicator;
  for (const auto& rec : r.trace.records) lowest = std::min(lowest, rec.indicator);
  CHECK(r.best_indicator == lowest);
  CHECK(r.trace.records[r.best_iter].indicator == r.best_indicator);
  CHECK(std::abs(kii(r.best_additive(), p) - r.best_indicator) <= 1e-12);
  for (std::size_t i = 0; i < r.trace.records.size(); ++i) CHECK(r.trace.records[i].iter == i);
}

}  // namespace

TEST_CASE("config validation") {
  DescentConfig cfg;
  CHECK_NOTHROW(cfg.validate(4));
  auto bad = [](auto mutate, ErrorKind kind) {
    DescentConfig c;
    mutate(c);
    return throws_kind([&] { c.validate(4); }, kind);
  };
  CHECK(bad([](DescentConfig& c) { c.h = 0; }, ErrorKind::InvalidConfig));
  CHECK(bad([](DescentConfig& c) { c.l = -1; }, ErrorKind::InvalidConfig));
  CHECK(bad([](DescentConfig& c) { c.eps = 0; }, ErrorKind::InvalidConfig));
  CHECK(bad([](DescentConfig& c) { c.max_iter = 0; }, ErrorKind::InvalidConfig));
  CHECK(bad([](DescentConfig& c) { c.stall_window = 0; }, ErrorKind::InvalidConfig));
  CHECK(bad([](DescentConfig& c) { c.gradient = GradientKind::Analytic; }, ErrorKind::NonSmoothExponent));
  cfg.gradient = GradientKind::Analytic;
  CHECK_NOTHROW(cfg.validate(3));
  cfg.p = PExponent::infinity();
  CHECK_THROWS(cfg.validate(5));
}

TEST_CASE("step_multiplicative") {
  auto m = reference_matrix_3x3();
  CHECK(step_multiplicative(m, {3, {0, 0, 0}}, 0.1) == m);

  auto next = step_multiplicative(m, {3, {0.135335, -0.000912, 0.006738}}, 0.1);
  CHECK(next.upper()[0] == doctest::Approx(0.148869).epsilon(1e-5));
  CHECK(next.upper()[1] == doctest::Approx(20.085446).epsilon(1e-7));
  CHECK(next.upper()[2] == doctest::Approx(2.718956).epsilon(1e-6));

  std::vector<ClampEvent> clamps;
  auto small = MultiplicativePCMatrix::from_upper(3, {0.01, 1, 1});
  auto guarded = step_multiplicative(small, {3, {-100, 0, 0}}, 0.1, &clamps, 7);
  CHECK(guarded.upper()[0] > 0.0);
  CHECK(guarded.upper()[1] == 1.0);
  REQUIRE(clamps.size() == 1);
  CHECK(clamps[0].iter == 7);
  CHECK(clamps[0].slot == 0);
  CHECK(clamps[0].halvings >= 1);

  CHECK(throws_kind([&] { step_multiplicative(small, {3, {-1e300, 0, 0}}, 0.1); }, ErrorKind::PositivityFailure));
}

TEST_CASE("step_additive") {
  auto b = reference_additive_3x3();
  CHECK(step_additive(b, {3, {0, 0, 0}}, 0.1) == b);
  const double f = std::exp(-4.0);
  auto next = step_additive(b, {3, {f, -f, f}}, 0.1);
  CHECK(next.upper()[0] == doctest::Approx(-1.998168).epsilon(1e-6));
  CHECK(next.upper()[1] == doctest::Approx(2.998168).epsilon(1e-6));
  CHECK(next.upper()[2] == doctest::Approx(1.001832).epsilon(1e-6));

  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    auto start = testutil::random_additive(rng, 4);
    DirectionVector v{4, testutil::uniform_vector(rng, 6, -2, 2)};
    auto a = to_multiplicative(step_additive(start, v, 0.3));
    auto m0 = to_multiplicative(start);
    for (std::size_t s = 0; s < 6; ++s)
      CHECK(a.upper()[s] == doctest::Approx(m0.upper()[s] * std::pow(std::exp(v.components[s]), 0.3)).epsilon(1e-12));
  }
}

TEST_CASE("consistent start converges at iteration 0") {
  DescentConfig cfg;
  cfg.p = P(2);
  cfg.eps = 1e-6;
  auto c = consistent_from_weights(PriorityVector({1, 3, 5, 7}));
  auto r = run(c, cfg);
  CHECK(r.stop_reason == StopReason::Converged);
  CHECK(r.best_iter == 0);
  CHECK(r.best_matrix() == c);
  CHECK(r.trace.records.size() == 1);
}

TEST_CASE("3x3 multiplicative and additive runs") {
  DescentConfig cfg;
  auto r = run(reference_matrix_3x3(), cfg);
  check_result_invariants(r, cfg.p);
  CHECK(r.best_upper[0] == doctest::Approx(4.041).epsilon(0.01));
  CHECK(r.best_upper[1] == doctest::Approx(19.675).epsilon(0.01));
  CHECK(r.best_upper[2] == doctest::Approx(4.868).epsilon(0.01));

  DescentConfig add;
  add.scheme = Scheme::Additive;
  add.h = 0.001;
  add.l = 0.0001;
  auto ra = run(reference_additive_3x3(), add);
  check_result_invariants(ra, add.p);
  CHECK(ra.best_upper[0] == doctest::Approx(-0.667).epsilon(0.01));
  CHECK(ra.best_upper[1] == doctest::Approx(1.667).epsilon(0.01));
  CHECK(ra.best_upper[2] == doctest::Approx(2.333).epsilon(0.01));

  // Same fixed-point quality, different matrices.
  CHECK(max_defect(r.best_additive()) < 0.05);
  CHECK(max_defect(ra.best_additive()) < 0.05);
  auto ea = ra.best_matrix();
  double gap = 0.0;
  for (std::size_t s = 0; s < 3; ++s) gap = std::max(gap, std::abs(ea.upper()[s] - r.best_upper[s]));
  CHECK(gap > 0.5);

  // Ordering signatures.
  CHECK(r.best_upper[0] < r.best_upper[2]);
  CHECK(r.best_upper[2] < r.best_upper[1]);
  CHECK(ra.best_upper[0] < ra.best_upper[1]);
  CHECK(ra.best_upper[1] < ra.best_upper[2]);
}

TEST_CASE("4x4 runs end at different matrices in the two schemes") {
  DescentConfig cfg;
  cfg.p = PExponent::infinity();
  auto rm = run(reference_matrix_4x4(), cfg);
  cfg.scheme = Scheme::Additive;
  auto ra = run(reference_matrix_4x4(), cfg);
  check_result_invariants(rm, cfg.p);
  check_result_invariants(ra, cfg.p);
  CHECK(max_defect(ra.best_additive()) < 0.05);
  double gap = 0.0;
  auto ma = ra.best_matrix();
  for (std::size_t s = 0; s < 6; ++s) gap = std::max(gap, std::abs(ma.upper()[s] - rm.best_upper[s]));
  CHECK(gap > 0.1);
}

// The multiplicative max-defect run with h = 0.01 stalls at a largest defect
// near 0.08; the published best iterate of the same run has 0.056.
TEST_CASE("4x4 multiplicative max-defect run gets every defect below 0.05" * doctest::may_fail()) {
  DescentConfig cfg;
  cfg.p = PExponent::infinity();
  auto rm = run(reference_matrix_4x4(), cfg);
  CHECK(max_defect(rm.best_additive()) < 0.05);
}

TEST_CASE("every iterate is reciprocal") {
  DescentConfig cfg;
  cfg.p = P(2);
  cfg.max_iter = 400;
  auto r = run(reference_matrix_4x4(), cfg);
  for (const auto& rec : r.trace.records) {
    auto m = MultiplicativePCMatrix::from_upper(4, rec.upper);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(m(i, i) == 1.0);
      for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(m(i, j) * m(j, i) - 1.0) <= 4e-16);
    }
  }
}

namespace {

// Indicator never rises while it is more than 10 h above the run minimum.
void check_weakly_monotone(Scheme scheme, double p) {
  std::mt19937_64 rng(52);
  for (int seed = 0; seed < 20; ++seed) {
    auto b = testutil::random_additive_with_defects(rng, 4, 0.2, 5.0);
    DescentConfig cfg;
    cfg.scheme = scheme;
    cfg.gradient = GradientKind::Analytic;
    cfg.p = P(p);
    cfg.h = 0.01;
    cfg.max_iter = 20000;
    auto r = run(b, cfg);
    check_result_invariants(r, cfg.p);
    const auto& recs = r.trace.records;
    std::size_t rises = 0;
    for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
      if (recs[k].indicator <= r.best_indicator + 10 * cfg.h) break;
      if (recs[k + 1].indicator > recs[k].indicator) ++rises;
    }
    CAPTURE(seed);
    CHECK(rises == 0);
  }
}

}  // namespace

TEST_CASE("additive analytic runs, p = 2, decrease until close to their minimum") {
  check_weakly_monotone(Scheme::Additive, 2.0);
}

// Steps scale like 1/a^2 in a_ij, so small entries overshoot early.
TEST_CASE("multiplicative analytic runs, p = 2, decrease until close to their minimum" * doctest::may_fail()) {
  check_weakly_monotone(Scheme::Multiplicative, 2.0);
}

// d^(p-1) blows up as any one triad nears consistency; constant steps
// oscillate across that ridge long before the overall minimum.
TEST_CASE("analytic runs, p = 1/2, decrease until close to their minimum" * doctest::may_fail()) {
  check_weakly_monotone(Scheme::Additive, 0.5);
  check_weakly_monotone(Scheme::Multiplicative, 0.5);
}

TEST_CASE("stop reasons") {
  DescentConfig cfg;
  cfg.max_iter = 5;
  auto r = run(reference_matrix_4x4(), cfg);
  CHECK(r.stop_reason == StopReason::MaxIter);
  CHECK(r.trace.records.size() == 6);
  CHECK(std::isnan(r.trace.records.back().direction_norm));
  CHECK(r.trace.records.front().direction_norm > 0.0);

  // p = -1 from a matrix with a consistent triad: undefined from the start.
  cfg.p = P(-1);
  auto u = run(MultiplicativePCMatrix::from_upper(4, {2, 1, 1, 1, 1, 1}), cfg);
  CHECK(u.stop_reason == StopReason::IndicatorUndefined);
  CHECK_FALSE(u.stop_detail.empty());

  cfg = DescentConfig{};
  cfg.stall_window = 3;
  auto s = run(reference_matrix_3x3(), cfg);
  CHECK(s.stop_reason == StopReason::Stalled);
  CHECK(s.trace.records.size() - 1 - s.best_iter >= 3);
}

TEST_CASE("runs are deterministic") {
  DescentConfig cfg;
  cfg.p = P(0.5);
  auto a = run(reference_matrix_4x4(), cfg);
  auto b = run(reference_matrix_4x4(), cfg);
  REQUIRE(a.trace.records.size() == b.trace.records.size());
  for (std::size_t i = 0; i < a.trace.records.size(); ++i) {
    CHECK(a.trace.records[i].indicator == b.trace.records[i].indicator);
    CHECK(a.trace.records[i].upper == b.trace.records[i].upper);
  }
}
