#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "pcgrad/errors.hpp"
#include "pcgrad/indicators.hpp"
#include "pcgrad/repro.hpp"
#include "random_matrices.hpp"

using namespace pcgrad;
using testutil::throws_kind;

namespace {

// Independent power mean in long double over brute-force defects.
double oracle_kii(const MultiplicativePCMatrix& m, double p) {
  auto d = testutil::brute_force_defects(m);
  long double acc = 0;
  if (std::isinf(p)) {
    acc = *std::max_element(d.begin(), d.end());
  } else {
    for (double x : d) acc += std::pow(static_cast<long double>(x), static_cast<long double>(p));
    acc = std::pow(acc / d.size(), 1.0L / p);
  }
  return static_cast<double>(1.0L - std::exp(-acc));
}

const PExponent kInf = PExponent::infinity();
PExponent P(double p) { return PExponent::finite(p); }

}  // namespace

TEST_CASE("PExponent parsing") {
  CHECK(PExponent::parse("inf").is_infinite());
  CHECK(PExponent::parse("-1").value() == -1.0);
  CHECK(PExponent::parse("0.5").value() == 0.5);
  CHECK(throws_kind([] { PExponent::parse("0"); }, ErrorKind::InvalidExponent));
  CHECK(throws_kind([] { PExponent::parse("two"); }, ErrorKind::ParseError));
  CHECK(throws_kind([] { PExponent::parse("1.5x"); }, ErrorKind::ParseError));
  CHECK(throws_kind([] { PExponent::finite(NAN); }, ErrorKind::InvalidExponent));
  CHECK(PExponent::parse("inf").to_string() == "inf");
}

TEST_CASE("p_average") {
  const std::vector<double> c(7, 2.5);
  for (double p : {-3.0, -1.0, 0.5, 1.0, 2.0, 3.7}) CHECK(p_average(c, P(p)) == doctest::Approx(2.5));
  CHECK(p_average(c, kInf) == 2.5);

  CHECK(p_average(std::vector<double>{1, 4}, P(-1)) == doctest::Approx(1.6));
  const std::vector<double> d = {4, 2, 3, 1};
  CHECK(p_average(d, kInf) == 4.0);
  CHECK(p_average(d, P(2)) == doctest::Approx(std::sqrt(7.5)).epsilon(1e-14));
  CHECK(p_average(d, P(1)) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(p_average(d, P(-1)) == doctest::Approx(1.92).epsilon(1e-14));

  CHECK(throws_kind([] { p_average(std::vector<double>{1, 0}, P(-1)); }, ErrorKind::ZeroWithNegativeExponent));
  CHECK(p_average(std::vector<double>{1, 0}, P(0.5)) == doctest::Approx(0.25));
}

TEST_CASE("p_average is monotone in each argument") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = testutil::uniform_vector(rng, 6, 0.0, 4.0);
    for (PExponent p : {P(0.5), P(1), P(2), P(3), kInf}) {
      const double base = p_average(x, p);
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto y = x;
        y[i] += 0.25;
        CHECK(p_average(y, p) >= base);
      }
    }
  }
}

TEST_CASE("kii3 closed forms") {
  CHECK(kii3(1, 1, 1) == 0.0);
  CHECK(kii3(std::exp(-2.0), std::exp(3.0), std::exp(1.0)) == doctest::Approx(1 - std::exp(-4.0)).epsilon(1e-15));
  CHECK(kii3(1, 2, 1) == doctest::Approx(0.5));
  CHECK(kii3_min_form(1, 2, 1) == doctest::Approx(0.5));

  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> lg(-5.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = std::exp(lg(rng)), y = std::exp(lg(rng)), z = std::exp(lg(rng));
    CHECK(std::abs(kii3(x, y, z) - kii3_min_form(x, y, z)) < 1e-12);
  }
}

TEST_CASE("kii on the 4x4 reference matrix") {
  auto m = reference_matrix_4x4();
  CHECK(kii(m, P(1)) == doctest::Approx(1 - std::exp(-2.5)).epsilon(1e-13));
  CHECK(kii(m, P(2)) == doctest::Approx(1 - std::exp(-std::sqrt(7.5))).epsilon(1e-13));
  CHECK(kii(m, kInf) == doctest::Approx(1 - std::exp(-4.0)).epsilon(1e-13));
  CHECK(kii(m, P(-1)) == doctest::Approx(1 - std::exp(-1.92)).epsilon(1e-13));
  const double half = (2 + std::sqrt(2.0) + std::sqrt(3.0) + 1) / 4;
  CHECK(kii(m, P(0.5)) == doctest::Approx(1 - std::exp(-half * half)).epsilon(1e-13));
  CHECK(kii(m, P(1)) == doctest::Approx(0.917915).epsilon(1e-6));
  CHECK(kii(m, P(-1)) == doctest::Approx(0.853393).epsilon(1e-6));
  CHECK(kii(m, P(0.5)) == doctest::Approx(0.905677).epsilon(1e-6));

  // Strictly increasing along the power-mean ladder.
  const std::vector<PExponent> ladder = {P(-1), P(0.5), P(1), P(2), kInf};
  for (std::size_t i = 1; i < ladder.size(); ++i) CHECK(kii(m, ladder[i]) > kii(m, ladder[i - 1]));
}

TEST_CASE("kii matches an independent oracle") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 6;
    auto m = testutil::random_multiplicative(rng, n);
    for (double p : {-1.0, 0.5, 1.0, 2.0, 3.0, static_cast<double>(INFINITY)}) {
      const PExponent pe = std::isinf(p) ? kInf : P(p);
      CHECK(kii(m, pe) == doctest::Approx(oracle_kii(m, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("range and consistency characterization") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testutil::random_multiplicative(rng, 3 + trial % 4, -6, 6);
    for (PExponent p : {P(0.5), P(1), P(2), kInf}) {
      const double v = kii(m, p);
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
      CHECK(v > 0.0);
    }
    auto w = testutil::uniform_vector(rng, 5, 0.1, 10.0);
    auto c = consistent_from_weights(PriorityVector(w));
    for (PExponent p : {P(0.5), P(1), P(2), kInf}) CHECK(kii(c, p) < 1e-13);
  }
  std::vector<double> ones(upper_size(4), 1.0);
  CHECK(kii(MultiplicativePCMatrix::from_upper(4, ones), P(2)) == 0.0);
}

TEST_CASE("p < 0 is undefined on consistent triads") {
  auto c = consistent_from_weights(PriorityVector({1, 2, 3, 4}));
  CHECK(throws_kind([&] { kii(c, P(-1)); }, ErrorKind::IndicatorUndefined));
  try {
    kii(MultiplicativePCMatrix::from_upper(4, {1, 1, 1, 2, 1, 1}), P(-1));
    FAIL("expected IndicatorUndefined");
  } catch (const PcError& e) {
    CHECK(std::string(e.what()).find("(1,2,3)") != std::string::npos);
  }
}

TEST_CASE("order 3 collapses to kii3") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testutil::random_multiplicative(rng, 3);
    const auto u = m.upper();
    const double ref = kii3(u[0], u[1], u[2]);
    for (PExponent p : {P(-1), P(0.5), P(1), P(2), kInf}) CHECK(std::abs(kii(m, p) - ref) < 1e-10);
  }
}

TEST_CASE("permutation and transpose invariance") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial % 2 == 0 ? 4 : 5;
    auto m = testutil::random_multiplicative(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto pm = m.permuted(perm);
    auto tm = m.transposed();
    for (PExponent p : {P(-1), P(0.5), P(1), P(2), kInf}) {
      const double ref = kii(m, p);
      CHECK(std::abs(kii(pm, p) - ref) < 1e-12);
      CHECK(std::abs(kii(tm, p) - ref) < 1e-12);
    }
  }
}

TEST_CASE("large p approaches the maximum") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = trial % 2 == 0 ? 4 : 5;
    auto b = testutil::random_additive_with_defects(rng, n, 0.1, 5.0);
    const double top = kii(b, kInf);
    CHECK(std::abs(kii(b, P(64)) - top) < 0.02);
    double prev = -1.0;
    for (double p : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
      const double v = kii(b, P(p));
      CHECK(v >= prev);
      CHECK(v <= top + 1e-15);
      prev = v;
    }
  }
}
