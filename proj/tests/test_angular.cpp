#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tailalg/angular.hpp"

using namespace tailalg;

TEST_CASE("family values") {
  CHECK(AngularFunction::comonotone()(0.5) == 0.5);
  CHECK(AngularFunction::comonotone()(0.2) == doctest::Approx(0.2));
  CHECK(AngularFunction::independence()(0.7) == 0.0);

  // clayton alpha=1 collapses to t(1-t)
  auto c1 = AngularFunction::clayton(1.0);
  CHECK(c1(0.3) == doctest::Approx(0.21).epsilon(1e-12));
  CHECK(c1(0.5) == doctest::Approx(0.25).epsilon(1e-12));

  auto lm = AngularFunction::linear_min(0.5, 1.0);  // min(t/2, 1-t)
  CHECK(lm(2.0 / 3.0) == doctest::Approx(1.0 / 3.0));
  CHECK(lm(0.2) == doctest::Approx(0.1));

  auto pl = AngularFunction::plateau(1.0 / 3.0);
  CHECK(pl(0.2) == doctest::Approx(0.2));
  CHECK(pl(0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(pl(0.9) == doctest::Approx(0.1));
}

TEST_CASE("clayton at alpha infinity degenerates to the upper bound") {
  auto a = AngularFunction::clayton(std::numeric_limits<double>::infinity());
  CHECK(a(0.5) == 0.5);
  CHECK(a.family() == AngularFunction::Family::comonotone);
}

TEST_CASE("clayton parameter domain") {
  CHECK_THROWS_AS(AngularFunction::clayton(0.0), DomainError);
  CHECK_THROWS_AS(AngularFunction::clayton(-1.0), DomainError);
}

TEST_CASE("one-sided slopes at kinks") {
  auto pl = AngularFunction::plateau(1.0 / 3.0);
  CHECK(pl.derivative(1.0 / 3.0, Side::right) == 0.0);
  CHECK(pl.derivative(1.0 / 3.0, Side::left) == 1.0);
  CHECK(pl.slope_at_zero() == 1.0);
  CHECK(pl.slope_at_one() == doctest::Approx(-1.0).epsilon(1e-14));

  auto c1 = AngularFunction::clayton(1.0);
  CHECK(c1.derivative(0.0, Side::right) == doctest::Approx(1.0));
  CHECK(c1.derivative(0.5, Side::right) == 0.0);

  auto lm = AngularFunction::linear_min(0.5, 1.0);
  CHECK(lm.slope_at_zero() == doctest::Approx(0.5));
}

TEST_CASE("transpose reflects and is an involution") {
  auto lm = AngularFunction::linear_min(0.5, 1.0);
  auto lt = lm.transposed();
  for (double t : testutil::simplex_grid(11)) {
    CHECK(lt(t) == doctest::Approx(lm(1.0 - t)).epsilon(1e-14));
  }
  auto pl = AngularFunction::plateau(0.25);
  auto ptt = pl.transposed().transposed();
  for (double t : testutil::simplex_grid(11)) {
    CHECK(ptt(t) == doctest::Approx(pl(t)).epsilon(1e-14));
  }
}

TEST_CASE("sample projection clips to the bound and concavifies") {
  // 2t(1-t) pokes above min(t, 1-t); the projection must come back in.
  std::vector<double> samples;
  for (double t : testutil::simplex_grid(41)) samples.push_back(2.0 * t * (1.0 - t));
  auto a = AngularFunction::from_samples(samples);
  auto rep = a.validate();
  CHECK(rep.ok);
  for (double t : testutil::simplex_grid(41)) {
    CHECK(a(t) <= std::min(t, 1.0 - t) + 1e-12);
  }
}

TEST_CASE("validation flags a bound violation") {
  auto bad = AngularFunction::piecewise_linear({0.0, 0.5, 1.0}, {0.0, 0.6, 0.0});
  auto rep = bad.validate();
  CHECK(!rep.ok);
  CHECK(!rep.issues.empty());
}

TEST_CASE("validation flags broken concavity") {
  auto bad = AngularFunction::piecewise_linear({0.0, 0.25, 0.5, 1.0},
                                               {0.0, 0.05, 0.3, 0.0});
  CHECK(!bad.validate().ok);
}

TEST_CASE("named families validate") {
  for (const auto& a : testutil::named_families()) {
    auto rep = a.validate();
    CHECK(rep.ok);
  }
}

TEST_CASE("random envelope functions validate and stay Lipschitz") {
  std::mt19937_64 rng(testutil::kSeed);
  for (int i = 0; i < 100; ++i) {
    auto a = testutil::random_pl_angular(rng);
    CHECK(a.validate().ok);
    const auto& t = a.knots();
    const auto& v = a.knot_values();
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
      const double s = (v[j + 1] - v[j]) / (t[j + 1] - t[j]);
      CHECK(std::abs(s) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("piecewise-linear constructor rejects bad knots") {
  CHECK_THROWS_AS(AngularFunction::piecewise_linear({0.0, 0.5}, {0.0, 0.1, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(
      AngularFunction::piecewise_linear({0.1, 0.5, 1.0}, {0.0, 0.1, 0.0}),
      DomainError);
  CHECK_THROWS_AS(
      AngularFunction::piecewise_linear({0.0, 0.5, 0.5, 1.0}, {0.0, 0.1, 0.1, 0.0}),
      DomainError);
}

TEST_CASE("max value") {
  CHECK(AngularFunction::clayton(1.0).max_value() == doctest::Approx(0.25));
  CHECK(AngularFunction::plateau(0.2).max_value() == doctest::Approx(0.2));
  CHECK(AngularFunction::comonotone().max_value() == 0.5);
}

TEST_CASE("arguments outside the simplex are rejected") {
  CHECK_THROWS_AS(AngularFunction::comonotone()(1.5), DomainError);
  CHECK_THROWS_AS(AngularFunction::comonotone()(-0.1), DomainError);
}
