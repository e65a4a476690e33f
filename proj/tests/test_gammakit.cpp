#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "eggshell/error.hpp"
#include "eggshell/gammakit.hpp"

using namespace eggshell;
using namespace eggshell::gammakit;

namespace {

struct Point {
  double x;
  double value;
};

// mpmath, 60 digits (tests/oracles/gamma_oracle.py).
const Point kLogGamma[] = {
    {1e-3, 6.9071788853838536617},      {0.01, 4.5994798780420217016},
    {0.1, 2.252712651734205902},        {0.5, 0.57236494292470008707},
    {0.9, 0.066376239734742954426},     {0.999, 0.00057803853289138023817},
    {1.0001, -0.000057713342220471268005}, {1.5, -0.12078223763524522235},
    {1.9999, -0.000042275208772153458011}, {2.0001, 0.000042281658112919946317},
    {2.5, 0.28468287047291915963},      {3.7, 1.4280723266653881292},
    {10.5, 13.940625219403763633},      {33.3, 82.603723581654943008},
    {100.25, 360.28455963776423497},    {1234.5, 7550.5509010778948957},
    {1e5, 1051287.7089736568949},       {3.3e6, 46231122.401463183802},
    {1e8, 1742068066.1038347093},
};

struct Ratio {
  Expansion tag;
  double a, b, x, value;
};

const Ratio kRatios[] = {
    {Expansion::R1, 0.5, 0.0, 100.0, 0.99875078612625182106},
    {Expansion::R1, 2.3, 0.7, 64.0, 1.0250917112457409183},
    {Expansion::R1, 0.2, 3.0, 4096.0, 0.99924847790046093738},
    {Expansion::R2, 1.7, 0.0, 64.0, 0.95663887714271706782},
    {Expansion::R2, 0.3, 0.0, 1000.0, 0.99990998605405133136},
    {Expansion::R3, 1.0, 1.0, 10.0, 1.0909090909090909091},
    {Expansion::R3, 2.5, 0.4, 128.0, 1.0076366655235422782},
};

ExpansionKind kind_of(const Ratio& r) {
  const bool with_b = r.tag == Expansion::R1 || r.tag == Expansion::R3 || r.tag == Expansion::R5;
  return ExpansionKind::make(r.tag, r.a, with_b ? std::optional(r.b) : std::nullopt);
}

std::vector<double> doubling(double x0, double x1) {
  std::vector<double> xs;
  for (double x = x0; x <= x1; x *= 2.0) xs.push_back(x);
  return xs;
}

}  // namespace

TEST_CASE("log_gamma trivial values") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(2.0) == 0.0);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("log_gamma matches the high-precision reference") {
  for (const auto& pt : kLogGamma) {
    CAPTURE(pt.x);
    const double got = log_gamma(pt.x);
    CHECK(std::abs(got - pt.value) <= 1e-13 * std::max(1.0, std::abs(pt.value)));
  }
}

TEST_CASE("log_gamma rejects nonpositive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
}

TEST_CASE("log_multibeta") {
  const std::vector<double> one{3.7};
  CHECK(log_multibeta(one) == 0.0);
  const std::vector<double> unit{1.0, 1.0};
  CHECK(log_multibeta(unit) == doctest::Approx(0.0));
  const std::vector<double> b23{2.0, 3.0};
  CHECK(log_multibeta(b23) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-15));
  CHECK_THROWS_AS(log_multibeta(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(log_multibeta(std::vector<double>{1.0, 0.0}), DomainError);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 50.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), y = u(rng);
    const std::vector<double> xy{x, y};
    CHECK(log_multibeta(xy) == log_gamma(x) + log_gamma(y) - log_gamma(x + y));
  }
}

TEST_CASE("ExpansionKind parameter rules") {
  CHECK_THROWS_AS(ExpansionKind::make(Expansion::R1, 1.0), DomainError);
  CHECK_THROWS_AS(ExpansionKind::make(Expansion::R2, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(ExpansionKind::make(Expansion::R4, -1.0), DomainError);
  CHECK_THROWS_AS(ExpansionKind::make(Expansion::R5, 1.0, -0.5), DomainError);
  CHECK_NOTHROW(ExpansionKind::make(Expansion::R3, 1.0, 1.0));
  CHECK(parse_expansion("R4") == Expansion::R4);
  CHECK_THROWS_AS(parse_expansion("R6"), DomainError);
}

TEST_CASE("expansion_value examples") {
  const auto r1 = ExpansionKind::make(Expansion::R1, 0.8, 0.8);
  for (int order = 0; order <= 2; ++order) CHECK(expansion_value(r1, 37.0, order) == 1.0);
  const auto r2 = ExpansionKind::make(Expansion::R2, 1.0);
  CHECK(expansion_value(r2, 10.0, 2) == doctest::Approx(0.91).epsilon(1e-15));
  const auto r1b = ExpansionKind::make(Expansion::R1, 0.5, 0.0);
  CHECK(expansion_value(r1b, 100.0, 1) == doctest::Approx(0.99875).epsilon(1e-15));
  CHECK_THROWS_AS(expansion_value(r2, 10.0, 3), DomainError);
  CHECK_THROWS_AS(expansion_value(r2, 10.0, -1), DomainError);
  CHECK_THROWS_AS(expansion_value(r2, 0.5, 1), DomainError);
}

TEST_CASE("R3 coefficients: composed versus printed at a = b = 1") {
  const auto k = ExpansionKind::make(Expansion::R3, 1.0, 1.0);
  const auto composed = expansion_coefficients(k, R3Coefficient::composed);
  const auto printed = expansion_coefficients(k, R3Coefficient::printed);
  CHECK(composed[1] == doctest::Approx(1.0));
  CHECK(printed[1] == doctest::Approx(1.0));
  CHECK(composed[2] == doctest::Approx(-1.0));  // (x+2)/(x+1) = 1 + 1/x - 1/x^2 + ...
  CHECK(printed[2] == doctest::Approx(-2.0));
}

TEST_CASE("exact_ratio closed forms") {
  CHECK(exact_ratio(ExpansionKind::make(Expansion::R4, 1.0), 10.0) ==
        doctest::Approx(121.0 / 120.0).epsilon(1e-15));
  CHECK(exact_ratio(ExpansionKind::make(Expansion::R5, 1.0, 1.0), 10.0) ==
        doctest::Approx(143.0 / 144.0).epsilon(1e-15));
  CHECK(exact_ratio(ExpansionKind::make(Expansion::R3, 1.0, 1.0), 10.0) ==
        doctest::Approx(12.0 / 11.0).epsilon(1e-14));
  CHECK(exact_ratio(ExpansionKind::make(Expansion::R2, 1.0), 10.0) ==
        doctest::Approx(10.0 / 11.0).epsilon(1e-14));
  CHECK(exact_ratio(ExpansionKind::make(Expansion::R1, 1.3, 1.3), 55.5) == 1.0);
}

TEST_CASE("exact_ratio matches the high-precision reference") {
  for (const auto& r : kRatios) {
    CAPTURE(to_string(r.tag));
    CAPTURE(r.x);
    CHECK(std::abs(exact_ratio(kind_of(r), r.x) - r.value) <= 1e-14);
  }
}

TEST_CASE("exact_ratio stays finite for huge x") {
  const auto k = ExpansionKind::make(Expansion::R3, 2.0, 0.5);
  const double v = exact_ratio(k, 1e8);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(1.0 + 1.0 / 1e8).epsilon(1e-12));
}

TEST_CASE("verify_expansion decay exponents") {
  const auto xs = doubling(50.0, 50.0 * 64);
  const auto r1 = verify_expansion(ExpansionKind::make(Expansion::R1, 2.3, 0.7), 2, xs);
  CHECK(r1.decay_exponent == doctest::Approx(3.0).epsilon(0.05));
  CHECK(r1.decays_at_expected_rate());
  const auto r2 = verify_expansion(ExpansionKind::make(Expansion::R2, 1.4), 1, xs);
  CHECK(r2.decay_exponent == doctest::Approx(2.0).epsilon(0.05));

  const auto unit = ExpansionKind::make(Expansion::R3, 1.0, 1.0);
  const auto good = verify_expansion(unit, 2, xs, R3Coefficient::composed);
  const auto bad = verify_expansion(unit, 2, xs, R3Coefficient::printed);
  CHECK(good.decay_exponent == doctest::Approx(3.0).epsilon(0.05));
  CHECK(bad.decay_exponent == doctest::Approx(2.0).epsilon(0.05));
  CHECK_FALSE(bad.decays_at_expected_rate());

  const std::vector<double> two{64.0, 128.0};
  CHECK_THROWS_AS(verify_expansion(unit, 2, two), DomainError);
  const std::vector<double> unsorted{64.0, 32.0, 128.0};
  CHECK_THROWS_AS(verify_expansion(unit, 2, unsorted), DomainError);
}

TEST_CASE("every order decays at its expected rate for random parameters") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  const auto xs = doubling(64.0, 4096.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng);
    for (Expansion e : {Expansion::R1, Expansion::R2, Expansion::R3, Expansion::R4, Expansion::R5}) {
      const bool with_b = e == Expansion::R1 || e == Expansion::R3 || e == Expansion::R5;
      const auto k = ExpansionKind::make(e, a, with_b ? std::optional(b) : std::nullopt);
      for (int order = 0; order <= 2; ++order) {
        const auto rep = verify_expansion(k, order, xs);
        CAPTURE(to_string(e));
        CAPTURE(order);
        CAPTURE(a);
        CAPTURE(b);
        // Scaled errors stay bounded: x^(k+1) err never grows more than 2x.
        for (std::size_t i = 1; i < xs.size(); ++i) {
          const double s0 = rep.errors[i - 1] * std::pow(xs[i - 1], order + 1);
          const double s1 = rep.errors[i] * std::pow(xs[i], order + 1);
          CHECK(s1 <= 2.0 * s0 + 1e-9);
        }
      }
    }
  }
}
