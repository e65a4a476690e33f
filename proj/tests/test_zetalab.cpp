#include <cmath>
#include <random>

#include "doctest.h"
#include "eggshell/error.hpp"
#include "eggshell/zetalab.hpp"

using namespace eggshell;
using namespace eggshell::zeta;

namespace {
SummationConfig serial() {
  SummationConfig c;
  c.workers = 1;
  return c;
}

ZetaSeriesSpec plain(std::vector<double> powers, double b) {
  ZetaSeriesSpec s;
  s.m = powers.size();
  s.powers = std::move(powers);
  s.b = b;
  return s;
}
}  // namespace

TEST_CASE("critical_b examples") {
  CHECK(critical_b(plain({0.0, 0.0}, 0.0)) == 2.0);
  CHECK(critical_b(plain({-1.5, 0.0}, 0.0)) == 1.0);
  auto s = plain({0.0, 0.0, 0.0}, 0.0);
  s.groups.push_back({{0, 1}, 1.0});
  CHECK(critical_b(s) == 4.0);
  auto t = plain({0.3, -0.2}, 0.0);
  t.abs = AbsFactor{0, 0.5};
  CHECK(critical_b(t) == doctest::Approx(2.6));
}

TEST_CASE("spec validation") {
  auto s = plain({0.0, 0.0}, 1.0);
  s.groups.push_back({{}, 1.0});
  CHECK_THROWS_AS(validate(s), DomainError);
  s.groups = {{{0, 2}, 1.0}};
  CHECK_THROWS_AS(validate(s), DomainError);
  s.groups = {{{1, 1}, 1.0}};
  CHECK_THROWS_AS(validate(s), DomainError);
  s.groups.clear();
  s.abs = AbsFactor{3, 1.0};
  CHECK_THROWS_AS(validate(s), DomainError);
  auto bad = plain({0.0}, 1.0);
  bad.m = 2;
  CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("family recognition") {
  CHECK(family_of(plain({0.0, 0.0}, 1.0)).family == Family::Fact1a);
  auto a = plain({0.4, -1.2, 0.9}, 1.0);
  a.groups.push_back({{2, 0}, -0.7});
  CHECK(family_of(a).family == Family::A);
  auto e = plain({-1.5, -1.5, -1.5, -1.5}, 1.0);
  e.groups = {{{0, 1}, 0.2}, {{2, 3}, 0.2}};
  const auto fe = family_of(e);
  CHECK(fe.family == Family::E);
  CHECK_FALSE(fe.side_condition);
  e.powers[3] = 0.0;
  CHECK(family_of(e).side_condition);
  auto f = plain({0.0, 0.0, 0.0, 0.0, 0.0}, 1.0);
  f.groups = {{{0, 4}, 0.2}, {{1, 3}, 0.2}};
  CHECK(family_of(f).family == Family::F);
  auto d = plain({0.0, 0.0, 0.0, 0.0}, 1.0);
  d.groups = {{{0, 1, 3}, 1.0}};
  d.abs = AbsFactor{2, 0.5};
  CHECK(family_of(d).family == Family::D);
  d.abs = AbsFactor{2, -0.5};
  CHECK_FALSE(family_of(d).side_condition);
  d.abs = AbsFactor{1, 0.5};
  CHECK(family_of(d).family == Family::Unknown);
  auto c = plain({0.0, 0.0, 0.0, 0.0}, 1.0);
  c.groups = {{{1, 2, 3}, 1.0}};
  CHECK(family_of(c).family == Family::C);
  auto b = plain({0.0, 1.0, 0.0, 0.0}, 1.0);
  b.groups = {{{1, 2}, 1.0}};
  CHECK(family_of(b).family == Family::B);
  auto f1b = plain({0.5, 0.0, 0.0, 0.0, 0.0}, 1.0);
  f1b.groups = {{{1, 2, 3, 4}, 1.0}};
  CHECK(family_of(f1b).family == Family::Fact1b);
  f1b.powers[2] = 0.1;
  CHECK(family_of(f1b).family == Family::Unknown);
}

TEST_CASE("reduce_group") {
  auto s = plain({0.0, 0.0, 0.0}, 4.0);
  s.groups = {{{1, 2}, 1.5}};
  const auto r = reduce_group(s);
  CHECK(r.m == 2);
  CHECK(r.powers == std::vector<double>{0.0, 2.5});
  CHECK(r.groups.empty());
  CHECK(critical_b(r) == doctest::Approx(critical_b(s)).epsilon(1e-12));

  auto k1 = plain({0.7, 0.0}, 3.0);
  k1.groups = {{{1}, 1.25}};
  CHECK(reduce_group(k1).powers == std::vector<double>{0.7, 1.25});

  auto big = plain({-0.5, 0.0, 0.0, 0.0, 0.0}, 3.0);
  big.groups = {{{2, 3, 4}, 0.0}};
  const auto rb = reduce_group(big);
  CHECK(rb.powers == std::vector<double>{-0.5, 0.0, 2.0});
  CHECK(std::abs(critical_b(rb) - critical_b(big)) <= 1e-12);

  auto bad = plain({0.0, 0.3, 0.0}, 3.0);
  bad.groups = {{{1, 2}, 1.0}};
  CHECK_THROWS_AS(reduce_group(bad), DomainError);
  CHECK_THROWS_AS(reduce_group(plain({0.0, 0.0}, 3.0)), DomainError);
}

TEST_CASE("general_term and the vanishing abs form") {
  auto s = plain({1.0, 0.0}, 1.0);
  s.abs = AbsFactor{0, 2.0};
  const std::vector<Index> i{2, 5};
  CHECK(*general_term(s, i) == doctest::Approx(2.0 * 9.0 / 7.0));
  const std::vector<Index> tie{3, 3};
  CHECK(*general_term(s, tie) == 0.0);
  s.abs->a = -1.0;
  CHECK_FALSE(general_term(s, tie).has_value());
  const std::vector<Index> zero{0, 3};
  CHECK_THROWS_AS(general_term(s, zero), DomainError);
}

TEST_CASE("convolution engine matches literal enumeration") {
  std::vector<ZetaSeriesSpec> specs;
  auto a = plain({0.4, -1.2, 0.9}, 2.7);
  a.groups = {{{0, 1}, -0.7}};
  specs.push_back(a);
  auto d = plain({0.3, -0.4, 0.5, 1.1}, 6.0);
  d.groups = {{{0, 1, 2}, 0.8}};
  d.abs = AbsFactor{3, 1.3};
  specs.push_back(d);
  auto neg = d;
  neg.abs->a = -0.6;
  specs.push_back(neg);
  auto f = plain({0.2, -0.3, 1.0, -1.7, 0.6}, 4.0);
  f.groups = {{{0, 1}, 1.2}, {{2, 3}, -0.4}};
  specs.push_back(f);
  auto nested = plain({0.2, 0.5, -0.5, 0.1}, 3.0);
  nested.groups = {{{0, 1, 2}, 0.5}, {{0, 1}, -0.3}};
  specs.push_back(nested);
  auto overlap = plain({0.2, 0.5, -0.5}, 3.0);
  overlap.groups = {{{0, 1}, 0.5}, {{1, 2}, -0.3}};
  specs.push_back(overlap);

  for (const auto& s : specs) {
    const auto fast = brute_shell_sums(s, 60, serial());
    const auto slow = enumerate_shell_sums(s, 60, serial());
    for (std::size_t n = 0; n < slow.size(); ++n)
      CHECK(fast.shell_sums[n] == doctest::Approx(slow[n]).epsilon(1e-12));
  }
  CHECK(brute_shell_sums(specs[5], 60, serial()).method == "enumeration");
  CHECK(brute_shell_sums(specs[0], 60, serial()).method == "convolution");
}

TEST_CASE("brute-force verdicts") {
  const auto conv = brute_shell_sums(plain({0.0, 0.0}, 3.0), 5000, serial());
  CHECK(conv.verdict == Verdict::converges);
  const auto div = brute_shell_sums(plain({0.0, 0.0}, 1.5), 5000, serial());
  CHECK(div.verdict == Verdict::diverges);
  auto d = plain({0.3, -0.4, 0.5, 1.1}, 0.0);
  d.groups = {{{0, 1, 2}, 0.8}};
  d.abs = AbsFactor{3, 1.3};
  d.b = critical_b(d) + 1.0;
  CHECK(brute_shell_sums(d, 5000, serial()).verdict == Verdict::converges);
  d.b = critical_b(d) - 0.5;
  CHECK(brute_shell_sums(d, 5000, serial()).verdict == Verdict::diverges);
}

TEST_CASE("enumeration respects the cap") {
  SummationConfig tiny = serial();
  tiny.max_terms = 100;
  CHECK_THROWS_AS(enumerate_shell_sums(plain({0.0, 0.0, 0.0}, 3.0), 100, tiny), ResourceError);
}
