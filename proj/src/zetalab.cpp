#include "eggshell/zetalab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "eggshell/compensated.hpp"
#include "eggshell/error.hpp"
#include "eggshell/lattice.hpp"

namespace eggshell::zeta {

namespace {

bool contains(const std::vector<std::size_t>& vars, std::size_t j) {
  return std::find(vars.begin(), vars.end(), j) != vars.end();
}

bool subset_of(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
  return std::all_of(small.begin(), small.end(), [&](std::size_t j) { return contains(big, j); });
}

bool disjoint(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
  return std::none_of(x.begin(), x.end(), [&](std::size_t j) { return contains(y, j); });
}

// Weight of the abs form at shell n when the flipped variable equals i_s.
// Returns false when the term is to be left out.
bool abs_weight(const AbsFactor& f, Index n, Index i_s, double& w) {
  const Index form = n - 2 * i_s;
  if (form == 0) {
    if (f.a > 0.0) {
      w = 0.0;
      return true;
    }
    return false;
  }
  w = std::pow(static_cast<double>(form < 0 ? -form : form), f.a);
  return true;
}

using Seq = std::vector<double>;

// (f * g)[n] = Σ_{i=0..n} f[i] g[n-i], each entry compensated, shells split
// round-robin across workers.
Seq convolve(const Seq& f, const Seq& g, unsigned workers) {
  const Index N = static_cast<Index>(f.size()) - 1;
  Seq out(f.size(), 0.0);
  lattice::parallel_shells(N, workers, [&](Index n) {
    CompensatedSum s;
    for (Index i = 0; i <= n; ++i) {
      if (f[i] == 0.0 || g[n - i] == 0.0) continue;
      s += f[i] * g[n - i];
    }
    out[n] = s.value();
  });
  return out;
}

Seq power_sequence(Index N, double a) {
  Seq s(static_cast<std::size_t>(N) + 1, 0.0);
  for (Index n = 1; n <= N; ++n) s[n] = std::pow(static_cast<double>(n), a);
  return s;
}

// Laminar group tree. parent == npos means top level.
struct Tree {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> var_parent;
  std::vector<std::size_t> group_parent;
};

std::optional<Tree> laminar_tree(const ZetaSeriesSpec& spec) {
  const auto& gs = spec.groups;
  for (std::size_t x = 0; x < gs.size(); ++x)
    for (std::size_t y = x + 1; y < gs.size(); ++y)
      if (!disjoint(gs[x].vars, gs[y].vars) && !subset_of(gs[x].vars, gs[y].vars) &&
          !subset_of(gs[y].vars, gs[x].vars))
        return std::nullopt;

  // Larger groups first; among equal sets the earlier one is the outer one.
  std::vector<std::size_t> order(gs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return gs[x].vars.size() > gs[y].vars.size();
  });
  Tree t;
  t.group_parent.assign(gs.size(), Tree::npos);
  t.var_parent.assign(spec.m, Tree::npos);
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    for (std::size_t q = 0; q < pos; ++q)
      if (subset_of(gs[order[pos]].vars, gs[order[q]].vars)) t.group_parent[order[pos]] = order[q];
  for (std::size_t j = 0; j < spec.m; ++j)
    for (std::size_t pos = 0; pos < order.size(); ++pos)
      if (contains(gs[order[pos]].vars, j)) t.var_parent[j] = order[pos];
  if (spec.abs && t.var_parent[spec.abs->neg] != Tree::npos) return std::nullopt;
  return t;
}

Seq group_sequence(const ZetaSeriesSpec& spec, const Tree& t, std::size_t parent, Index N,
                   unsigned workers, std::optional<std::size_t> skip_var) {
  // acc starts as the unit of convolution; the first factor replaces it.
  Seq acc(static_cast<std::size_t>(N) + 1, 0.0);
  acc[0] = 1.0;
  bool unit = true;
  auto absorb = [&](Seq child) {
    acc = unit ? std::move(child) : convolve(acc, child, workers);
    unit = false;
  };
  for (std::size_t j = 0; j < spec.m; ++j)
    if (t.var_parent[j] == parent && (!skip_var || *skip_var != j))
      absorb(power_sequence(N, spec.powers[j]));
  for (std::size_t g = 0; g < spec.groups.size(); ++g)
    if (t.group_parent[g] == parent) absorb(group_sequence(spec, t, g, N, workers, std::nullopt));
  if (parent != Tree::npos) {
    const double a = spec.groups[parent].a;
    for (Index n = 1; n <= N; ++n) acc[n] *= std::pow(static_cast<double>(n), a);
    acc[0] = 0.0;
  }
  return acc;
}

Seq convolution_numerators(const ZetaSeriesSpec& spec, const Tree& t, Index N, unsigned workers) {
  if (!spec.abs) {
    Seq u = group_sequence(spec, t, Tree::npos, N, workers, std::nullopt);
    u[0] = 0.0;
    return u;
  }
  const AbsFactor f = *spec.abs;
  const Seq rest = group_sequence(spec, t, Tree::npos, N, workers, f.neg);
  const Seq flipped = power_sequence(N, spec.powers[f.neg]);
  const Seq form = power_sequence(N, f.a);  // |n - 2 i_s|^a for a nonzero form
  Seq u(static_cast<std::size_t>(N) + 1, 0.0);
  lattice::parallel_shells(N, workers, [&](Index n) {
    CompensatedSum s;
    for (Index i = 1; i <= n; ++i) {
      if (rest[n - i] == 0.0) continue;
      const Index l = n - 2 * i;
      if (l == 0 && !(f.a > 0.0)) continue;  // left out, as in general_term
      const double w = l == 0 ? 0.0 : form[l < 0 ? -l : l];
      s += flipped[i] * rest[n - i] * w;
    }
    u[n] = s.value();
  });
  return u;
}

}  // namespace

void validate(const ZetaSeriesSpec& spec) {
  if (spec.m == 0) throw DomainError("zeta spec: m must be positive");
  if (spec.powers.size() != spec.m)
    throw DomainError("zeta spec: powers has " + std::to_string(spec.powers.size()) +
                      " entries, expected m = " + std::to_string(spec.m));
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(spec.powers.begin(), spec.powers.end(), finite) || !std::isfinite(spec.b))
    throw DomainError("zeta spec: exponents must be finite");
  for (const auto& g : spec.groups) {
    if (g.vars.empty()) throw DomainError("zeta spec: group factor with no variables");
    if (!std::isfinite(g.a)) throw DomainError("zeta spec: exponents must be finite");
    for (std::size_t x = 0; x < g.vars.size(); ++x) {
      if (g.vars[x] >= spec.m)
        throw DomainError("zeta spec: group variable " + std::to_string(g.vars[x]) +
                          " out of range");
      for (std::size_t y = x + 1; y < g.vars.size(); ++y)
        if (g.vars[x] == g.vars[y]) throw DomainError("zeta spec: repeated variable in group");
    }
  }
  if (spec.abs) {
    if (spec.abs->neg >= spec.m) throw DomainError("zeta spec: abs variable out of range");
    if (!std::isfinite(spec.abs->a)) throw DomainError("zeta spec: exponents must be finite");
  }
}

double critical_b(const ZetaSeriesSpec& spec) {
  validate(spec);
  if (spec.m > 24) throw ResourceError("critical_b: m too large for subset enumeration");
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t J = 1; J < (1u << spec.m); ++J) {
    double v = static_cast<double>(std::popcount(J));
    for (std::size_t j = 0; j < spec.m; ++j)
      if (J & (1u << j)) v += spec.powers[j];
    for (const auto& g : spec.groups) {
      bool touches = false;
      for (std::size_t j : g.vars) touches = touches || (J & (1u << j));
      if (touches) v += g.a;
    }
    if (spec.abs) v += spec.abs->a;
    best = std::max(best, v);
  }
  return best;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Fact1a: return "Fact1a";
    case Family::Fact1b: return "Fact1b";
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::Unknown: return "Unknown";
  }
  return "Unknown";
}

FamilyInfo family_of(const ZetaSeriesSpec& spec) {
  validate(spec);
  const auto& gs = spec.groups;
  const std::size_t m = spec.m;
  if (gs.empty() && !spec.abs) return {Family::Fact1a, true};

  if (gs.size() == 1) {
    const std::size_t k = gs[0].vars.size();
    if (!spec.abs) {
      if (m == 3 && k == 2) return {Family::A, true};
      if (m == 4 && k == 2) return {Family::B, true};
      if (m == 4 && k == 3) return {Family::C, true};
    } else if (m == 4 && k == 3 && !contains(gs[0].vars, spec.abs->neg)) {
      return {Family::D, spec.abs->a > 0.0};
    }
  }
  if (gs.size() == 2 && !spec.abs && (m == 4 || m == 5) && gs[0].vars.size() == 2 &&
      gs[1].vars.size() == 2 && disjoint(gs[0].vars, gs[1].vars)) {
    bool side = false;
    for (const auto& g : gs)
      for (std::size_t j : g.vars) side = side || spec.powers[j] + g.a > -1.0;
    return {m == 4 ? Family::E : Family::F, side};
  }
  if (gs.size() == 1 && !spec.abs &&
      std::all_of(gs[0].vars.begin(), gs[0].vars.end(),
                  [&](std::size_t j) { return spec.powers[j] == 0.0; }))
    return {Family::Fact1b, true};
  return {Family::Unknown, true};
}

ZetaSeriesSpec reduce_group(const ZetaSeriesSpec& spec) {
  validate(spec);
  if (spec.groups.size() != 1 || spec.abs)
    throw DomainError("reduce_group: spec must carry exactly one group factor and no abs factor");
  const GroupFactor& g = spec.groups[0];
  for (std::size_t j : g.vars)
    if (spec.powers[j] != 0.0)
      throw DomainError("reduce_group: grouped variable " + std::to_string(j) +
                        " has a nonzero power");
  ZetaSeriesSpec out;
  out.b = spec.b;
  for (std::size_t j = 0; j < spec.m; ++j)
    if (!contains(g.vars, j)) out.powers.push_back(spec.powers[j]);
  out.powers.push_back(g.a + static_cast<double>(g.vars.size()) - 1.0);
  out.m = out.powers.size();
  return out;
}

std::optional<double> general_term(const ZetaSeriesSpec& spec, std::span<const Index> i) {
  if (i.size() != spec.m) throw DomainError("general_term: index length does not match m");
  Index n = 0;
  double v = 1.0;
  for (std::size_t j = 0; j < spec.m; ++j) {
    if (i[j] < 1) throw DomainError("general_term: entries must be >= 1");
    n += i[j];
    v *= std::pow(static_cast<double>(i[j]), spec.powers[j]);
  }
  for (const auto& g : spec.groups) {
    Index l = 0;
    for (std::size_t j : g.vars) l += i[j];
    v *= std::pow(static_cast<double>(l), g.a);
  }
  if (spec.abs) {
    double w = 0.0;
    if (!abs_weight(*spec.abs, n, i[spec.abs->neg], w)) return std::nullopt;
    v *= w;
  }
  return v * std::pow(static_cast<double>(n), -spec.b);
}

std::vector<double> enumerate_shell_sums(const ZetaSeriesSpec& spec, Index N,
                                         const SummationConfig& config) {
  validate(spec);
  if (N < 1) throw DomainError("zeta: N must be positive");
  const Index m = static_cast<Index>(spec.m);
  const std::uint64_t terms = N >= m ? lattice::ball_size(N - m, spec.m) : 0;
  if (terms > config.max_terms)
    throw ResourceError("zeta: enumeration needs " + std::to_string(terms) +
                        " terms, over the cap of " + std::to_string(config.max_terms));
  std::vector<double> shells(static_cast<std::size_t>(N) + 1, 0.0);
  lattice::parallel_shells(N, config.workers, [&](Index n) {
    if (n < m) return;
    std::vector<Index> buf(spec.m);
    std::vector<Index> idx(spec.m);
    CompensatedSum s;
    lattice::for_each_weak_composition(n - m, buf, [&](std::span<const Index> w) {
      for (std::size_t j = 0; j < spec.m; ++j) idx[j] = w[j] + 1;
      if (auto t = general_term(spec, idx)) s += *t;
    });
    shells[n] = s.value();
  });
  return shells;
}

std::vector<double> shell_numerators(const ZetaSeriesSpec& spec, Index N,
                                     const SummationConfig& config, std::string* method) {
  validate(spec);
  if (N < 16) throw DomainError("zeta: N must be at least 16");
  if (auto tree = laminar_tree(spec)) {
    if (method) *method = "convolution";
    return convolution_numerators(spec, *tree, N, config.workers);
  }
  if (method) *method = "enumeration";
  ZetaSeriesSpec unscaled = spec;
  unscaled.b = 0.0;
  return enumerate_shell_sums(unscaled, N, config);
}

ZetaReport classify_numerators(std::span<const double> numerators, double b,
                               const SummationConfig& config) {
  ZetaReport r;
  r.shell_sums.assign(numerators.begin(), numerators.end());
  for (std::size_t n = 1; n < r.shell_sums.size(); ++n)
    r.shell_sums[n] *= std::pow(static_cast<double>(n), -b);
  const SlopeFit fit = tail_slope(r.shell_sums, config.window_fraction);
  r.slope = fit.slope;
  r.slope_stderr = fit.stderr_;
  r.verdict = classify(fit, config.margin);
  return r;
}

ZetaReport brute_shell_sums(const ZetaSeriesSpec& spec, Index N, const SummationConfig& config) {
  std::string method;
  const auto u = shell_numerators(spec, N, config, &method);
  ZetaReport r = classify_numerators(u, spec.b, config);
  r.method = method;
  return r;
}

}  // namespace eggshell::zeta
