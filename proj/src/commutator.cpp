#include "eggshell/commutator.hpp"

#include <cmath>
#include <sstream>

#include "eggshell/error.hpp"

namespace eggshell {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_coord(const DomainSpec& dom, std::size_t block, std::size_t coord) {
  if (block >= dom.block_count())
    throw DomainError("commutator: block " + std::to_string(block) + " out of range");
  if (coord >= dom.block_size(block))
    throw DomainError("commutator: coordinate " + std::to_string(coord) + " out of range in block " +
                      std::to_string(block));
}

// Σ (i_j + 1)/p_j over block k, skipping the listed coordinates.
double block_weight(const DomainSpec& dom, std::span<const Index> idx, std::size_t k,
                    std::initializer_list<std::size_t> skip = {}) {
  const BlockSpec& b = dom.block(k);
  double w = 0.0;
  for (std::size_t j = 0; j < b.p.size(); ++j) {
    bool skipped = false;
    for (auto s : skip) skipped = skipped || s == j;
    if (!skipped) w += static_cast<double>(idx[dom.offset(k) + j] + 1) / b.p[j];
  }
  return w;
}

// Σ over blocks other than the listed ones of weight/a.
double outer_weight(const DomainSpec& dom, std::span<const Index> idx,
                    std::initializer_list<std::size_t> skip) {
  double w = 0.0;
  for (std::size_t k = 0; k < dom.block_count(); ++k) {
    bool skipped = false;
    for (auto s : skip) skipped = skipped || s == k;
    if (!skipped) w += block_weight(dom, idx, k) / dom.block(k).a;
  }
  return w;
}

// |sqrt(ω(α) ω(α+e_r-e_l)) / ω(α-e_l) - ω(α+e_r) / sqrt(ω(α) ω(α+e_r-e_l))| δ(α_l)
double cross_modulus(const DomainSpec& dom, std::span<const Index> idx, std::size_t r,
                     std::size_t l) {
  if (idx[l] == 0) return 0.0;
  thread_local std::vector<Index> work;
  work.assign(idx.begin(), idx.end());
  const double l0 = log_norm(dom, work);
  work[r] += 1;
  const double l_raised = log_norm(dom, work);
  work[l] -= 1;
  const double l_swapped = log_norm(dom, work);
  work[r] -= 1;
  const double l_lowered = log_norm(dom, work);
  const double mid = 0.5 * (l0 + l_swapped);
  return std::abs(std::exp(mid - l_lowered) - std::exp(l_raised - mid));
}

}  // namespace

void validate(const DomainSpec& dom, const CommutatorKind& kind) {
  std::visit(overloaded{
                 [&](const SelfAdjoint& s) { check_coord(dom, s.block, s.coord); },
                 [&](const CrossWithin& c) {
                   check_coord(dom, c.block, c.raised);
                   check_coord(dom, c.block, c.lowered);
                   if (c.raised == c.lowered)
                     throw DomainError("cross-within commutator needs two distinct coordinates");
                 },
                 [&](const CrossBetween& c) {
                   check_coord(dom, c.raised_block, c.raised_coord);
                   check_coord(dom, c.lowered_block, c.lowered_coord);
                   if (c.raised_block == c.lowered_block)
                     throw DomainError("cross-between commutator needs two distinct blocks");
                 },
             },
             kind);
}

std::vector<CommutatorKind> all_kinds(const DomainSpec& dom) {
  std::vector<CommutatorKind> out;
  for (std::size_t k = 0; k < dom.block_count(); ++k)
    for (std::size_t j = 0; j < dom.block_size(k); ++j) out.emplace_back(SelfAdjoint{k, j});
  for (std::size_t k = 0; k < dom.block_count(); ++k)
    for (std::size_t j = 0; j < dom.block_size(k); ++j)
      for (std::size_t l = 0; l < dom.block_size(k); ++l)
        if (j != l) out.emplace_back(CrossWithin{k, j, l});
  for (std::size_t k = 0; k < dom.block_count(); ++k)
    for (std::size_t k2 = 0; k2 < dom.block_count(); ++k2)
      if (k != k2)
        for (std::size_t j = 0; j < dom.block_size(k); ++j)
          for (std::size_t l = 0; l < dom.block_size(k2); ++l)
            out.emplace_back(CrossBetween{k, j, k2, l});
  return out;
}

std::string to_string(const CommutatorKind& kind) {
  return std::visit(
      overloaded{
          [](const SelfAdjoint& s) {
            return "self:" + std::to_string(s.block) + ":" + std::to_string(s.coord);
          },
          [](const CrossWithin& c) {
            return "within:" + std::to_string(c.block) + ":" + std::to_string(c.raised) + ":" +
                   std::to_string(c.lowered);
          },
          [](const CrossBetween& c) {
            return "between:" + std::to_string(c.raised_block) + ":" +
                   std::to_string(c.raised_coord) + ":" + std::to_string(c.lowered_block) + ":" +
                   std::to_string(c.lowered_coord);
          },
      },
      kind);
}

CommutatorKind parse_kind(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  auto num = [&](std::size_t i) -> std::size_t {
    try {
      std::size_t used = 0;
      const long v = std::stol(parts.at(i), &used);
      if (used != parts[i].size() || v < 0) throw DomainError("");
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw DomainError("malformed commutator kind '" + text + "'");
    }
  };
  if (!parts.empty() && parts[0] == "self" && parts.size() == 3)
    return SelfAdjoint{num(1), num(2)};
  if (!parts.empty() && parts[0] == "within" && parts.size() == 4)
    return CrossWithin{num(1), num(2), num(3)};
  if (!parts.empty() && parts[0] == "between" && parts.size() == 5)
    return CrossBetween{num(1), num(2), num(3), num(4)};
  throw DomainError("malformed commutator kind '" + text +
                    "' (expected self:k:j, within:k:j:l or between:k:j:k2:l)");
}

double eigenvalue(const DomainSpec& dom, const CommutatorKind& kind, std::span<const Index> idx) {
  if (idx.size() != dom.dimension())
    throw DomainError("eigenvalue: index length does not match domain dimension");
  validate(dom, kind);
  return std::visit(
      overloaded{
          [&](const SelfAdjoint& s) {
            const std::size_t c = dom.offset(s.block) + s.coord;
            thread_local std::vector<Index> work;
            work.assign(idx.begin(), idx.end());
            const double l0 = log_norm(dom, work);
            work[c] += 1;
            const double l_up = log_norm(dom, work);
            double lowering = 0.0;
            if (idx[c] > 0) {
              work[c] -= 2;
              lowering = std::exp(l0 - log_norm(dom, work));
            }
            return lowering - std::exp(l_up - l0);
          },
          [&](const CrossWithin& c) {
            const std::size_t off = dom.offset(c.block);
            return cross_modulus(dom, idx, off + c.raised, off + c.lowered);
          },
          [&](const CrossBetween& c) {
            return cross_modulus(dom, idx, dom.offset(c.raised_block) + c.raised_coord,
                                 dom.offset(c.lowered_block) + c.lowered_coord);
          },
      },
      kind);
}

double eigenvalue(const DomainSpec& dom, const CommutatorKind& kind, const MultiIndex& idx) {
  if (idx.block_count() != dom.block_count())
    throw DomainError("eigenvalue: multi-index does not match domain");
  for (std::size_t k = 0; k < dom.block_count(); ++k)
    if (idx.block(k).size() != dom.block_size(k))
      throw DomainError("eigenvalue: multi-index block " + std::to_string(k) + " has wrong length");
  return eigenvalue(dom, kind, idx.flat());
}

double asymptotic_eigenvalue(const DomainSpec& dom, const CommutatorKind& kind,
                             const MultiIndex& mi) {
  validate(dom, kind);
  const auto idx = mi.flat();
  if (idx.size() != dom.dimension())
    throw DomainError("asymptotic_eigenvalue: multi-index does not match domain");
  const double d = static_cast<double>(dom.dimension());

  return std::visit(
      overloaded{
          [&](const SelfAdjoint& s) -> double {
            const BlockSpec& blk = dom.block(s.block);
            const double p1 = blk.p[s.coord];
            const double a = blk.a;
            const double x = static_cast<double>(idx[dom.offset(s.block) + s.coord]);
            const double rest = block_weight(dom, idx, s.block, {s.coord});
            const double outer = outer_weight(dom, idx, {s.block});
            if (d == 1.0) {
              if (x < 1.0) throw DomainError("asymptotic_eigenvalue: needs a positive index");
              return 1.0 / (x * x);
            }
            if (blk.p.size() == 1) {
              if (x == 0.0) return std::pow(outer, -1.0 / (a * p1));
              return std::pow(x, 1.0 / (a * p1) - 1.0) * outer /
                     std::pow(x + outer, 1.0 / (a * p1) + 1.0);
            }
            const double inner_exp = -(1.0 / p1) * (1.0 - 1.0 / a);
            if (x == 0.0)
              return std::pow(rest, inner_exp) / std::pow(rest + outer, 1.0 / (a * p1));
            const double shared = std::pow(x + rest, inner_exp - 1.0);
            return std::pow(x, 1.0 / p1 - 1.0) * shared * rest /
                       std::pow(x + rest + outer, 1.0 / (a * p1)) +
                   std::pow(x, 1.0 / p1) * shared * outer /
                       std::pow(x + rest + outer, 1.0 / (a * p1) + 1.0);
          },
          [&](const CrossWithin& c) -> double {
            const BlockSpec& blk = dom.block(c.block);
            const double p1 = blk.p[c.raised];
            const double p2 = blk.p[c.lowered];
            const double a = blk.a;
            const double x1 = static_cast<double>(idx[dom.offset(c.block) + c.raised]);
            const double x2 = static_cast<double>(idx[dom.offset(c.block) + c.lowered]);
            if (x1 < 1.0 || x2 < 1.0)
              throw DomainError("asymptotic_eigenvalue: cross-within needs both entries >= 1");
            const double s = x1 + x2 + block_weight(dom, idx, c.block, {c.raised, c.lowered});
            const double outer = outer_weight(dom, idx, {c.block});
            const double e = 0.5 * (1.0 / p1 + 1.0 / p2);
            const double head = std::pow(x1, 0.5 / p1) * std::pow(x2, 0.5 / p2);
            if (a == 1.0) return head / std::pow(s + outer, e + 1.0);
            const double inner = std::pow(s, -e * (1.0 - 1.0 / a) - 1.0);
            if (a > 1.0) return head * inner / std::pow(s + outer, e / a);
            const double t = 1.0 / (a * a) - 1.0;
            return head * inner * std::abs(s - t * outer) / std::pow(s + outer, e / a + 1.0);
          },
          [&](const CrossBetween& c) -> double {
            const BlockSpec& bz = dom.block(c.raised_block);
            const BlockSpec& bw = dom.block(c.lowered_block);
            const double p1 = bz.p[c.raised_coord];
            const double q1 = bw.p[c.lowered_coord];
            const double x = static_cast<double>(idx[dom.offset(c.raised_block) + c.raised_coord]);
            const double y =
                static_cast<double>(idx[dom.offset(c.lowered_block) + c.lowered_coord]);
            if (x < 1.0 || y < 1.0)
              throw DomainError("asymptotic_eigenvalue: cross-between needs both entries >= 1");
            const double rest_z = block_weight(dom, idx, c.raised_block, {c.raised_coord});
            const double rest_w = block_weight(dom, idx, c.lowered_block, {c.lowered_coord});
            const double outer = outer_weight(dom, idx, {c.raised_block, c.lowered_block});
            const double total = x + y + rest_z + rest_w + outer;
            return std::pow(x, 0.5 / p1) * std::pow(y, 0.5 / q1) *
                   std::pow(x + rest_z, -(0.5 / p1) * (1.0 - 1.0 / bz.a)) *
                   std::pow(y + rest_w, -(0.5 / q1) * (1.0 - 1.0 / bw.a)) /
                   std::pow(total, 0.5 * (1.0 / (bz.a * p1) + 1.0 / (bw.a * q1)) + 1.0);
          },
      },
      kind);
}

}  // namespace eggshell
