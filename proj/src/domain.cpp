#include "eggshell/domain.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "eggshell/compensated.hpp"
#include "eggshell/error.hpp"
#include "eggshell/gammakit.hpp"

namespace eggshell {

DomainSpec::DomainSpec(std::vector<BlockSpec> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DomainError("domain needs at least one block");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const auto& b = blocks_[k];
    if (b.p.empty()) throw DomainError("block " + std::to_string(k) + " has no coordinates");
    if (!(b.a > 0.0) || !std::isfinite(b.a))
      throw DomainError("block " + std::to_string(k) + ": outer power a must be positive");
    for (double pj : b.p)
      if (!(pj > 0.0) || !std::isfinite(pj))
        throw DomainError("block " + std::to_string(k) + ": exponents p must be positive");
    offsets_.push_back(dimension_);
    dimension_ += b.p.size();
  }
}

DomainSpec DomainSpec::ellipsoid(std::vector<double> p) {
  return DomainSpec({BlockSpec{std::move(p), 1.0}});
}

MultiIndex::MultiIndex(const DomainSpec& dom, const std::vector<std::vector<Index>>& per_block) {
  if (per_block.size() != dom.block_count())
    throw DomainError("multi-index has " + std::to_string(per_block.size()) +
                      " blocks, domain has " + std::to_string(dom.block_count()));
  for (std::size_t k = 0; k < per_block.size(); ++k) {
    if (per_block[k].size() != dom.block_size(k))
      throw DomainError("multi-index block " + std::to_string(k) + " has wrong length");
    for (Index v : per_block[k]) {
      if (v < 0) throw DomainError("multi-index entries must be nonnegative");
      entries_.push_back(v);
    }
    sizes_.push_back(per_block[k].size());
  }
}

MultiIndex MultiIndex::from_flat(const DomainSpec& dom, std::vector<Index> flat) {
  if (flat.size() != dom.dimension())
    throw DomainError("flat multi-index length " + std::to_string(flat.size()) +
                      " does not match dimension " + std::to_string(dom.dimension()));
  for (Index v : flat)
    if (v < 0) throw DomainError("multi-index entries must be nonnegative");
  MultiIndex idx;
  idx.entries_ = std::move(flat);
  for (std::size_t k = 0; k < dom.block_count(); ++k) idx.sizes_.push_back(dom.block_size(k));
  return idx;
}

std::span<const Index> MultiIndex::block(std::size_t k) const {
  std::size_t off = 0;
  for (std::size_t j = 0; j < k; ++j) off += sizes_.at(j);
  return std::span<const Index>(entries_).subspan(off, sizes_.at(k));
}

std::vector<std::vector<Index>> MultiIndex::per_block() const {
  std::vector<std::vector<Index>> out;
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    auto b = block(k);
    out.emplace_back(b.begin(), b.end());
  }
  return out;
}

Index MultiIndex::total_degree() const {
  Index n = 0;
  for (Index v : entries_) n += v;
  return n;
}

double log_norm_omega1(std::span<const double> p, std::span<const Index> i) {
  if (p.size() != i.size() || p.empty())
    throw DomainError("log_norm_omega1: exponent and index lengths differ");
  std::vector<double> args;
  args.reserve(p.size());
  double prefactor = static_cast<double>(p.size()) * std::log(std::numbers::pi);
  double weight = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(p[j] > 0.0)) throw DomainError("log_norm_omega1: exponents must be positive");
    if (i[j] < 0) throw DomainError("log_norm_omega1: index entries must be nonnegative");
    prefactor -= std::log(p[j]);
    args.push_back(static_cast<double>(i[j] + 1) / p[j]);
    weight += args.back();
  }
  return prefactor + gammakit::log_multibeta(args) - std::log(weight);
}

double log_norm(const DomainSpec& dom, std::span<const Index> flat) {
  if (flat.size() != dom.dimension())
    throw DomainError("log_norm: index length does not match domain dimension");
  thread_local std::vector<double> inner;
  thread_local std::vector<double> outer;
  outer.clear();
  double result = static_cast<double>(dom.dimension()) * std::log(std::numbers::pi);
  double total = 0.0;
  for (std::size_t k = 0; k < dom.block_count(); ++k) {
    const BlockSpec& b = dom.block(k);
    const std::size_t off = dom.offset(k);
    inner.clear();
    double weight = 0.0;
    for (std::size_t j = 0; j < b.p.size(); ++j) {
      const Index e = flat[off + j];
      if (e < 0) throw DomainError("log_norm: index entries must be nonnegative");
      result -= std::log(b.p[j]);
      inner.push_back(static_cast<double>(e + 1) / b.p[j]);
      weight += inner.back();
    }
    result -= std::log(b.a);
    result += gammakit::log_multibeta(inner);
    // One rounding instead of two; keeps (p, a) and (p*a, 1) on identical arguments.
    if (b.p.size() == 1)
      outer.push_back(static_cast<double>(flat[off] + 1) / (b.p[0] * b.a));
    else
      outer.push_back(weight / b.a);
    total += outer.back();
  }
  return result + gammakit::log_multibeta(outer) - std::log(total);
}

double log_norm(const DomainSpec& dom, const MultiIndex& idx) {
  if (idx.block_count() != dom.block_count())
    throw DomainError("log_norm: multi-index block count does not match domain");
  for (std::size_t k = 0; k < dom.block_count(); ++k)
    if (idx.block(k).size() != dom.block_size(k))
      throw DomainError("log_norm: multi-index block " + std::to_string(k) + " has wrong length");
  return log_norm(dom, idx.flat());
}

MonteCarloEstimate mc_norm_oracle(const DomainSpec& dom, const MultiIndex& idx,
                                  std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw DomainError("mc_norm_oracle: need at least one sample");
  if (idx.flat().size() != dom.dimension())
    throw DomainError("mc_norm_oracle: index does not match domain");
  const std::size_t d = dom.dimension();
  const auto exps = idx.flat();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> r(d);
  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& v : r) v = unit(rng);
    double level = 0.0;
    for (std::size_t k = 0; k < dom.block_count(); ++k) {
      const BlockSpec& b = dom.block(k);
      double inner = 0.0;
      for (std::size_t j = 0; j < b.p.size(); ++j)
        inner += std::pow(r[dom.offset(k) + j], 2.0 * b.p[j]);
      level += std::pow(inner, b.a);
    }
    if (!(level < 1.0)) continue;
    // Polar Jacobian Π r_j and |z^α|² = Π r_j^(2α_j).
    double f = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      double term = r[j];
      for (Index e = 0; e < exps[j]; ++e) term *= r[j] * r[j];
      f *= term;
    }
    sum += f;
    sum_sq += f * f;
  }
  const double n = static_cast<double>(samples);
  const double scale = std::pow(2.0 * std::numbers::pi, static_cast<double>(d));
  const double mean = sum.value() / n;
  const double var = std::max(0.0, sum_sq.value() / n - mean * mean);
  const double se = n > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  return {scale * mean, scale * se};
}

}  // namespace eggshell
