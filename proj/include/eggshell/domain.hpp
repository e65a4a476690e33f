#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Egg domains  Σ_k (Σ_j |z_jk|^(2 p_jk))^(a_k) < 1  and the squared norms of
// their monomials z^α w^β ... in the Bergman space.
namespace eggshell {

using Index = std::int64_t;

struct BlockSpec {
  std::vector<double> p;  // inner exponents, one per coordinate
  double a = 1.0;         // outer power
};

class DomainSpec {
 public:
  explicit DomainSpec(std::vector<BlockSpec> blocks);

  /// Single block with a = 1: Σ |z_j|^(2 p_j) < 1.
  static DomainSpec ellipsoid(std::vector<double> p);

  const std::vector<BlockSpec>& blocks() const { return blocks_; }
  const BlockSpec& block(std::size_t k) const { return blocks_.at(k); }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_size(std::size_t k) const { return blocks_.at(k).p.size(); }
  /// Position of coordinate 0 of block k in the flattened coordinate list.
  std::size_t offset(std::size_t k) const { return offsets_.at(k); }
  std::size_t dimension() const { return dimension_; }

 private:
  std::vector<BlockSpec> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t dimension_ = 0;
};

inline std::size_t dimension(const DomainSpec& dom) { return dom.dimension(); }

/// Exponents of a monomial, grouped like the coordinates of its domain.
class MultiIndex {
 public:
  MultiIndex(const DomainSpec& dom, const std::vector<std::vector<Index>>& per_block);
  static MultiIndex from_flat(const DomainSpec& dom, std::vector<Index> flat);

  std::span<const Index> flat() const { return entries_; }
  std::span<const Index> block(std::size_t k) const;
  std::size_t block_count() const { return sizes_.size(); }
  std::vector<std::vector<Index>> per_block() const;
  Index total_degree() const;

 private:
  MultiIndex() = default;
  std::vector<Index> entries_;
  std::vector<std::size_t> sizes_;
};

/// ln ω₁(i) for the ellipsoid Σ|z_j|^(2p_j) < 1:
/// ω₁(i) = π^m / Π p_j · B((i+1)/p) / |(i+1)/p|.
double log_norm_omega1(std::span<const double> p, std::span<const Index> i);

/// ln ||z^α w^β ...||² on a general egg domain.
double log_norm(const DomainSpec& dom, const MultiIndex& idx);

/// Same as above on a flat index. The index length must equal dim(dom); entries
/// must be nonnegative. This overload is the hot path of the lattice sums.
double log_norm(const DomainSpec& dom, std::span<const Index> flat);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Independent estimate of ||z^α ...||² by uniform sampling of the moduli in
/// [0,1]^d with rejection against the defining inequality. Replayable from
/// the seed.
MonteCarloEstimate mc_norm_oracle(const DomainSpec& dom, const MultiIndex& idx,
                                  std::uint64_t samples, std::uint64_t seed);

}  // namespace eggshell
