#pragma once

#include <string>
#include <variant>
#include <vector>

#include "eggshell/domain.hpp"

// Commutators [M_f, M_g*] of coordinate multipliers are diagonal in the
// monomial basis of an egg domain. This module returns their eigenvalues
// (for the cross kinds, those of the modulus sqrt(C C*)).
namespace eggshell {

/// [M_z, M_z*] for coordinate `coord` of block `block`.
struct SelfAdjoint {
  std::size_t block = 0;
  std::size_t coord = 0;
  friend bool operator==(const SelfAdjoint&, const SelfAdjoint&) = default;
};

/// [M_w, M_z*] for two coordinates z (raised) and w (lowered) of one block.
struct CrossWithin {
  std::size_t block = 0;
  std::size_t raised = 0;
  std::size_t lowered = 1;
  friend bool operator==(const CrossWithin&, const CrossWithin&) = default;
};

/// [M_z, M_w*] for z (raised) and w (lowered) in different blocks.
struct CrossBetween {
  std::size_t raised_block = 0;
  std::size_t raised_coord = 0;
  std::size_t lowered_block = 1;
  std::size_t lowered_coord = 0;
  friend bool operator==(const CrossBetween&, const CrossBetween&) = default;
};

using CommutatorKind = std::variant<SelfAdjoint, CrossWithin, CrossBetween>;

/// Throws DomainError when the kind does not fit the domain.
void validate(const DomainSpec& dom, const CommutatorKind& kind);

/// Every commutator kind of the domain: one SelfAdjoint per coordinate, one
/// CrossWithin per ordered coordinate pair in a block, one CrossBetween per
/// ordered coordinate pair across blocks.
std::vector<CommutatorKind> all_kinds(const DomainSpec& dom);

/// "self:k:j", "within:k:j:l", "between:k:j:k2:l" (0-based).
std::string to_string(const CommutatorKind& kind);
CommutatorKind parse_kind(const std::string& text);

/// Exact eigenvalue at the basis vector b_idx. SelfAdjoint keeps its sign;
/// the cross kinds are nonnegative and vanish when the lowered entry is 0.
double eigenvalue(const DomainSpec& dom, const CommutatorKind& kind, const MultiIndex& idx);
double eigenvalue(const DomainSpec& dom, const CommutatorKind& kind, std::span<const Index> flat);

/// Dominant term of the large-index behavior, without its multiplicative
/// constant. Only ratios eigenvalue/asymptotic along rays are meaningful.
double asymptotic_eigenvalue(const DomainSpec& dom, const CommutatorKind& kind,
                             const MultiIndex& idx);

}  // namespace eggshell
