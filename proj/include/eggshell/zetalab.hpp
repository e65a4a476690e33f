#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eggshell/domain.hpp"
#include "eggshell/summability.hpp"

// Higher zeta series over i in N_+^m
//
//   Σ  Π_j i_j^(a_j) · Π_G (Σ_{j in G} i_j)^(a_G) · |n - 2 i_s|^(a_abs) / n^b,
//
// n = i_1 + ... + i_m. Variables are 0-based.
namespace eggshell::zeta {

struct GroupFactor {
  std::vector<std::size_t> vars;
  double a = 0.0;
};

/// |-i_s + Σ_{j != s} i_j|^a, the single sign flip sitting on variable `neg`.
struct AbsFactor {
  std::size_t neg = 0;
  double a = 0.0;
};

struct ZetaSeriesSpec {
  std::size_t m = 1;
  std::vector<double> powers;  // length m
  std::vector<GroupFactor> groups;
  std::optional<AbsFactor> abs;
  double b = 0.0;
};

/// Throws DomainError on empty groups, repeated or out-of-range variables, or
/// a powers vector whose length differs from m.
void validate(const ZetaSeriesSpec& spec);

/// max over nonempty J of |J| + Σ a over factors touching J; per-variable
/// powers count as one-variable factors and the abs factor touches everything.
double critical_b(const ZetaSeriesSpec& spec);

enum class Family { Fact1a, Fact1b, A, B, C, D, E, F, Unknown };

std::string to_string(Family f);

struct FamilyInfo {
  Family family = Family::Unknown;
  bool side_condition = true;  // false when the family's extra hypothesis fails
};

/// Structural match up to relabeling of the variables.
FamilyInfo family_of(const ZetaSeriesSpec& spec);

/// True when the series is known to converge exactly for b > critical_b.
inline bool is_sharp(const FamilyInfo& info) {
  return info.family != Family::Unknown && info.side_condition;
}

/// Collapses the single group factor over k variables with zero powers into
/// one variable with power a + k - 1. Untouched variables keep their order;
/// the new variable comes last.
ZetaSeriesSpec reduce_group(const ZetaSeriesSpec& spec);

/// The summand at i (entries >= 1). Empty when the abs form vanishes with a
/// nonpositive exponent, in which case the term is left out of the sum.
std::optional<double> general_term(const ZetaSeriesSpec& spec, std::span<const Index> i);

struct ZetaReport {
  std::vector<double> shell_sums;  // T_0..T_N
  double slope = 0.0;
  double slope_stderr = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string method;  // "convolution" or "enumeration"
};

/// Shell sums by literal enumeration of every index; bounded by config.max_terms.
std::vector<double> enumerate_shell_sums(const ZetaSeriesSpec& spec, Index N,
                                         const SummationConfig& config = {});

/// Shell sums with slope fit and verdict. Groups that are pairwise nested or
/// disjoint (and an abs factor on an ungrouped variable) are summed exactly by
/// iterated convolution in O(N^2); anything else falls back to enumeration.
ZetaReport brute_shell_sums(const ZetaSeriesSpec& spec, Index N,
                            const SummationConfig& config = {});

/// Same, but only the b-independent numerators U_n with T_n = U_n n^-b.
std::vector<double> shell_numerators(const ZetaSeriesSpec& spec, Index N,
                                     const SummationConfig& config, std::string* method = nullptr);

/// Fits and classifies T_n = U_n n^-b.
ZetaReport classify_numerators(std::span<const double> numerators, double b,
                               const SummationConfig& config);

}  // namespace eggshell::zeta
