#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eggshell/commutator.hpp"
#include "eggshell/domain.hpp"

// Schatten p-summability of a diagonal commutator, probed numerically: the
// series Σ |eigenvalue|^p over N^d is organised by total degree n, and the
// tail of the shell sums T_n is fitted to a power law n^slope. The series
// converges iff the slope is below -1.
namespace eggshell {

enum class Verdict { converges, diverges, inconclusive };

std::string to_string(Verdict v);

unsigned default_workers();

struct SummationConfig {
  double window_fraction = 0.5;
  double margin = 0.15;
  double tol = 0.1;
  unsigned workers = default_workers();
  std::uint64_t max_terms = 200'000'000;  // eigenvalue evaluations per report
  bool allow_high_dimension = false;      // d >= 4 must be requested explicitly
  std::uint64_t max_cached_terms = 64'000'000;  // beyond this, recompute per p
};

struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  std::size_t points = 0;
  bool ok = false;  // false when the window held fewer than 8 nonzero shells
};

struct SummationReport {
  double p = 0.0;
  std::vector<double> shell_sums;  // T_0..T_N
  double total = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  std::optional<Verdict> verdict;  // unset until classified
};

/// Checks p, N, dimension and the term cap. Throws DomainError/ResourceError.
void check_summation_request(const DomainSpec& dom, double p, Index N,
                             const SummationConfig& config);

/// T_n = Σ_{|idx|=n} |eigenvalue|^p for n = 0..N, compensated per shell.
SummationReport shell_sums(const DomainSpec& dom, const CommutatorKind& kind, double p, Index N,
                           const SummationConfig& config = {});

/// Least-squares slope of ln T_n against ln n over n in [ceil((1-w)N), N].
SlopeFit tail_slope(std::span<const double> shells, double window_fraction);
SlopeFit tail_slope(const SummationReport& report, double window_fraction);

/// Converges below -1 - margin, Diverges above -1 + margin.
Verdict classify(double slope, double margin);
Verdict classify(const SlopeFit& fit, double margin);

/// Fits the slope and sets the verdict of a report in place.
void finalize(SummationReport& report, const SummationConfig& config);

/// Eigenvalues of one commutator on the lattice |idx| <= N, reusable across p.
/// Holds ln|eigenvalue| in memory when the lattice has at most
/// config.max_cached_terms points and recomputes them per call otherwise;
/// both routes give identical bits.
class ShellEvaluator {
 public:
  ShellEvaluator(DomainSpec dom, CommutatorKind kind, Index N, SummationConfig config);

  std::vector<double> shell_sums(double p) const;
  SummationReport report(double p) const;
  std::uint64_t term_count() const { return terms_; }
  bool cached() const { return !log_abs_.empty() || terms_ == 0; }
  Index max_degree() const { return N_; }

 private:
  double shell_sum_uncached(Index n, double p) const;

  DomainSpec dom_;
  CommutatorKind kind_;
  Index N_;
  SummationConfig config_;
  std::uint64_t terms_ = 0;
  std::vector<std::uint64_t> offsets_;  // start of shell n in log_abs_
  std::vector<double> log_abs_;
};

struct BisectionStep {
  double p = 0.0;
  double slope = 0.0;
};

struct ThresholdSearch {
  double estimate = 0.0;
  double p_lo = 0.0;  // final bracket
  double p_hi = 0.0;
  std::vector<BisectionStep> steps;  // including both initial endpoints
};

/// Bisection on p for slope(p) = -1. Requires slope(p_lo) > -1 > slope(p_hi).
ThresholdSearch find_threshold(const DomainSpec& dom, const CommutatorKind& kind, double p_lo,
                               double p_hi, double tol, Index N,
                               const SummationConfig& config = {});

double empirical_threshold(const DomainSpec& dom, const CommutatorKind& kind, double p_lo,
                           double p_hi, double tol, Index N, const SummationConfig& config = {});

/// Exact cut-off for one commutator kind.
double predicted_threshold(const DomainSpec& dom, const CommutatorKind& kind);

struct ThresholdTerm {
  std::string label;
  double value = 0.0;
};

struct ModuleThreshold {
  double value = 0.0;
  std::size_t dimension = 0;
  std::vector<double> q;               // one per block (empty when d = 1)
  std::vector<ThresholdTerm> breakdown;
};

/// Cut-off for the whole module: 1/2 when d = 1, else max{d, q_1, ..., q_K}.
ModuleThreshold module_threshold(const DomainSpec& dom);

/// Default lattice depth per dimension: 1e5, 3000, 600, then 150 and 60.
Index default_degree(std::size_t dimension);

}  // namespace eggshell
