#include "eggshell/summability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "eggshell/compensated.hpp"
#include "eggshell/error.hpp"
#include "eggshell/lattice.hpp"

namespace eggshell {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double log_abs_eigenvalue(const DomainSpec& dom, const CommutatorKind& kind,
                          std::span<const Index> idx) {
  const double e = std::abs(eigenvalue(dom, kind, idx));
  return e > 0.0 ? std::log(e) : -std::numeric_limits<double>::infinity();
}

std::string fmt(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converges: return "Converges";
    case Verdict::diverges: return "Diverges";
    case Verdict::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

unsigned default_workers() {
  if (const char* env = std::getenv("EGGSHELL_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void check_summation_request(const DomainSpec& dom, double p, Index N,
                             const SummationConfig& config) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("summation: p must be positive");
  if (N < 16) throw DomainError("summation: N must be at least 16");
  if (dom.dimension() >= 4 && !config.allow_high_dimension)
    throw ResourceError("summation: dimension " + std::to_string(dom.dimension()) +
                        " needs an explicit high-dimension override");
  const std::uint64_t terms = lattice::ball_size(N, dom.dimension());
  if (terms > config.max_terms)
    throw ResourceError("summation: " + std::to_string(terms) +
                        " eigenvalue evaluations exceed the cap of " +
                        std::to_string(config.max_terms));
}

ShellEvaluator::ShellEvaluator(DomainSpec dom, CommutatorKind kind, Index N,
                               SummationConfig config)
    : dom_(std::move(dom)), kind_(kind), N_(N), config_(config) {
  check_summation_request(dom_, 1.0, N_, config_);
  validate(dom_, kind_);
  terms_ = lattice::ball_size(N_, dom_.dimension());
  if (terms_ > config_.max_cached_terms) return;

  offsets_.resize(static_cast<std::size_t>(N_) + 2);
  offsets_[0] = 0;
  for (Index n = 0; n <= N_; ++n)
    offsets_[n + 1] = offsets_[n] + lattice::shell_size(n, dom_.dimension());
  log_abs_.resize(offsets_.back());
  lattice::parallel_shells(N_, config_.workers, [&](Index n) {
    std::vector<Index> buf(dom_.dimension());
    double* out = log_abs_.data() + offsets_[n];
    lattice::for_each_weak_composition(n, buf, [&](std::span<const Index> idx) {
      *out++ = log_abs_eigenvalue(dom_, kind_, idx);
    });
  });
}

double ShellEvaluator::shell_sum_uncached(Index n, double p) const {
  std::vector<Index> buf(dom_.dimension());
  CompensatedSum sum;
  lattice::for_each_weak_composition(n, buf, [&](std::span<const Index> idx) {
    sum += std::exp(p * log_abs_eigenvalue(dom_, kind_, idx));
  });
  return sum.value();
}

std::vector<double> ShellEvaluator::shell_sums(double p) const {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("summation: p must be positive");
  std::vector<double> shells(static_cast<std::size_t>(N_) + 1, 0.0);
  lattice::parallel_shells(N_, config_.workers, [&](Index n) {
    if (log_abs_.empty()) {
      shells[n] = shell_sum_uncached(n, p);
      return;
    }
    CompensatedSum sum;
    for (std::uint64_t t = offsets_[n]; t < offsets_[n + 1]; ++t) sum += std::exp(p * log_abs_[t]);
    shells[n] = sum.value();
  });
  return shells;
}

SummationReport ShellEvaluator::report(double p) const {
  SummationReport r;
  r.p = p;
  r.shell_sums = shell_sums(p);
  CompensatedSum total;
  for (double t : r.shell_sums) total += t;
  r.total = total.value();
  return r;
}

SummationReport shell_sums(const DomainSpec& dom, const CommutatorKind& kind, double p, Index N,
                           const SummationConfig& config) {
  check_summation_request(dom, p, N, config);
  SummationConfig streaming = config;
  streaming.max_cached_terms = 0;
  return ShellEvaluator(dom, kind, N, streaming).report(p);
}

SlopeFit tail_slope(std::span<const double> shells, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction < 1.0))
    throw DomainError("tail_slope: window fraction must lie in (0, 1)");
  SlopeFit fit;
  if (shells.size() < 2) return fit;
  const Index N = static_cast<Index>(shells.size()) - 1;
  const Index start =
      std::max<Index>(1, static_cast<Index>(std::ceil((1.0 - window_fraction) * N)));
  std::vector<double> xs, ys;
  for (Index n = start; n <= N; ++n) {
    if (shells[n] > 0.0 && std::isfinite(shells[n])) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(shells[n]));
    }
  }
  fit.points = xs.size();
  if (xs.size() < 8) return fit;

  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) return fit;
  fit.slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - my - fit.slope * (xs[i] - mx);
    rss += r * r;
  }
  fit.stderr_ = std::sqrt(rss / (k - 2.0) / sxx);
  fit.ok = true;
  return fit;
}

SlopeFit tail_slope(const SummationReport& report, double window_fraction) {
  return tail_slope(std::span<const double>(report.shell_sums), window_fraction);
}

Verdict classify(double slope, double margin) {
  if (!(margin > 0.0)) throw DomainError("classify: margin must be positive");
  if (slope < -1.0 - margin) return Verdict::converges;
  if (slope > -1.0 + margin) return Verdict::diverges;
  return Verdict::inconclusive;
}

Verdict classify(const SlopeFit& fit, double margin) {
  if (!fit.ok) return Verdict::inconclusive;
  return classify(fit.slope, margin);
}

void finalize(SummationReport& report, const SummationConfig& config) {
  const SlopeFit fit = tail_slope(report, config.window_fraction);
  report.slope = fit.slope;
  report.slope_stderr = fit.stderr_;
  report.verdict = classify(fit, config.margin);
}

ThresholdSearch find_threshold(const DomainSpec& dom, const CommutatorKind& kind, double p_lo,
                               double p_hi, double tol, Index N, const SummationConfig& config) {
  if (!(tol >= 0.01)) throw DomainError("threshold: tol must be at least 0.01");
  if (!(p_lo > 0.0) || !(p_hi > p_lo) || !std::isfinite(p_hi))
    throw DomainError("threshold: need 0 < p_lo < p_hi");
  check_summation_request(dom, p_lo, N, config);
  const ShellEvaluator eval(dom, kind, N, config);

  ThresholdSearch out;
  auto slope_at = [&](double p) {
    const SlopeFit fit = tail_slope(eval.shell_sums(p), config.window_fraction);
    if (!fit.ok)
      throw BracketError("threshold: too few nonzero shells to fit a slope at p = " + fmt(p));
    out.steps.push_back({p, fit.slope});
    return fit.slope;
  };

  const double s_lo = slope_at(p_lo);
  const double s_hi = slope_at(p_hi);
  if (!(s_lo > -1.0) || !(s_hi < -1.0))
    throw BracketError("threshold: bracket [" + fmt(p_lo) + ", " + fmt(p_hi) +
                       "] does not straddle slope -1 (slopes " + fmt(s_lo) + ", " + fmt(s_hi) +
                       ")");
  while (p_hi - p_lo > tol) {
    const double mid = 0.5 * (p_lo + p_hi);
    if (slope_at(mid) > -1.0)
      p_lo = mid;
    else
      p_hi = mid;
  }
  out.p_lo = p_lo;
  out.p_hi = p_hi;
  out.estimate = 0.5 * (p_lo + p_hi);
  return out;
}

double empirical_threshold(const DomainSpec& dom, const CommutatorKind& kind, double p_lo,
                           double p_hi, double tol, Index N, const SummationConfig& config) {
  return find_threshold(dom, kind, p_lo, p_hi, tol, N, config).estimate;
}

// The expressions below are shared verbatim with module_threshold so that the
// two agree bit for bit.
double predicted_threshold(const DomainSpec& dom, const CommutatorKind& kind) {
  validate(dom, kind);
  const double d = static_cast<double>(dom.dimension());
  if (dom.dimension() == 1) return 0.5;
  return std::visit(
      overloaded{
          [&](const SelfAdjoint& s) {
            const BlockSpec& blk = dom.block(s.block);
            const double m = static_cast<double>(blk.p.size());
            const double p1 = blk.p[s.coord];
            double v = std::max(d, blk.a * p1 * (d - m));
            if (blk.p.size() > 1) v = std::max(v, p1 * (d - 1.0));
            return v;
          },
          [&](const CrossWithin& c) {
            const BlockSpec& blk = dom.block(c.block);
            if (blk.a == 1.0) return d;
            const double m = static_cast<double>(blk.p.size());
            const double p1 = blk.p[c.raised];
            const double p2 = blk.p[c.lowered];
            return std::max(d, 2.0 * blk.a * (d - m) / (1.0 / p1 + 1.0 / p2));
          },
          [&](const CrossBetween&) { return d; },
      },
      kind);
}

ModuleThreshold module_threshold(const DomainSpec& dom) {
  ModuleThreshold out;
  out.dimension = dom.dimension();
  if (dom.dimension() == 1) {
    out.value = 0.5;
    out.breakdown.push_back({"d=1", 0.5});
    return out;
  }
  const double d = static_cast<double>(dom.dimension());
  out.value = d;
  out.breakdown.push_back({"d", d});
  for (std::size_t k = 0; k < dom.block_count(); ++k) {
    const BlockSpec& blk = dom.block(k);
    const double m = static_cast<double>(blk.p.size());
    const std::string K = std::to_string(k);
    double q = 0.0;
    auto term = [&](std::string label, double v) {
      q = std::max(q, v);
      out.breakdown.push_back({std::move(label), v});
    };
    for (std::size_t j = 0; j < blk.p.size(); ++j) {
      const std::string J = std::to_string(j);
      if (blk.p.size() > 1) term("p[" + K + "][" + J + "]*(d-1)", blk.p[j] * (d - 1.0));
      term("a[" + K + "]*p[" + K + "][" + J + "]*(d-j[" + K + "])", blk.a * blk.p[j] * (d - m));
    }
    if (blk.p.size() > 1 && blk.a != 1.0)
      for (std::size_t j = 0; j < blk.p.size(); ++j)
        for (std::size_t l = j + 1; l < blk.p.size(); ++l)
          term("2a[" + K + "]*(d-j[" + K + "])/(1/p[" + K + "][" + std::to_string(j) + "]+1/p[" +
                   K + "][" + std::to_string(l) + "])",
               2.0 * blk.a * (d - m) / (1.0 / blk.p[j] + 1.0 / blk.p[l]));
    out.q.push_back(q);
    out.breakdown.push_back({"q[" + K + "]", q});
    out.value = std::max(out.value, q);
  }
  return out;
}

Index default_degree(std::size_t dimension) {
  switch (dimension) {
    case 1: return 100000;
    case 2: return 3000;
    case 3: return 600;
    case 4: return 150;
    default: return 60;
  }
}

}  // namespace eggshell
