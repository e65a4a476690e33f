#include "eggshell/gammakit.hpp"

#include <cmath>
#include <limits>

#include "eggshell/error.hpp"

namespace eggshell::gammakit {

namespace {

// Bernoulli terms B_2k / (2k (2k-1)) of the Stirling series, k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};

// Below this argument the direct difference of log-Gammas is accurate enough.
constexpr double kStirlingCutoff = 16.0;

double stirling_tail(double z) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it) acc = acc * inv2 + *it;
  return acc * inv;
}

// First two coefficients of the R1 series for Γ(x+a)/Γ(x+b) · x^(b-a).
std::array<double, 3> r1_coefficients(double a, double b) {
  const double d = a - b;
  const double s = a + b - 1.0;
  return {1.0, d * s / 2.0, d * (d - 1.0) * (3.0 * s * s - a + b - 1.0) / 24.0};
}

void require_positive_args(std::initializer_list<double> args, const char* what) {
  for (double v : args)
    if (!(v > 0.0)) throw DomainError(std::string(what) + ": Gamma argument must be positive");
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be positive and finite");
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_multibeta(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("log_multibeta: empty argument list");
  for (double v : xs)
    if (!(v > 0.0)) throw DomainError("log_multibeta: arguments must be positive");
  if (xs.size() == 1) return 0.0;
  double sum = 0.0;
  double acc = 0.0;
  for (double v : xs) {
    acc += log_gamma(v);
    sum += v;
  }
  return acc - log_gamma(sum);
}

double log_gamma_ratio_scaled(double x, double a, double b) {
  const double u = x + a;
  const double v = x + b;
  if (!(x > 0.0) || !(u > 0.0) || !(v > 0.0))
    throw DomainError("log_gamma_ratio_scaled: Gamma argument must be positive");
  if (a == b) return 0.0;
  if (std::min(u, v) < kStirlingCutoff)
    return log_gamma(u) - log_gamma(v) + (b - a) * std::log(x);
  // (u - 1/2) ln u - u  with ln u = ln x + log1p(a/x); the ln x parts cancel
  // against the x^(b-a) factor exactly.
  return (u - 0.5) * std::log1p(a / x) - (v - 0.5) * std::log1p(b / x) - (a - b) +
         stirling_tail(u) - stirling_tail(v);
}

std::string to_string(Expansion e) {
  switch (e) {
    case Expansion::R1: return "R1";
    case Expansion::R2: return "R2";
    case Expansion::R3: return "R3";
    case Expansion::R4: return "R4";
    case Expansion::R5: return "R5";
  }
  return "?";
}

Expansion parse_expansion(const std::string& s) {
  for (Expansion e : {Expansion::R1, Expansion::R2, Expansion::R3, Expansion::R4, Expansion::R5})
    if (to_string(e) == s) return e;
  throw DomainError("unknown expansion '" + s + "' (expected R1..R5)");
}

bool ExpansionKind::uses_b() const {
  return tag == Expansion::R1 || tag == Expansion::R3 || tag == Expansion::R5;
}

ExpansionKind ExpansionKind::make(Expansion tag, double a, std::optional<double> b) {
  ExpansionKind k;
  k.tag = tag;
  k.a = a;
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("expansion parameter a must be positive");
  if (k.uses_b()) {
    if (!b) throw DomainError(to_string(tag) + " requires parameter b");
    // b = 0 is admitted: every Gamma argument stays positive for x >= 1.
    if (!(*b >= 0.0) || !std::isfinite(*b))
      throw DomainError("expansion parameter b must be nonnegative");
    k.b = *b;
  } else if (b) {
    throw DomainError(to_string(tag) + " takes parameter a only");
  }
  return k;
}

std::array<double, 3> expansion_coefficients(const ExpansionKind& kind, R3Coefficient r3) {
  const double a = kind.a;
  const double b = kind.b;
  switch (kind.tag) {
    case Expansion::R1:
      return r1_coefficients(a, b);
    case Expansion::R2:
      return {1.0, -a * a, a * a * (a * a + 2.0 * a - 1.0) / 2.0};
    case Expansion::R3: {
      if (r3 == R3Coefficient::printed) return {1.0, a * b, a * b * (a * b - 3.0 * a - b + 1.0)};
      // Γ(x+a)/Γ(x+a+b) · Γ(x+2a+b)/Γ(x+2a), the x powers cancel.
      const auto u = r1_coefficients(a, a + b);
      const auto v = r1_coefficients(2.0 * a + b, 2.0 * a);
      return {1.0, u[1] + v[1], u[2] + v[2] + u[1] * v[1]};
    }
    case Expansion::R4:
      return {1.0, 0.0, a * a};
    case Expansion::R5:
      return {1.0, 0.0, -a * b};
  }
  return {1.0, 0.0, 0.0};
}

double expansion_value(const ExpansionKind& kind, double x, int order, R3Coefficient r3) {
  if (order < 0 || order > 2) throw DomainError("expansion order must be 0, 1 or 2");
  if (!(x >= 1.0)) throw DomainError("expansion_value: x must be at least 1");
  const auto c = expansion_coefficients(kind, r3);
  double value = c[0];
  if (order >= 1) value += c[1] / x;
  if (order >= 2) value += c[2] / (x * x);
  return value;
}

double exact_ratio(const ExpansionKind& kind, double x) {
  const double a = kind.a;
  const double b = kind.b;
  double log_value = 0.0;
  switch (kind.tag) {
    case Expansion::R1:
      require_positive_args({x, x + a, x + b}, "R1");
      log_value = log_gamma_ratio_scaled(x, a, b);
      break;
    case Expansion::R2:
      require_positive_args({x, x + a, x + 2.0 * a}, "R2");
      log_value = log_gamma_ratio_scaled(x, a, 0.0) + log_gamma_ratio_scaled(x, a, 2.0 * a);
      break;
    case Expansion::R3:
      require_positive_args({x + a, x + a + b, x + 2.0 * a, x + 2.0 * a + b}, "R3");
      log_value =
          log_gamma_ratio_scaled(x, a, a + b) + log_gamma_ratio_scaled(x, 2.0 * a + b, 2.0 * a);
      break;
    case Expansion::R4:
      require_positive_args({x, x + a, x + 2.0 * a}, "R4");
      log_value = 2.0 * std::log1p(a / x) - std::log1p(2.0 * a / x);
      break;
    case Expansion::R5:
      require_positive_args({x, x + a + b, x + 2.0 * a}, "R5");
      log_value = std::log1p(a / x) + std::log1p((2.0 * a + b) / x) -
                  std::log1p((a + b) / x) - std::log1p(2.0 * a / x);
      break;
  }
  return std::exp(log_value);
}

DecayReport verify_expansion(const ExpansionKind& kind, int order, std::span<const double> xs,
                             R3Coefficient r3) {
  if (xs.size() < 3) throw DomainError("verify_expansion: need at least 3 sample points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= 1.0)) throw DomainError("verify_expansion: sample points must be >= 1");
    if (i > 0 && !(xs[i] > xs[i - 1]))
      throw DomainError("verify_expansion: sample points must be increasing");
  }
  DecayReport report;
  report.kind = kind;
  report.order = order;
  report.r3 = r3;
  report.coefficients = expansion_coefficients(kind, r3);
  report.xs.assign(xs.begin(), xs.end());

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    const double err = std::abs(exact_ratio(kind, x) - expansion_value(kind, x, order, r3));
    report.errors.push_back(err);
    if (err > 0.0) {
      const double lx = std::log(x);
      const double ly = std::log(err);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
  }
  if (n < 2) {
    report.decay_exponent = std::numeric_limits<double>::infinity();
  } else {
    const double nn = static_cast<double>(n);
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    report.decay_exponent = -slope;
  }
  return report;
}

}  // namespace eggshell::gammakit
