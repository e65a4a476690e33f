#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Log-Gamma, multivariable Beta and the five Gamma-ratio expansions
//
//   R1  Γ(x+a)/Γ(x+b) · x^(b-a)
//   R2  Γ(x+a)² / (Γ(x) Γ(x+2a))
//   R3  Γ(x+a) Γ(x+2a+b) / (Γ(x+a+b) Γ(x+2a))
//   R4  (x+a)² / (x (x+2a))
//   R5  (x+a)(x+2a+b) / ((x+a+b)(x+2a))
//
// each truncated after the x^-2 term.
namespace eggshell::gammakit {

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// ln B(x_1, ..., x_n) = Σ ln Γ(x_j) - ln Γ(Σ x_j). A single argument gives 0.
double log_multibeta(std::span<const double> xs);

/// ln[Γ(x+a)/Γ(x+b)] + (b-a) ln x.
///
/// For large x the two log-Gammas are each O(x ln x) while their difference
/// is O(1); this routine subtracts analytically (Stirling series in both
/// arguments) so the absolute error stays near machine epsilon.
double log_gamma_ratio_scaled(double x, double a, double b);

enum class Expansion { R1, R2, R3, R4, R5 };

std::string to_string(Expansion e);
Expansion parse_expansion(const std::string& s);

struct ExpansionKind {
  Expansion tag = Expansion::R1;
  double a = 1.0;
  double b = 0.0;  // ignored by R2 and R4

  /// Validating constructor. R1, R3, R5 need b; R2, R4 reject it.
  static ExpansionKind make(Expansion tag, double a, std::optional<double> b = std::nullopt);
  bool uses_b() const;
};

/// Which x^-2 coefficient R3 uses. `printed` is the closed form as displayed
/// in the source, kept only so the verification report can show that it does
/// not match the (x+2)/(x+1) closed form at a = b = 1.
enum class R3Coefficient { composed, printed };

/// {1, c1, c2} with value = 1 + c1/x + c2/x².
std::array<double, 3> expansion_coefficients(const ExpansionKind& kind,
                                             R3Coefficient r3 = R3Coefficient::composed);

double expansion_value(const ExpansionKind& kind, double x, int order,
                       R3Coefficient r3 = R3Coefficient::composed);

/// Left-hand side of the expansion, evaluated in log space.
double exact_ratio(const ExpansionKind& kind, double x);

struct DecayReport {
  ExpansionKind kind;
  int order = 0;
  R3Coefficient r3 = R3Coefficient::composed;
  std::vector<double> xs;
  std::vector<double> errors;  // |exact - truncated|
  double decay_exponent = 0.0; // least-squares slope of -ln|err| against ln x
  std::array<double, 3> coefficients{};

  /// True when the fitted exponent reaches order + 1 - 0.2.
  bool decays_at_expected_rate() const { return decay_exponent >= order + 1 - 0.2; }
};

DecayReport verify_expansion(const ExpansionKind& kind, int order, std::span<const double> xs,
                             R3Coefficient r3 = R3Coefficient::composed);

}  // namespace eggshell::gammakit
