#pragma once

#include <string>
#include <string_view>

namespace vinemeta {

enum class CopulaKind { Independence, BVN, Frank, Clayton };

/// Counter-clockwise rotation of a copula density. Only Clayton is rotated.
enum class Rotation { R0, R90, R180, R270 };

struct CopulaFamily {
  CopulaKind kind = CopulaKind::Independence;
  Rotation rotation = Rotation::R0;

  friend bool operator==(const CopulaFamily&, const CopulaFamily&) = default;
};

struct CopulaSpec {
  CopulaFamily family;
  double theta = 0.0;

  friend bool operator==(const CopulaSpec&, const CopulaSpec&) = default;
};

inline constexpr CopulaFamily kIndependence{CopulaKind::Independence, Rotation::R0};
inline constexpr CopulaFamily kBVN{CopulaKind::BVN, Rotation::R0};
inline constexpr CopulaFamily kFrank{CopulaKind::Frank, Rotation::R0};
inline constexpr CopulaFamily clayton(Rotation r = Rotation::R0) { return {CopulaKind::Clayton, r}; }

inline CopulaSpec independence_copula() { return {kIndependence, 0.0}; }

/// Family token used by the CLI: indep, bvn, frank, cln0, cln90, cln180, cln270.
std::string to_token(CopulaFamily family);
CopulaFamily parse_family(std::string_view token);

namespace copula {

/// Arguments of densities and h-functions are clamped to [kClamp, 1 - kClamp].
inline constexpr double kClamp = 1e-12;

/// Throws DomainError unless theta is admissible for the family. Frank's
/// theta = 0 is accepted as the independence limit.
void validate(const CopulaSpec& spec);

/// True when the pair-copula is the product copula, by family or by parameter.
bool is_independence(const CopulaSpec& spec);

double cdf(const CopulaSpec& spec, double u, double v);
double pdf(const CopulaSpec& spec, double u, double v);
double log_pdf(const CopulaSpec& spec, double u, double v);

/// Conditional cdf of the second argument given the first: dC(u, v)/du.
double hfunc(const CopulaSpec& spec, double v, double u);
/// Conditional cdf of the first argument given the second: dC(u, v)/dv.
double hfunc_given_second(const CopulaSpec& spec, double u, double v);

/// Inverse of hfunc in its first argument: returns v with hfunc(v | u) = p.
double hinv(const CopulaSpec& spec, double p, double u);
/// Inverse of hfunc_given_second in its first argument.
double hinv_given_second(const CopulaSpec& spec, double p, double v);

/// Root of hfunc(. | u) = p by bisection to 1e-10 with a 200-iteration cap.
/// Used where the closed form breaks down numerically; throws NumericError
/// if the bracket does not close.
double hinv_bisect(const CopulaSpec& spec, double p, double u);

double theta_to_tau(const CopulaSpec& spec);

/// Inverse of theta_to_tau within a family. Throws DomainError when tau is
/// unattainable (|tau| >= 1, or a sign the Clayton rotation cannot produce).
double tau_to_theta(CopulaFamily family, double tau);

/// Debye-type integral  int_0^x t / (e^t - 1) dt  by 50-point Gauss-Legendre.
double frank_debye_integral(double x);

}  // namespace copula
}  // namespace vinemeta
