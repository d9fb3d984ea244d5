#include "vinemeta/copula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vinemeta/error.hpp"
#include "vinemeta/normal.hpp"
#include "vinemeta/quadrature.hpp"

namespace vinemeta {

std::string to_token(CopulaFamily family) {
  switch (family.kind) {
    case CopulaKind::Independence: return "indep";
    case CopulaKind::BVN: return "bvn";
    case CopulaKind::Frank: return "frank";
    case CopulaKind::Clayton:
      switch (family.rotation) {
        case Rotation::R0: return "cln0";
        case Rotation::R90: return "cln90";
        case Rotation::R180: return "cln180";
        case Rotation::R270: return "cln270";
      }
  }
  return "?";
}

CopulaFamily parse_family(std::string_view token) {
  if (token == "indep") return kIndependence;
  if (token == "bvn") return kBVN;
  if (token == "frank") return kFrank;
  if (token == "cln" || token == "cln0") return clayton(Rotation::R0);
  if (token == "cln90") return clayton(Rotation::R90);
  if (token == "cln180") return clayton(Rotation::R180);
  if (token == "cln270") return clayton(Rotation::R270);
  throw DomainError("unknown copula family '" + std::string(token) + "'");
}

namespace copula {
namespace {

constexpr double kFrankIndependence = 1e-10;

double clamp01(double x) { return std::clamp(x, kClamp, 1.0 - kClamp); }

// log(u^-theta + v^-theta - 1) for Clayton, without overflow.
double clayton_log_s(double theta, double lu, double lv) {
  const double a = -theta * lu;
  const double b = -theta * lv;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m) - std::exp(-m));
}

// Unrotated, exchangeable base families. Arguments are interior points.

double base_cdf(CopulaKind kind, double th, double u, double v) {
  switch (kind) {
    case CopulaKind::Independence: return u * v;
    case CopulaKind::BVN: return bvn_cdf(norm_quantile(u), norm_quantile(v), th);
    case CopulaKind::Frank: {
      if (std::abs(th) < kFrankIndependence) return u * v;
      const double a = std::expm1(-th * u);
      const double b = std::expm1(-th * v);
      const double d = std::expm1(-th);
      return -std::log1p(a * b / d) / th;
    }
    case CopulaKind::Clayton:
      return std::exp(-clayton_log_s(th, std::log(u), std::log(v)) / th);
  }
  return 0.0;
}

double base_log_pdf(CopulaKind kind, double th, double u, double v) {
  switch (kind) {
    case CopulaKind::Independence: return 0.0;
    case CopulaKind::BVN: {
      const double x = norm_quantile(u);
      const double y = norm_quantile(v);
      const double r2 = 1.0 - th * th;
      return -0.5 * std::log(r2) - (th * th * (x * x + y * y) - 2.0 * th * x * y) / (2.0 * r2);
    }
    case CopulaKind::Frank: {
      if (std::abs(th) < kFrankIndependence) return 0.0;
      const double a = std::expm1(-th * u);
      const double b = std::expm1(-th * v);
      const double d = std::expm1(-th);
      const double den = d + a * b;
      return std::log(-th * d) - th * (u + v) - 2.0 * std::log(std::abs(den));
    }
    case CopulaKind::Clayton: {
      const double lu = std::log(u);
      const double lv = std::log(v);
      return std::log1p(th) - (th + 1.0) * (lu + lv) - (1.0 / th + 2.0) * clayton_log_s(th, lu, lv);
    }
  }
  return 0.0;
}

// dC(u, v)/du
double base_h(CopulaKind kind, double th, double v, double u) {
  switch (kind) {
    case CopulaKind::Independence: return v;
    case CopulaKind::BVN: {
      const double x = norm_quantile(u);
      const double y = norm_quantile(v);
      return norm_cdf((y - th * x) / std::sqrt(1.0 - th * th));
    }
    case CopulaKind::Frank: {
      if (std::abs(th) < kFrankIndependence) return v;
      const double a = std::expm1(-th * u);
      const double b = std::expm1(-th * v);
      const double d = std::expm1(-th);
      return (a + 1.0) * b / (d + a * b);
    }
    case CopulaKind::Clayton: {
      const double lu = std::log(u);
      const double ls = clayton_log_s(th, lu, std::log(v));
      return std::exp(-(th + 1.0) * lu - (1.0 + 1.0 / th) * ls);
    }
  }
  return v;
}

double base_hinv(CopulaKind kind, double th, double p, double u) {
  switch (kind) {
    case CopulaKind::Independence: return p;
    case CopulaKind::BVN:
      return norm_cdf(std::sqrt(1.0 - th * th) * norm_quantile(p) + th * norm_quantile(u));
    case CopulaKind::Frank: {
      if (std::abs(th) < kFrankIndependence) return p;
      const double ea = std::exp(-th * u);
      const double d = std::expm1(-th);
      const double b = p * d / (p + (1.0 - p) * ea);
      return -std::log1p(b) / th;
    }
    case CopulaKind::Clayton: {
      const double a = std::expm1(-th / (1.0 + th) * std::log(p));
      if (a <= 0.0) return 1.0;
      const double w = std::log(a) - th * std::log(u);
      const double l = w > 0.0 ? w + std::log1p(std::exp(-w)) : std::log1p(std::exp(w));
      return std::exp(-l / th);
    }
  }
  return p;
}

}  // namespace

void validate(const CopulaSpec& spec) {
  const double th = spec.theta;
  const auto fail = [&](const char* msg) {
    std::ostringstream os;
    os << to_token(spec.family) << " copula: " << msg << " (theta = " << th << ")";
    throw DomainError(os.str());
  };
  if (!std::isfinite(th)) fail("parameter must be finite");
  if (spec.family.kind != CopulaKind::Clayton && spec.family.rotation != Rotation::R0) {
    fail("only Clayton copulas are rotated");
  }
  switch (spec.family.kind) {
    case CopulaKind::Independence:
      if (th != 0.0) fail("independence copula has no parameter");
      break;
    case CopulaKind::BVN:
      if (!(th > -1.0 && th < 1.0)) fail("parameter must lie in (-1, 1)");
      break;
    case CopulaKind::Frank:
      break;
    case CopulaKind::Clayton:
      if (!(th > 0.0)) fail("parameter must be positive");
      break;
  }
}

bool is_independence(const CopulaSpec& spec) {
  switch (spec.family.kind) {
    case CopulaKind::Independence: return true;
    case CopulaKind::BVN: return spec.theta == 0.0;
    case CopulaKind::Frank: return std::abs(spec.theta) < kFrankIndependence;
    case CopulaKind::Clayton: return false;
  }
  return false;
}

double cdf(const CopulaSpec& spec, double u, double v) {
  validate(spec);
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw DomainError("copula cdf: arguments must lie in [0, 1]");
  }
  if (u == 0.0 || v == 0.0) return 0.0;
  if (u == 1.0) return v;
  if (v == 1.0) return u;
  const auto kind = spec.family.kind;
  const double th = spec.theta;
  double c = 0.0;
  switch (spec.family.rotation) {
    case Rotation::R0: c = base_cdf(kind, th, u, v); break;
    case Rotation::R90: c = v - base_cdf(kind, th, 1.0 - u, v); break;
    case Rotation::R180: c = u + v - 1.0 + base_cdf(kind, th, 1.0 - u, 1.0 - v); break;
    case Rotation::R270: c = u - base_cdf(kind, th, u, 1.0 - v); break;
  }
  return std::clamp(c, std::max(0.0, u + v - 1.0), std::min(u, v));
}

double log_pdf(const CopulaSpec& spec, double u, double v) {
  u = clamp01(u);
  v = clamp01(v);
  const auto kind = spec.family.kind;
  const double th = spec.theta;
  switch (spec.family.rotation) {
    case Rotation::R0: return base_log_pdf(kind, th, u, v);
    case Rotation::R90: return base_log_pdf(kind, th, 1.0 - u, v);
    case Rotation::R180: return base_log_pdf(kind, th, 1.0 - u, 1.0 - v);
    case Rotation::R270: return base_log_pdf(kind, th, u, 1.0 - v);
  }
  return 0.0;
}

double pdf(const CopulaSpec& spec, double u, double v) { return std::exp(log_pdf(spec, u, v)); }

double hfunc(const CopulaSpec& spec, double v, double u) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  u = clamp01(u);
  v = clamp01(v);
  const auto kind = spec.family.kind;
  const double th = spec.theta;
  double h = 0.0;
  switch (spec.family.rotation) {
    case Rotation::R0: h = base_h(kind, th, v, u); break;
    case Rotation::R90: h = base_h(kind, th, v, 1.0 - u); break;
    case Rotation::R180: h = 1.0 - base_h(kind, th, 1.0 - v, 1.0 - u); break;
    case Rotation::R270: h = 1.0 - base_h(kind, th, 1.0 - v, u); break;
  }
  return std::clamp(h, 0.0, 1.0);
}

double hfunc_given_second(const CopulaSpec& spec, double u, double v) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  u = clamp01(u);
  v = clamp01(v);
  const auto kind = spec.family.kind;
  const double th = spec.theta;
  double h = 0.0;
  switch (spec.family.rotation) {
    case Rotation::R0: h = base_h(kind, th, u, v); break;
    case Rotation::R90: h = 1.0 - base_h(kind, th, 1.0 - u, v); break;
    case Rotation::R180: h = 1.0 - base_h(kind, th, 1.0 - u, 1.0 - v); break;
    case Rotation::R270: h = base_h(kind, th, u, 1.0 - v); break;
  }
  return std::clamp(h, 0.0, 1.0);
}

namespace {

double checked(double x, const CopulaSpec& spec, double p, double u) {
  if (std::isfinite(x)) return std::clamp(x, 0.0, 1.0);
  return hinv_bisect(spec, p, u);
}

}  // namespace

double hinv(const CopulaSpec& spec, double p, double u) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  u = clamp01(u);
  const auto kind = spec.family.kind;
  const double th = spec.theta;
  double v = 0.0;
  switch (spec.family.rotation) {
    case Rotation::R0: v = base_hinv(kind, th, p, u); break;
    case Rotation::R90: v = base_hinv(kind, th, p, 1.0 - u); break;
    case Rotation::R180: v = 1.0 - base_hinv(kind, th, 1.0 - p, 1.0 - u); break;
    case Rotation::R270: v = 1.0 - base_hinv(kind, th, 1.0 - p, u); break;
  }
  return checked(v, spec, p, u);
}

double hinv_given_second(const CopulaSpec& spec, double p, double v) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  v = clamp01(v);
  const auto kind = spec.family.kind;
  const double th = spec.theta;
  double u = 0.0;
  switch (spec.family.rotation) {
    case Rotation::R0: u = base_hinv(kind, th, p, v); break;
    case Rotation::R90: u = 1.0 - base_hinv(kind, th, 1.0 - p, v); break;
    case Rotation::R180: u = 1.0 - base_hinv(kind, th, 1.0 - p, 1.0 - v); break;
    case Rotation::R270: u = base_hinv(kind, th, p, 1.0 - v); break;
  }
  if (std::isfinite(u)) return std::clamp(u, 0.0, 1.0);
  // Solve through the transposed problem: hfunc_given_second(. | v) = p.
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    (hfunc_given_second(spec, mid, v) < p ? lo : hi) = mid;
  }
  if (hi - lo > 1e-10) throw NumericError("hinv_given_second: bisection did not converge");
  return 0.5 * (lo + hi);
}

double hinv_bisect(const CopulaSpec& spec, double p, double u) {
  double lo = 0.0;
  double hi = 1.0;
  int it = 0;
  for (; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    (hfunc(spec, mid, u) < p ? lo : hi) = mid;
  }
  if (hi - lo > 1e-10) {
    std::ostringstream os;
    os << "hinv: bisection did not converge for " << to_token(spec.family) << " theta=" << spec.theta
       << " p=" << p << " u=" << u;
    throw NumericError(os.str());
  }
  return 0.5 * (lo + hi);
}

double frank_debye_integral(double x) {
  static const QuadratureRule rule = gauss_legendre(50, 0.0, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = x * rule.nodes[i];
    s += rule.weights[i] * (t == 0.0 ? 1.0 : t / std::expm1(t));
  }
  return s * x;
}

namespace {

double frank_tau(double th) {
  if (std::abs(th) < 1e-5) return 0.0;
  return 1.0 - 4.0 / th + 4.0 * frank_debye_integral(th) / (th * th);
}

bool negative_rotation(Rotation r) { return r == Rotation::R90 || r == Rotation::R270; }

}  // namespace

double theta_to_tau(const CopulaSpec& spec) {
  validate(spec);
  const double th = spec.theta;
  switch (spec.family.kind) {
    case CopulaKind::Independence: return 0.0;
    case CopulaKind::BVN: return 2.0 / std::numbers::pi * std::asin(th);
    case CopulaKind::Frank: return frank_tau(th);
    case CopulaKind::Clayton: {
      const double t = th / (th + 2.0);
      return negative_rotation(spec.family.rotation) ? -t : t;
    }
  }
  return 0.0;
}

double tau_to_theta(CopulaFamily family, double tau) {
  const auto fail = [&](const char* msg) {
    std::ostringstream os;
    os << to_token(family) << " copula: " << msg << " (tau = " << tau << ")";
    throw DomainError(os.str());
  };
  if (!(tau > -1.0 && tau < 1.0)) fail("Kendall's tau must lie in (-1, 1)");
  switch (family.kind) {
    case CopulaKind::Independence:
      if (tau != 0.0) fail("independence copula only attains tau = 0");
      return 0.0;
    case CopulaKind::BVN: return std::sin(std::numbers::pi * tau / 2.0);
    case CopulaKind::Clayton: {
      const double signed_tau = negative_rotation(family.rotation) ? -tau : tau;
      if (!(signed_tau > 0.0)) {
        fail(negative_rotation(family.rotation) ? "rotation by 90 or 270 degrees requires tau < 0"
                                                : "rotation by 0 or 180 degrees requires tau > 0");
      }
      return 2.0 * signed_tau / (1.0 - signed_tau);
    }
    case CopulaKind::Frank: {
      if (tau == 0.0) return 0.0;
      // tau is odd and strictly increasing in theta; bracket then bisect.
      const double a = std::abs(tau);
      double lo = 0.0;
      double hi = 1.0;
      while (frank_tau(hi) < a) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) fail("tau too close to 1 for Frank");
      }
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (frank_tau(mid) < a ? lo : hi) = mid;
      }
      const double th = 0.5 * (lo + hi);
      return tau < 0.0 ? -th : th;
    }
  }
  return 0.0;
}

}  // namespace copula
}  // namespace vinemeta
