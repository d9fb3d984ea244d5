#include "vinemeta/normal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace vinemeta {

double norm_quantile(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) return std::numeric_limits<double>::quiet_NaN();
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
               1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
               0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
               0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
               7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

namespace {

// Upper orthant probability P(X > dh, Y > dk); Genz (2004), "Numerical
// computation of rectangular bivariate and trivariate normal and t probabilities".
double bvn_upper(double dh, double dk, double r) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (dh == inf || dk == inf) return 0.0;
  if (dh == -inf) return dk == -inf ? 1.0 : norm_cdf(-dk);
  if (dk == -inf) return norm_cdf(-dh);
  if (r == 0.0) return norm_cdf(-dh) * norm_cdf(-dk);

  static constexpr std::array<double, 3> w6 = {0.1713244923791705, 0.3607615730481384,
                                               0.4679139345726904};
  static constexpr std::array<double, 3> x6 = {0.9324695142031522, 0.6612093864662647,
                                               0.2386191860831970};
  static constexpr std::array<double, 6> w12 = {0.04717533638651177, 0.1069393259953183,
                                                0.1600783285433464,  0.2031674267230659,
                                                0.2334925365383547,  0.2491470458134029};
  static constexpr std::array<double, 6> x12 = {0.9815606342467191, 0.9041172563704750,
                                                0.7699026741943050, 0.5873179542866171,
                                                0.3678314989981802, 0.1252334085114692};
  static constexpr std::array<double, 10> w20 = {
      0.01761400713915212, 0.04060142980038694, 0.06267204833410906, 0.08327674157670475,
      0.1019301198172404,  0.1181945319615184,  0.1316886384491766,  0.1420961093183821,
      0.1491729864726037,  0.1527533871307259};
  static constexpr std::array<double, 10> x20 = {
      0.9931285991850949, 0.9639719272779138, 0.9122344282513259, 0.8391169718222188,
      0.7463319064601508, 0.6360536807265150, 0.5108670019508271, 0.3737060887154196,
      0.2277858511416451, 0.07652652113349733};

  const double* w;
  const double* x;
  int lg;
  const double ar = std::abs(r);
  if (ar < 0.3) {
    w = w6.data(); x = x6.data(); lg = 3;
  } else if (ar < 0.75) {
    w = w12.data(); x = x12.data(); lg = 6;
  } else {
    w = w20.data(); x = x20.data(); lg = 10;
  }

  constexpr double tp = 2.0 * 3.14159265358979323846;
  double h = dh;
  double k = dk;
  double hk = h * k;
  double bvn = 0.0;
  if (ar < 0.925) {
    const double hs = (h * h + k * k) / 2.0;
    const double asr = std::asin(r) / 2.0;
    for (int i = 0; i < lg; ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double sn = std::sin(asr * (1.0 + sign * x[i]));
        bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    bvn = bvn * asr / tp + norm_cdf(-h) * norm_cdf(-k);
  } else {
    if (r < 0.0) {
      k = -k;
      hk = -hk;
    }
    if (ar < 1.0) {
      const double as = 1.0 - r * r;
      double a = std::sqrt(as);
      const double bs = (h - k) * (h - k);
      const double c = (4.0 - hk) / 8.0;
      const double d = (12.0 - hk) / 16.0;
      double asr = -(bs / as + hk) / 2.0;
      if (asr > -100.0) {
        bvn = a * std::exp(asr) * (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
      }
      if (hk > -100.0) {
        const double b = std::sqrt(bs);
        const double sp = std::sqrt(tp) * norm_cdf(-b / a);
        bvn -= std::exp(-hk / 2.0) * sp * b * (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
      }
      a /= 2.0;
      double acc = 0.0;
      for (int i = 0; i < lg; ++i) {
        for (double sign : {-1.0, 1.0}) {
          double xs = a * (1.0 + sign * x[i]);
          xs *= xs;
          asr = -(bs / xs + hk) / 2.0;
          if (asr > -100.0) {
            const double rs = std::sqrt(1.0 - xs);
            const double sp = 1.0 + c * xs * (1.0 + d * xs);
            const double ep = std::exp(-(hk / 2.0) * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
            acc += w[i] * std::exp(asr) * (sp - ep);
          }
        }
      }
      bvn = (a * acc - bvn) / tp;
    }
    if (r > 0.0) {
      bvn += norm_cdf(-std::max(h, k));
    } else if (h >= k) {
      bvn = -bvn;
    } else {
      const double L = h < 0.0 ? norm_cdf(k) - norm_cdf(h) : norm_cdf(-h) - norm_cdf(-k);
      bvn = L - bvn;
    }
  }
  return std::clamp(bvn, 0.0, 1.0);
}

}  // namespace

double bvn_cdf(double h, double k, double r) { return bvn_upper(-h, -k, r); }

}  // namespace vinemeta
