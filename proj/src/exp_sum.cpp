#include "exp_sum.hpp"

#include <algorithm>
#include <cmath>

namespace vinemeta::detail {

namespace {

inline double softplus(double y) { return std::max(y, 0.0) + std::log1p(std::exp(-std::abs(y))); }

}  // namespace

void logit_arm_log_probs(std::size_t n, const double* x_main, const double* x_ne, double* l_main, double* l_ne,
                         double* l_rest) {
#pragma omp simd
  for (std::size_t i = 0; i < n; ++i) {
    const double xm = x_main[i];
    const double xn = x_ne[i];
    const double m = std::max(0.0, std::max(xm, xn));
    const double L = m + std::log(std::exp(-m) + std::exp(xm - m) + std::exp(xn - m));
    l_main[i] = std::max(xm - L, kLogFloor);
    l_ne[i] = std::max(xn - L, kLogFloor);
    l_rest[i] = std::max(-L, kLogFloor);
  }
}

void beta_arm_log_probs(std::size_t n, const double* y_main, const double* y_ne, double* l_main, double* l_ne,
                        double* l_rest) {
#pragma omp simd
  for (std::size_t i = 0; i < n; ++i) {
    const double ym = y_main[i];
    const double yn = y_ne[i];
    const double sm = softplus(ym);
    const double sn = softplus(yn);
    l_main[i] = std::max(ym - sm, kLogFloor);
    l_ne[i] = std::max(yn - sn - sm, kLogFloor);
    l_rest[i] = std::max(-sm - sn, kLogFloor);
  }
}

void binomial_log_probs(std::size_t n, const double* y, double* l_p, double* l_q) {
#pragma omp simd
  for (std::size_t i = 0; i < n; ++i) {
    const double s = softplus(y[i]);
    l_p[i] = std::max(y[i] - s, kLogFloor);
    l_q[i] = std::max(-s, kLogFloor);
  }
}

double weighted_exp_sum(std::size_t outer, std::size_t inner, const double* e, const double* g, const double* a,
                        const double* b, const double* c, double ya, double yb, double yc, double shift) {
  double total = 0.0;
  for (std::size_t j = 0; j < outer; ++j) {
    const double base = e[j] - shift;
    const double* aj = a + j * inner;
    const double* bj = b + j * inner;
    const double* cj = c + j * inner;
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < inner; ++i) {
      s += std::exp(base + g[i] + ya * aj[i] + yb * bj[i] + yc * cj[i]);
    }
    total += s;
  }
  return total;
}

double max_exponent(std::size_t outer, std::size_t inner, const double* e, const double* g, const double* a,
                    const double* b, const double* c, double ya, double yb, double yc) {
  double best = -1e308;
  for (std::size_t j = 0; j < outer; ++j) {
    const double* aj = a + j * inner;
    const double* bj = b + j * inner;
    const double* cj = c + j * inner;
    double m = -1e308;
#pragma omp simd reduction(max : m)
    for (std::size_t i = 0; i < inner; ++i) {
      m = std::max(m, g[i] + ya * aj[i] + yb * bj[i] + yc * cj[i]);
    }
    best = std::max(best, e[j] + m);
  }
  return best;
}

}  // namespace vinemeta::detail
