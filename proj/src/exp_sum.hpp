#pragma once

// Array kernels compiled with -ffast-math (see src/CMakeLists.txt). Inputs
// must be finite; log-probabilities are floored at kLogFloor so that a zero
// count times an impossible cell stays 0 instead of becoming NaN.

#include <cstddef>

namespace vinemeta::detail {

inline constexpr double kLogFloor = -745.0;

/// Log cell probabilities of one arm on the multinomial-logit scale:
/// main = x_main - L, ne = x_ne - L, rest = -L with L = log(1 + e^x_main + e^x_ne).
void logit_arm_log_probs(std::size_t n, const double* x_main, const double* x_ne, double* l_main, double* l_ne,
                         double* l_rest);

/// Same for the beta parameterisation from logits y = logit(x):
/// main = log x_main, ne = log x_ne + log(1 - x_main),
/// rest = log(1 - x_main) + log(1 - x_ne).
void beta_arm_log_probs(std::size_t n, const double* y_main, const double* y_ne, double* l_main, double* l_ne,
                        double* l_rest);

/// Binomial log-probabilities from logits: log p and log(1 - p).
void binomial_log_probs(std::size_t n, const double* y, double* l_p, double* l_q);

/// sum_{j < outer} sum_{i < inner} exp(e_j + g_i + ya a_k + yb b_k + yc c_k - shift)
/// with k = j * inner + i.
double weighted_exp_sum(std::size_t outer, std::size_t inner, const double* e, const double* g, const double* a,
                        const double* b, const double* c, double ya, double yb, double yc, double shift);

/// Largest exponent of the sum above (shift excluded).
double max_exponent(std::size_t outer, std::size_t inner, const double* e, const double* g, const double* a,
                    const double* b, const double* c, double ya, double yb, double yc);

}  // namespace vinemeta::detail
