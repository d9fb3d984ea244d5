#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace vinemeta {

/// Objective to minimise; may return +inf outside its domain.
using Objective = std::function<double(const Eigen::VectorXd&)>;

struct BfgsOptions {
  int max_iter = 500;
  /// Relative finite-difference step: h_i = grad_step * max(1, |x_i|).
  double grad_step = 1e-5;
  /// Converged when the central-difference gradient has max-norm below
  /// 10 * tol. Also stops (as converged) when the line search can no longer
  /// decrease f, or an accepted step changes it by less than 1e-3 * tol,
  /// while the gradient max-norm is below stall_grad.
  double tol = 1e-7;
  double stall_grad = 1e-3;
  /// Largest move of any coordinate in one line search.
  double max_step = 2.0;
  /// Relative step of a finite-difference Hessian that replaces the inverse
  /// Hessian approximation once, when the gradient max-norm first drops below 10;
  /// 0 disables it.
  double seed_hessian_step = 1e-4;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  Eigen::VectorXd grad;  // central differences at x
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
};

/// Forward (central = false) or central finite-difference gradient.
Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x, double fx, double step,
                                 bool central, int* evaluations = nullptr);

/// Hessian by central differences: the three-point rule on the diagonal and
/// the four-point rule off it, with steps step * max(1, |x_i|).
Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& x, double fx, double step,
                                int* evaluations = nullptr);

/// Quasi-Newton minimisation with dense BFGS updates of the inverse Hessian
/// and a backtracking line search (Armijo condition, safeguarded quadratic /
/// cubic interpolation). Accepted steps never increase f. Gradients are
/// forward differences while the gradient is large and central differences
/// near the optimum, where the curvature model is reseeded from a
/// finite-difference Hessian. Throws NumericError if f(x0) is not finite.
BfgsResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& x0, const BfgsOptions& options = {});

}  // namespace vinemeta
