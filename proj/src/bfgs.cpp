#include "vinemeta/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vinemeta/error.hpp"

namespace vinemeta {

namespace {

double step_for(double step, double xi) { return step * std::max(1.0, std::abs(xi)); }

struct Counted {
  const Objective& f;
  int* count;
  double operator()(const Eigen::VectorXd& x) const {
    if (count) ++*count;
    return f(x);
  }
};

}  // namespace

Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x, double fx, double step,
                                 bool central, int* evaluations) {
  const Counted F{f, evaluations};
  const auto n = x.size();
  Eigen::VectorXd g(n);
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = step_for(step, x[i]);
    xp[i] = x[i] + h;
    const double fp = F(xp);
    if (central) {
      xp[i] = x[i] - h;
      const double fm = F(xp);
      if (std::isfinite(fp) && std::isfinite(fm)) {
        g[i] = (fp - fm) / (2.0 * h);
      } else if (std::isfinite(fp)) {
        g[i] = (fp - fx) / h;
      } else if (std::isfinite(fm)) {
        g[i] = (fx - fm) / h;
      } else {
        g[i] = std::numeric_limits<double>::quiet_NaN();
      }
    } else if (std::isfinite(fp)) {
      g[i] = (fp - fx) / h;
    } else {
      xp[i] = x[i] - h;
      g[i] = (fx - F(xp)) / h;
    }
    xp[i] = x[i];
  }
  return g;
}

Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& x, double fx, double step,
                                int* evaluations) {
  const Counted F{f, evaluations};
  const auto n = x.size();
  Eigen::VectorXd h(n);
  for (Eigen::Index i = 0; i < n; ++i) h[i] = step_for(step, x[i]);
  Eigen::MatrixXd H(n, n);
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    xp[i] = x[i] + h[i];
    const double fp = F(xp);
    xp[i] = x[i] - h[i];
    const double fm = F(xp);
    xp[i] = x[i];
    H(i, i) = (fp - 2.0 * fx + fm) / (h[i] * h[i]);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (int a : {1, -1}) {
        for (int b : {1, -1}) {
          xp[i] = x[i] + a * h[i];
          xp[j] = x[j] + b * h[j];
          s += a * b * F(xp);
        }
      }
      xp[i] = x[i];
      xp[j] = x[j];
      H(i, j) = H(j, i) = s / (4.0 * h[i] * h[j]);
    }
  }
  return H;
}

BfgsResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& x0, const BfgsOptions& opt) {
  BfgsResult r;
  const Counted F{f, &r.evaluations};
  const auto n = x0.size();
  Eigen::VectorXd x = x0;
  double fx = F(x);
  if (!std::isfinite(fx)) throw NumericError("objective is not finite at the starting point");

  bool central = false;
  Eigen::VectorXd g = numeric_gradient(f, x, fx, opt.grad_step, central, &r.evaluations);
  Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  bool seeded = false;

  // Inverse of a finite-difference Hessian with eigenvalues floored to keep
  // it positive definite; keeps the current approximation if that fails.
  const auto seed_inverse_hessian = [&](const Eigen::VectorXd& at, double f_at) {
    const Eigen::MatrixXd H = numeric_hessian(f, at, f_at, opt.seed_hessian_step, &r.evaluations);
    if (!H.allFinite()) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (H + H.transpose()));
    if (eig.info() != Eigen::Success) return;
    const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (!(top > 0.0)) return;
    const Eigen::VectorXd lambda = eig.eigenvalues().cwiseAbs().cwiseMax(1e-6 * top);
    Hinv = eig.eigenvectors() * lambda.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
    scaled = true;
  };

  const auto finish = [&](bool converged, const char* message) {
    if (!central) g = numeric_gradient(f, x, fx, opt.grad_step, true, &r.evaluations);
    r.x = x;
    r.f = fx;
    r.grad = g;
    r.converged = converged || g.lpNorm<Eigen::Infinity>() < 10.0 * opt.tol;
    r.message = r.converged && !converged ? "gradient below tolerance" : message;
    return r;
  };

  for (r.iterations = 0; r.iterations < opt.max_iter; ++r.iterations) {
    if (!g.allFinite()) return finish(false, "gradient is not finite");
    const double gnorm = g.lpNorm<Eigen::Infinity>();
    if (central && gnorm < 10.0 * opt.tol) return finish(true, "gradient below tolerance");
    if (!central && gnorm < 1.0) {
      central = true;
      g = numeric_gradient(f, x, fx, opt.grad_step, true, &r.evaluations);
      continue;
    }
    if (gnorm < 10.0 && !seeded && opt.seed_hessian_step > 0.0) {
      seeded = true;
      seed_inverse_hessian(x, fx);
    }

    Eigen::VectorXd d = -Hinv * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      Hinv.setIdentity();
      scaled = false;
      d = -g;
      slope = g.dot(d);
    }
    double alpha = std::min(1.0, opt.max_step / d.lpNorm<Eigen::Infinity>());

    // Backtracking line search on the Armijo condition.
    bool accepted = false;
    bool ls_full = false;
    double f_new = 0.0;
    Eigen::VectorXd x_new;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = x + alpha * d;
      f_new = F(x_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * alpha * slope) {
        accepted = true;
        ls_full = ls == 0 && alpha == 1.0;
        break;
      }
      double next = 0.2 * alpha;
      if (std::isfinite(f_new)) {
        // Minimiser of the quadratic through f(x), f'(x; d) and f(x + alpha d).
        const double denom = 2.0 * (f_new - fx - slope * alpha);
        if (denom > 0.0) next = std::clamp(-slope * alpha * alpha / denom, 0.1 * alpha, 0.5 * alpha);
      }
      alpha = next;
    }
    if (accepted && ls_full) {
      // The full step kept going downhill at the predicted rate: the
      // curvature model is too conservative, so try longer steps.
      const double cap = opt.max_step / d.lpNorm<Eigen::Infinity>();
      while (f_new - fx < 0.5 * alpha * slope && 2.0 * alpha <= cap) {
        const Eigen::VectorXd x_try = x + 2.0 * alpha * d;
        const double f_try = F(x_try);
        if (!std::isfinite(f_try) || f_try >= f_new) break;
        alpha *= 2.0;
        x_new = x_try;
        f_new = f_try;
      }
    }
    if (!accepted) {
      if (!central) {
        central = true;
        g = numeric_gradient(f, x, fx, opt.grad_step, true, &r.evaluations);
        Hinv.setIdentity();
        scaled = false;
        continue;
      }
      const bool stalled = gnorm < opt.stall_grad;
      return finish(stalled, stalled ? "line search stalled near a stationary point" : "line search failed");
    }

    const double df = fx - f_new;
    if (!central && g.lpNorm<Eigen::Infinity>() < 1.0) central = true;
    const Eigen::VectorXd g_new = numeric_gradient(f, x_new, f_new, opt.grad_step, central, &r.evaluations);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    x = x_new;
    fx = f_new;
    g = g_new;

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        Hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd Hy = Hinv * y;
      Hinv += rho * rho * (sy + y.dot(Hy)) * (s * s.transpose()) - rho * (Hy * s.transpose() + s * Hy.transpose());
    }

    // Steps that no longer change f while the gradient is at the noise
    // floor of the differences: stop rather than spin.
    if (central && df < 1e-3 * opt.tol && g.lpNorm<Eigen::Infinity>() < opt.stall_grad) {
      return finish(true, "objective change below tolerance");
    }
  }
  return finish(false, "iteration limit reached");
}

}  // namespace vinemeta
