#pragma once

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "bpchess/ml/types.hpp"

namespace bpchess::ml {

struct LbfgsOptions {
  int max_iter = 1000;
  double tol = 1e-4;  // on the max-norm of the gradient
  int memory = 10;
};

/// Limited-memory BFGS with a backtracking Armijo line search, so the
/// recorded objective never increases. `f(x, grad)` returns the objective
/// and writes its gradient.
template <typename F>
FitTrace lbfgs_minimize(F&& f, Eigen::VectorXd& x, const LbfgsOptions& options) {
  FitTrace trace;
  Eigen::VectorXd g(x.size());
  double fx = f(x, g);
  if (!std::isfinite(fx)) throw std::runtime_error("objective is not finite at the starting point");
  trace.loss.push_back(fx);
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;
  Eigen::VectorXd x_new(x.size()), g_new(x.size());

  for (int it = 0; it < options.max_iter; ++it) {
    trace.grad_norm = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
    if (trace.grad_norm <= options.tol) {
      trace.converged = true;
      break;
    }
    // Two-loop recursion.
    Eigen::VectorXd q = g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) {
      gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    } else {
      gamma = 1.0 / std::max(1.0, g.norm());
    }
    q *= gamma;
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    Eigen::VectorXd dir = -q;
    double slope = g.dot(dir);
    if (!(slope < 0)) {  // not a descent direction: restart from steepest descent
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      dir = -g / std::max(1.0, g.norm());
      slope = g.dot(dir);
    }

    double step = 1.0;
    double f_new = 0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * dir;
      f_new = f(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    trace.iterations = it + 1;
    if (!accepted) break;  // no further decrease representable

    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > options.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;
    trace.loss.push_back(fx);
  }
  trace.grad_norm = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
  if (trace.grad_norm <= options.tol) trace.converged = true;
  return trace;
}

}  // namespace bpchess::ml
