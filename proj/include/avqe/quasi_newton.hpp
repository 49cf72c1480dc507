#pragma once

#include <functional>

#include <Eigen/Dense>

namespace avqe {

struct MinimizeOptions {
    double gtol = 1e-8;  // on the gradient infinity norm
    int max_iter = 0;    // 0 means 200 * (n + 1)
};

struct MinimizeResult {
    Eigen::VectorXd x;
    double f = 0.0;
    Eigen::VectorXd grad;
    int iterations = 0;
    int n_evals = 0;
    bool converged = false;
    bool line_search_failed = false;
};

/// BFGS with a strong-Wolfe cubic-interpolation line search. The callable
/// returns f(x) and fills the gradient. Deterministic: no randomized restarts.
MinimizeResult bfgs_minimize(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& fg,
    Eigen::VectorXd x0, const MinimizeOptions& opts = {});

}  // namespace avqe
