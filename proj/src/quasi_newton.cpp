#include "avqe/quasi_newton.hpp"

#include <cmath>
#include <limits>

namespace avqe {

namespace {

constexpr double kC1 = 1e-4;
constexpr double kC2 = 0.9;

struct Eval {
    double f;
    double dphi;  // directional derivative g . p
};

/// Cubic-interpolation minimizer of the line function on [a, b].
double cubic_step(double a, double fa, double da, double b, double fb, double db) {
    const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
    const double disc = d1 * d1 - da * db;
    if (disc < 0.0) {
        return 0.5 * (a + b);
    }
    const double d2 = std::sqrt(disc) * (b > a ? 1.0 : -1.0);
    const double t = b - (b - a) * (db + d2 - d1) / (db - da + 2.0 * d2);
    if (!std::isfinite(t)) {
        return 0.5 * (a + b);
    }
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double margin = 0.05 * (hi - lo);
    return std::min(std::max(t, lo + margin), hi - margin);
}

}  // namespace

MinimizeResult bfgs_minimize(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& fg,
    Eigen::VectorXd x0, const MinimizeOptions& opts) {
    const auto n = x0.size();
    MinimizeResult res;
    res.x = std::move(x0);
    res.grad.resize(n);
    res.f = fg(res.x, res.grad);
    res.n_evals = 1;
    if (n == 0 || res.grad.lpNorm<Eigen::Infinity>() <= opts.gtol) {
        res.converged = true;
        return res;
    }
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : 200 * (static_cast<int>(n) + 1);

    Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd p(n), x_trial(n), g_trial(n), s(n), y(n);
    bool first = true;

    for (int iter = 0; iter < max_iter; ++iter) {
        res.iterations = iter + 1;
        p.noalias() = -(Hinv * res.grad);
        double dphi0 = res.grad.dot(p);
        if (dphi0 >= 0.0) {
            // fall back to steepest descent if curvature info went bad
            p = -res.grad;
            Hinv.setIdentity();
            dphi0 = res.grad.dot(p);
        }

        // strong Wolfe line search (bracket + zoom)
        const double f0 = res.f;
        double alpha_prev = 0.0, f_prev = f0, dphi_prev = dphi0;
        double alpha = 1.0;
        double a_lo = -1.0, a_hi = -1.0, f_lo = 0.0, d_lo = 0.0, f_hi = 0.0, d_hi = 0.0;
        bool bracketed = false;
        double f_alpha = f0, dphi_alpha = dphi0;
        bool accepted = false;

        for (int ls = 0; ls < 30 && !bracketed && !accepted; ++ls) {
            x_trial = res.x + alpha * p;
            f_alpha = fg(x_trial, g_trial);
            ++res.n_evals;
            dphi_alpha = g_trial.dot(p);
            if (f_alpha > f0 + kC1 * alpha * dphi0 || (ls > 0 && f_alpha >= f_prev)) {
                a_lo = alpha_prev; f_lo = f_prev; d_lo = dphi_prev;
                a_hi = alpha; f_hi = f_alpha; d_hi = dphi_alpha;
                bracketed = true;
                break;
            }
            if (std::abs(dphi_alpha) <= -kC2 * dphi0) {
                accepted = true;
                break;
            }
            if (dphi_alpha >= 0.0) {
                a_lo = alpha; f_lo = f_alpha; d_lo = dphi_alpha;
                a_hi = alpha_prev; f_hi = f_prev; d_hi = dphi_prev;
                bracketed = true;
                break;
            }
            alpha_prev = alpha; f_prev = f_alpha; dphi_prev = dphi_alpha;
            alpha *= 2.0;
        }

        if (bracketed) {
            for (int z = 0; z < 40 && !accepted; ++z) {
                alpha = cubic_step(a_lo, f_lo, d_lo, a_hi, f_hi, d_hi);
                x_trial = res.x + alpha * p;
                f_alpha = fg(x_trial, g_trial);
                ++res.n_evals;
                dphi_alpha = g_trial.dot(p);
                if (f_alpha > f0 + kC1 * alpha * dphi0 || f_alpha >= f_lo) {
                    a_hi = alpha; f_hi = f_alpha; d_hi = dphi_alpha;
                } else {
                    if (std::abs(dphi_alpha) <= -kC2 * dphi0) {
                        accepted = true;
                        break;
                    }
                    if (dphi_alpha * (a_hi - a_lo) >= 0.0) {
                        a_hi = a_lo; f_hi = f_lo; d_hi = d_lo;
                    }
                    a_lo = alpha; f_lo = f_alpha; d_lo = dphi_alpha;
                }
                if (std::abs(a_hi - a_lo) < 1e-16 * std::max(1.0, std::abs(a_lo))) {
                    break;
                }
            }
            if (!accepted && f_alpha < f0) {
                accepted = true;  // sufficient decrease even without curvature
            }
        }

        if (!accepted || !(f_alpha < f0 + kC1 * alpha * dphi0) || !std::isfinite(f_alpha)) {
            if (f_alpha < f0 && std::isfinite(f_alpha)) {
                res.x = x_trial;
                res.f = f_alpha;
                res.grad = g_trial;
            }
            res.line_search_failed = true;
            res.converged = res.grad.lpNorm<Eigen::Infinity>() <= opts.gtol;
            return res;
        }

        s = alpha * p;
        y = g_trial - res.grad;
        res.x = x_trial;
        res.f = f_alpha;
        res.grad = g_trial;

        if (res.grad.lpNorm<Eigen::Infinity>() <= opts.gtol) {
            res.converged = true;
            return res;
        }

        const double sy = s.dot(y);
        if (sy > 1e-14 * s.norm() * y.norm()) {
            if (first) {
                Hinv *= sy / y.squaredNorm();
                first = false;
            }
            const double rho = 1.0 / sy;
            // Hinv <- (I - rho s y^T) Hinv (I - rho y s^T) + rho s s^T
            const Eigen::VectorXd Hy = Hinv * y;
            const double yHy = y.dot(Hy);
            Hinv += (rho * rho * yHy + rho) * (s * s.transpose());
            const Eigen::MatrixXd sHy = s * Hy.transpose();
            Hinv -= rho * (sHy + sHy.transpose());
        }
    }
    res.converged = res.grad.lpNorm<Eigen::Infinity>() <= opts.gtol;
    return res;
}

}  // namespace avqe
