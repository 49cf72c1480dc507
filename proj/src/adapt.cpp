#include "avqe/adapt.hpp"

#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

#include "avqe/errors.hpp"

namespace avqe {

Eigen::VectorXd screen_pool(const SaProblem& problem, const Ansatz& ansatz) {
    const auto npool = static_cast<Eigen::Index>(problem.pool().size());
    Eigen::VectorXd g = Eigen::VectorXd::Zero(npool);
    Eigen::VectorXd w(problem.pool().basis()->size());
    Eigen::VectorXd t(problem.pool().basis()->size());
    for (std::size_t i = 0; i < problem.k(); ++i) {
        const double weight = problem.refs().weights[static_cast<Eigen::Index>(i)];
        const Eigen::VectorXd u = problem.evolve(ansatz.ops, problem.refs().refs[i].coeffs);
        problem.h().apply(u, w);
        for (Eigen::Index j = 0; j < npool; ++j) {
            problem.pool().op(static_cast<int>(j)).apply(u, t);
            g[j] += 2.0 * weight * w.dot(t);
        }
    }
    return g;
}

std::optional<int> select_operator(const Eigen::VectorXd& g) {
    if (g.size() == 0) {
        throw ValidationError("pool gradient vector is empty");
    }
    const double gmax = g.cwiseAbs().maxCoeff();
    if (gmax == 0.0) {
        return std::nullopt;
    }
    for (Eigen::Index j = 0; j < g.size(); ++j) {
        if (std::abs(g[j]) >= gmax - 1e-12) {
            return static_cast<int>(j);
        }
    }
    return std::nullopt;
}

DressedHamiltonian build_dressed_hamiltonian(const SaProblem& problem, const Ansatz& ansatz) {
    const auto k = static_cast<Eigen::Index>(problem.k());
    std::vector<Eigen::VectorXd> u(static_cast<std::size_t>(k));
    std::vector<Eigen::VectorXd> hu(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        u[static_cast<std::size_t>(i)] =
            problem.evolve(ansatz.ops, problem.refs().refs[static_cast<std::size_t>(i)].coeffs);
        hu[static_cast<std::size_t>(i)] = problem.h().apply(u[static_cast<std::size_t>(i)]);
    }
    Eigen::MatrixXd m(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            m(i, j) = u[static_cast<std::size_t>(i)].dot(hu[static_cast<std::size_t>(j)]);
        }
    }
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        throw NumericalError("dressed Hamiltonian asymmetry " + std::to_string(asym) +
                             " exceeds 1e-10");
    }
    DressedHamiltonian dh;
    dh.matrix = (m + m.transpose()) / 2.0;
    return dh;
}

RitzSolution ritz_diagonalize(const DressedHamiltonian& dh) {
    const double asym = (dh.matrix - dh.matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, dh.matrix.cwiseAbs().maxCoeff())) {
        throw ValidationError("ritz_diagonalize requires a symmetric matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dh.matrix);
    RitzSolution out;
    out.energies = es.eigenvalues();
    out.coeffs = es.eigenvectors();
    for (Eigen::Index c = 0; c < out.coeffs.cols(); ++c) {
        Eigen::Index imax = 0;
        out.coeffs.col(c).cwiseAbs().maxCoeff(&imax);
        if (out.coeffs(imax, c) < 0) {
            out.coeffs.col(c) = -out.coeffs.col(c);
        }
    }
    return out;
}

AdaptResult run_adapt(const SaProblem& problem, const StopCriteria& stop,
                      const MinimizeOptions& opts) {
    if (!stop.max_ops && !stop.grad_norm && !stop.energy_change) {
        throw ValidationError("at least one stop criterion is required");
    }
    AdaptResult result;
    double e_prev = problem.sa_energy(result.ansatz.ops);
    result.e_sa = e_prev;
    std::set<int> distinct;

    auto ritz_now = [&]() {
        if (problem.k() == 1) {
            RitzSolution triv;
            triv.energies = Eigen::VectorXd::Constant(1, result.e_sa);
            triv.coeffs = Eigen::MatrixXd::Identity(1, 1);
            return triv;
        }
        return ritz_diagonalize(build_dressed_hamiltonian(problem, result.ansatz));
    };

    for (int iter = 1;; ++iter) {
        const Eigen::VectorXd g = screen_pool(problem, result.ansatz);
        const double gnorm = g.norm();
        if (stop.grad_norm && gnorm <= *stop.grad_norm) {
            result.trace.stop_reason = "grad_norm";
            break;
        }
        const auto sel = select_operator(g);
        if (!sel) {
            result.trace.stop_reason = "pool_exhausted";
            break;
        }
        result.ansatz.prepend(*sel, 0.0);
        distinct.insert(*sel);

        const MinimizeResult mr = problem.minimize(result.ansatz, opts);
        result.e_sa = mr.f;

        AdaptIterationRecord row;
        row.iter = iter;
        row.pool_id = *sel;
        row.max_grad = g.cwiseAbs().maxCoeff();
        row.grad_norm = gnorm;
        row.e_sa = mr.f;
        row.vqe_iterations = mr.iterations;
        row.n_distinct_ops = static_cast<int>(distinct.size());
        row.ritz_energies = ritz_now().energies;
        result.trace.rows.push_back(std::move(row));

        if (stop.max_ops && static_cast<int>(result.ansatz.size()) >= *stop.max_ops) {
            result.trace.stop_reason = "max_ops";
            break;
        }
        if (stop.energy_change && std::abs(e_prev - result.e_sa) <= *stop.energy_change) {
            result.trace.stop_reason = "energy_change";
            break;
        }
        e_prev = result.e_sa;
    }
    result.ritz = ritz_now();
    return result;
}

}  // namespace avqe
