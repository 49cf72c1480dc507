#include "avqe/qsceom.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "avqe/errors.hpp"

namespace avqe {

QscEomResult run_qsceom(const Ansatz& ground_ansatz, const CompiledPool& pool,
                        const StateVector& phi0, const std::vector<StateVector>& manifold,
                        const CompiledOperator& h) {
    const auto m = static_cast<Eigen::Index>(manifold.size());
    if (m == 0) {
        throw ValidationError("q-sc-EOM needs a non-empty manifold");
    }
    std::vector<const StateVector*> all;
    all.push_back(&phi0);
    for (const auto& s : manifold) {
        all.push_back(&s);
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!(all[i]->basis == pool.basis() || (all[i]->basis && *all[i]->basis == *pool.basis()))) {
            throw ValidationError("q-sc-EOM states must live on the pool basis");
        }
        for (std::size_t j = 0; j <= i; ++j) {
            const double ov = all[i]->coeffs.dot(all[j]->coeffs);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(ov - want) > 1e-10) {
                throw ValidationError("q-sc-EOM reference and manifold must be orthonormal");
            }
        }
    }

    auto evolve = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd u = v;
        for (auto it = ground_ansatz.ops.rbegin(); it != ground_ansatz.ops.rend(); ++it) {
            pool.op(it->pool_id).apply_exp_inplace(it->theta, u);
        }
        return u;
    };

    const Eigen::VectorXd u0 = evolve(phi0.coeffs);
    const Eigen::VectorXd hu0 = h.apply(u0);

    QscEomResult out;
    out.ground_energy = u0.dot(hu0);
    out.coupling.resize(m);

    std::vector<Eigen::VectorXd> u(static_cast<std::size_t>(m));
    std::vector<Eigen::VectorXd> hu(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        u[static_cast<std::size_t>(i)] = evolve(manifold[static_cast<std::size_t>(i)].coeffs);
        hu[static_cast<std::size_t>(i)] = h.apply(u[static_cast<std::size_t>(i)]);
        out.coupling[i] = u0.dot(hu[static_cast<std::size_t>(i)]);
    }
    out.coupling_norm = out.coupling.norm();

    Eigen::MatrixXd block(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            block(i, j) = u[static_cast<std::size_t>(i)].dot(hu[static_cast<std::size_t>(j)]);
        }
    }
    block = (block + block.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    out.excited_energies = es.eigenvalues();
    out.manifold_coeffs = es.eigenvectors();
    for (Eigen::Index c = 0; c < m; ++c) {
        Eigen::Index imax = 0;
        out.manifold_coeffs.col(c).cwiseAbs().maxCoeff(&imax);
        if (out.manifold_coeffs(imax, c) < 0) {
            out.manifold_coeffs.col(c) = -out.manifold_coeffs.col(c);
        }
    }
    return out;
}

}  // namespace avqe
