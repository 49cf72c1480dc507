#include "avqe/properties.hpp"

#include <cmath>

#include "avqe/errors.hpp"

namespace avqe {

PropertyMatrix operator_in_ritz_basis(const FermionOperator& op, const std::string& label,
                                      const Ansatz& ansatz, const CompiledPool& pool,
                                      const std::vector<StateVector>& refs,
                                      const Eigen::MatrixXd& coeffs,
                                      std::shared_ptr<const Basis> eval_basis) {
    const auto k = static_cast<Eigen::Index>(refs.size());
    if (coeffs.rows() != k || coeffs.cols() > k) {
        throw ValidationError("coefficient matrix shape does not match the reference count");
    }
    const double orth = (coeffs.transpose() * coeffs -
                         Eigen::MatrixXd::Identity(coeffs.cols(), coeffs.cols()))
                            .cwiseAbs()
                            .maxCoeff();
    if (orth > 1e-10) {
        throw ValidationError("state coefficients must have orthonormal columns");
    }

    const auto& work_basis = pool.basis();
    std::vector<Eigen::VectorXd> u(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        u[static_cast<std::size_t>(i)] = refs[static_cast<std::size_t>(i)].coeffs;
        for (auto it = ansatz.ops.rbegin(); it != ansatz.ops.rend(); ++it) {
            pool.op(it->pool_id).apply_exp_inplace(it->theta, u[static_cast<std::size_t>(i)]);
        }
    }

    Eigen::MatrixXd m(k, k);
    if (!eval_basis || *eval_basis == *work_basis) {
        const CompiledOperator oc = CompiledOperator::compile(op, work_basis);
        std::vector<Eigen::VectorXd> ou(static_cast<std::size_t>(k));
        for (Eigen::Index j = 0; j < k; ++j) {
            ou[static_cast<std::size_t>(j)] = oc.apply(u[static_cast<std::size_t>(j)]);
        }
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                m(i, j) = u[static_cast<std::size_t>(i)].dot(ou[static_cast<std::size_t>(j)]);
            }
        }
    } else {
        // embed the evolved states into the evaluation basis
        std::vector<Eigen::Index> where(work_basis->size());
        for (std::size_t d = 0; d < work_basis->size(); ++d) {
            const auto idx = eval_basis->index_of(work_basis->det(d));
            if (!idx) {
                throw SectorError("evaluation basis does not contain the working sector");
            }
            where[d] = static_cast<Eigen::Index>(*idx);
        }
        const CompiledOperator oc = CompiledOperator::compile(op, eval_basis);
        std::vector<Eigen::VectorXd> ue(static_cast<std::size_t>(k));
        std::vector<Eigen::VectorXd> ou(static_cast<std::size_t>(k));
        for (Eigen::Index j = 0; j < k; ++j) {
            Eigen::VectorXd big = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(eval_basis->size()));
            for (std::size_t d = 0; d < work_basis->size(); ++d) {
                big[where[d]] = u[static_cast<std::size_t>(j)][static_cast<Eigen::Index>(d)];
            }
            ue[static_cast<std::size_t>(j)] = big;
            ou[static_cast<std::size_t>(j)] = oc.apply(big);
        }
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                m(i, j) = ue[static_cast<std::size_t>(i)].dot(ou[static_cast<std::size_t>(j)]);
            }
        }
    }

    PropertyMatrix out;
    out.label = label;
    out.matrix = coeffs.transpose() * m * coeffs;
    return out;
}

double transition_dipole_sq(int i, int j, const std::array<PropertyMatrix, 3>& dipole_matrices) {
    double total = 0.0;
    for (const auto& pm : dipole_matrices) {
        const double v = pm.matrix(i, j);
        total += v * v;
    }
    return total * kDebyePerEA0 * kDebyePerEA0;
}

}  // namespace avqe
