#include "dense_oracle.hpp"

#include <bit>

#include <unsupported/Eigen/MatrixFunctions>

namespace avqe::testing {

Eigen::MatrixXd dense_creation(int n_so, int so) {
    const int dim = 1 << n_so;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    const unsigned bit = 1u << so;
    const unsigned below = bit - 1;
    for (unsigned ket = 0; ket < static_cast<unsigned>(dim); ++ket) {
        if (ket & bit) {
            continue;
        }
        const int sign = (std::popcount(ket & below) & 1) ? -1 : 1;
        m(static_cast<int>(ket | bit), static_cast<int>(ket)) = sign;
    }
    return m;
}

Eigen::MatrixXd dense_operator(const FermionOperator& op, int n_so) {
    const int dim = 1 << n_so;
    Eigen::MatrixXd total = op.constant() * Eigen::MatrixXd::Identity(dim, dim);
    for (const auto& term : op.terms()) {
        Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(dim, dim);
        for (const auto& sq : term.ops) {
            const Eigen::MatrixXd c = dense_creation(n_so, sq.index);
            prod = prod * (sq.action == SQAction::create ? c : Eigen::MatrixXd(c.transpose()));
        }
        total += term.coeff * prod;
    }
    return total;
}

Eigen::MatrixXd dense_exp(const Eigen::MatrixXd& m) { return m.exp(); }

Eigen::MatrixXd fock_embedding(const Basis& basis, int n_so) {
    const int dim = 1 << n_so;
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto mask = basis.det(i).spin_orbital_mask();
        e(static_cast<Eigen::Index>(mask), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return e;
}

Eigen::MatrixXd dense_sector_operator(const FermionOperator& op, const Basis& basis) {
    const int n_so = 2 * basis.n_spatial();
    const Eigen::MatrixXd e = fock_embedding(basis, n_so);
    return e.transpose() * dense_operator(op, n_so) * e;
}

}  // namespace avqe::testing
