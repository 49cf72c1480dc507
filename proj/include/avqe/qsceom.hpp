#pragma once

#include <vector>

#include <Eigen/Dense>

#include "avqe/vqe.hpp"

namespace avqe {

/// q-sc-EOM output: excited energies from diagonalizing U+ H U over the
/// manifold states only, with the ground-manifold coupling block reported as
/// a diagnostic (it vanishes when U phi0 is an exact eigenstate).
struct QscEomResult {
    double ground_energy = 0.0;
    Eigen::VectorXd excited_energies;  // ascending
    Eigen::MatrixXd manifold_coeffs;   // orthogonal, column i = excited state i
    Eigen::VectorXd coupling;          // <phi0| U+ H U |phi_i>
    double coupling_norm = 0.0;
};

QscEomResult run_qsceom(const Ansatz& ground_ansatz, const CompiledPool& pool,
                        const StateVector& phi0, const std::vector<StateVector>& manifold,
                        const CompiledOperator& h);

}  // namespace avqe
