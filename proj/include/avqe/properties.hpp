#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "avqe/vqe.hpp"

namespace avqe {

/// Conversion of one dipole matrix element from e*a0 to Debye.
constexpr double kDebyePerEA0 = 2.541746;

struct PropertyMatrix {
    std::string label;
    Eigen::MatrixXd matrix;  // <Psi_i | O | Psi_j>
};

/// O in the basis of the rotated states Psi_i = U sum_j coeffs(j,i) phi_j:
/// Obar = C^T M C with M_ij = <phi_i| U+ O U |phi_j>. When the operator maps
/// states outside the working sector (dipole components can), pass the basis
/// to evaluate in via eval_basis; states are embedded before application.
PropertyMatrix operator_in_ritz_basis(const FermionOperator& op, const std::string& label,
                                      const Ansatz& ansatz, const CompiledPool& pool,
                                      const std::vector<StateVector>& refs,
                                      const Eigen::MatrixXd& coeffs,
                                      std::shared_ptr<const Basis> eval_basis = nullptr);

/// |mu_ij|^2 in Debye^2, summed over the three Cartesian property matrices.
double transition_dipole_sq(int i, int j, const std::array<PropertyMatrix, 3>& dipole_matrices);

}  // namespace avqe
