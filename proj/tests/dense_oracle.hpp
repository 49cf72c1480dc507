#pragma once

// Independent dense-matrix reference implementation used only by tests.
// Operators are realized as explicit 2^n x 2^n creation/annihilation matrices
// with the parity-below-index sign convention, combined with plain Eigen
// matrix algebra and Pade-based matrix exponentials, so every production-path
// result can be checked against straightforward dense linear algebra.

#include <Eigen/Dense>

#include "avqe/apply.hpp"
#include "avqe/basis.hpp"
#include "avqe/fermion_operator.hpp"

namespace avqe::testing {

/// Dense a+_so over the full Fock space of n_so spin orbitals.
Eigen::MatrixXd dense_creation(int n_so, int so);

/// Dense matrix of a whole FermionOperator (constant included).
Eigen::MatrixXd dense_operator(const FermionOperator& op, int n_so);

/// exp(M) via Eigen's Pade approximation (unsupported/MatrixFunctions).
Eigen::MatrixXd dense_exp(const Eigen::MatrixXd& m);

/// 0/1 embedding matrix mapping sector basis coordinates into Fock space.
Eigen::MatrixXd fock_embedding(const Basis& basis, int n_so);

/// Dense matrix of op restricted to the sector basis.
Eigen::MatrixXd dense_sector_operator(const FermionOperator& op, const Basis& basis);

}  // namespace avqe::testing
