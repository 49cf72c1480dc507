#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "avqe/apply.hpp"
#include "avqe/basis.hpp"
#include "avqe/fermion_operator.hpp"
#include "avqe/state_vector.hpp"

namespace avqe {

/// Exact spectrum of a Hamiltonian restricted to one sector basis.
struct FciSpectrum {
    std::shared_ptr<const Basis> basis;
    Eigen::VectorXd energies;   // ascending
    Eigen::MatrixXd vectors;    // orthonormal columns
    Eigen::VectorXd s2_values;  // <S^2> per state

    StateVector state(int i) const {
        return StateVector{basis, vectors.col(i)};
    }
};

/// Lowest n_states eigenpairs of H on the given basis. Dense symmetric solve
/// for |basis| <= dense_limit (default 4000), Lanczos with full
/// reorthogonalization above. Degenerate eigenvectors are canonicalized by
/// sub-diagonalizing the determinant-irrep label operator and then S^2 within
/// each cluster.
FciSpectrum fci_solve(const FermionOperator& h, std::shared_ptr<const Basis> basis, int n_states,
                      std::size_t dense_limit = 4000);

/// Greedy maximum-|overlap| matching of approximate states onto exact ones.
struct StateAssignment {
    std::vector<int> map;        // approx i -> exact index
    Eigen::VectorXd overlap_sq;  // |<approx_i | exact_map[i]>|^2
    std::vector<bool> ambiguous;  // overlap_sq < 0.5
};

StateAssignment assign_states(const std::vector<StateVector>& approx, const FciSpectrum& exact);

}  // namespace avqe
