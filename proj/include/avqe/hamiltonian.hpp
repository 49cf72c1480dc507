#pragma once

#include <array>

#include "avqe/fermion_operator.hpp"
#include "avqe/integrals.hpp"

namespace avqe {

/// The operators of one molecular problem: H (hartree), S^2 (hbar^2) and the
/// three dipole components (e*a0).
struct HamiltonianSet {
    FermionOperator h;
    FermionOperator s_squared;
    std::array<FermionOperator, 3> dipole;
};

/// Standard second-quantized electronic Hamiltonian, spin-summed from spatial
/// tensors: core + sum h_pq a+_p a_q + 1/2 sum (pq|rs) a+_p a+_r a_s a_q.
FermionOperator build_hamiltonian(const MolecularIntegrals& mi);

/// S^2 = S-S+ + Sz(Sz + 1), expanded to normal-ordered strings.
FermionOperator build_s_squared(int n_spatial);

/// mu = nuclear_term - sum mu_pq a+_p a_q (spin-summed); the electron charge
/// is folded in so matrix elements are dipole moments in e*a0 directly.
FermionOperator build_dipole(const PropertyIntegrals& pi);

HamiltonianSet build_hamiltonian_set(const MolecularIntegrals& mi,
                                     const std::array<PropertyIntegrals, 3>& dipoles);

}  // namespace avqe
