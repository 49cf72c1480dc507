#pragma once

#include <array>
#include <string>
#include <vector>

#include "avqe/fermion_operator.hpp"

namespace avqe {

/// One anti-Hermitian UCCGSD generator with a stable id and the spin-orbital
/// index label it was built from.
struct PoolOperator {
    int id = -1;
    FermionOperator generator;
    std::string label;
    int irrep = 0;                       // totally symmetric after filtering
    std::array<int, 4> so_indices{};     // (p,q,-,-) singles / (p,q,r,s) doubles
    int rank = 1;                        // 1 = single, 2 = double
};

/// All distinct generalized single and double excitation generators over spin
/// orbitals, deduplicated up to overall sign, keeping only particle- and
/// Sz-conserving, totally symmetric ones. Ordering (and therefore ids) is
/// deterministic: singles sorted by (p,q), then doubles by (p,q,r,s).
std::vector<PoolOperator> build_uccgsd_pool(int n_spatial, const std::vector<int>& orbital_irreps);

}  // namespace avqe
