#include "avqe/hamiltonian.hpp"

#include "avqe/determinant.hpp"

namespace avqe {

FermionOperator build_hamiltonian(const MolecularIntegrals& mi) {
    const int n = mi.n_spatial;
    FermionOperator h(mi.core_energy);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            const double v = mi.one_body(p, q);
            if (v == 0.0) {
                continue;
            }
            for (const Spin s : {Spin::alpha, Spin::beta}) {
                h.add_term(v, {cre(spin_orbital(p, s)), ann(spin_orbital(q, s))});
            }
        }
    }
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            for (int r = 0; r < n; ++r) {
                for (int s = 0; s < n; ++s) {
                    const double v = mi.g(p, q, r, s);
                    if (v == 0.0) {
                        continue;
                    }
                    for (const Spin sig : {Spin::alpha, Spin::beta}) {
                        for (const Spin tau : {Spin::alpha, Spin::beta}) {
                            h.add_term(0.5 * v, {cre(spin_orbital(p, sig)), cre(spin_orbital(r, tau)),
                                                 ann(spin_orbital(s, tau)), ann(spin_orbital(q, sig))});
                        }
                    }
                }
            }
        }
    }
    h.simplify();
    return h;
}

FermionOperator build_s_squared(int n_spatial) {
    FermionOperator op;
    for (int p = 0; p < n_spatial; ++p) {
        const int pa = spin_orbital(p, Spin::alpha);
        const int pb = spin_orbital(p, Spin::beta);
        // N_beta from S-S+, plus Sz and the diagonal of Sz^2
        op.add_term(1.0 + (-0.5) + 0.25, {cre(pb), ann(pb)});
        op.add_term(0.5 + 0.25, {cre(pa), ann(pa)});
    }
    for (int p = 0; p < n_spatial; ++p) {
        for (int q = 0; q < n_spatial; ++q) {
            const int pa = spin_orbital(p, Spin::alpha);
            const int pb = spin_orbital(p, Spin::beta);
            const int qa = spin_orbital(q, Spin::alpha);
            const int qb = spin_orbital(q, Spin::beta);
            // -a+_pb a+_qa a_pa a_qb  (two-body part of S-S+)
            op.add_term(-1.0, {cre(pb), cre(qa), ann(pa), ann(qb)});
            // Sz^2 two-body: 1/4 (aa + bb - ab - ba)
            op.add_term(0.25, {cre(pa), cre(qa), ann(qa), ann(pa)});
            op.add_term(0.25, {cre(pb), cre(qb), ann(qb), ann(pb)});
            op.add_term(-0.25, {cre(pa), cre(qb), ann(qb), ann(pa)});
            op.add_term(-0.25, {cre(pb), cre(qa), ann(qa), ann(pb)});
        }
    }
    op.simplify();
    return op;
}

FermionOperator build_dipole(const PropertyIntegrals& pi) {
    const int n = static_cast<int>(pi.one_body.rows());
    FermionOperator mu(pi.nuclear_term);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            const double v = pi.one_body(p, q);
            if (v == 0.0) {
                continue;
            }
            for (const Spin s : {Spin::alpha, Spin::beta}) {
                mu.add_term(-v, {cre(spin_orbital(p, s)), ann(spin_orbital(q, s))});
            }
        }
    }
    mu.simplify();
    return mu;
}

HamiltonianSet build_hamiltonian_set(const MolecularIntegrals& mi,
                                     const std::array<PropertyIntegrals, 3>& dipoles) {
    HamiltonianSet set;
    set.h = build_hamiltonian(mi);
    set.s_squared = build_s_squared(mi.n_spatial);
    for (int ax = 0; ax < 3; ++ax) {
        set.dipole[ax] = build_dipole(dipoles[ax]);
    }
    return set;
}

}  // namespace avqe
