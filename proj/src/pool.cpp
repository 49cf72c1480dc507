#include "avqe/pool.hpp"

#include <sstream>

#include "avqe/determinant.hpp"

namespace avqe {

namespace {

std::string so_name(int so) {
    return std::to_string(spatial_of(so)) + (spin_of(so) == Spin::alpha ? "a" : "b");
}

int so_irrep(int so, const std::vector<int>& irreps) { return irreps[spatial_of(so)]; }

int so_spin(int so) { return static_cast<int>(spin_of(so)); }

}  // namespace

std::vector<PoolOperator> build_uccgsd_pool(int n_spatial, const std::vector<int>& orbital_irreps) {
    const int nso = 2 * n_spatial;
    std::vector<PoolOperator> pool;

    // generalized singles: a+_p a_q - a+_q a_p, p > q
    for (int p = 1; p < nso; ++p) {
        for (int q = 0; q < p; ++q) {
            if (so_spin(p) != so_spin(q)) {
                continue;
            }
            if ((so_irrep(p, orbital_irreps) ^ so_irrep(q, orbital_irreps)) != 0) {
                continue;
            }
            PoolOperator op;
            op.id = static_cast<int>(pool.size());
            op.rank = 1;
            op.so_indices = {p, q, -1, -1};
            op.generator.add_term(1.0, {cre(p), ann(q)});
            op.generator.add_term(-1.0, {cre(q), ann(p)});
            op.generator.simplify();
            op.label = "s:" + so_name(p) + "<-" + so_name(q);
            pool.push_back(std::move(op));
        }
    }

    // generalized doubles: a+_p a+_q a_r a_s - a+_s a+_r a_q a_p with the
    // creation pair lexicographically above the annihilation pair, so each
    // generator and its conjugate collapse to one entry
    for (int p = 1; p < nso; ++p) {
        for (int q = 0; q < p; ++q) {
            for (int r = 1; r < nso; ++r) {
                for (int s = 0; s < r; ++s) {
                    if (std::make_pair(p, q) <= std::make_pair(r, s)) {
                        continue;
                    }
                    if (so_spin(p) + so_spin(q) != so_spin(r) + so_spin(s)) {
                        continue;
                    }
                    const int sym = so_irrep(p, orbital_irreps) ^ so_irrep(q, orbital_irreps) ^
                                    so_irrep(r, orbital_irreps) ^ so_irrep(s, orbital_irreps);
                    if (sym != 0) {
                        continue;
                    }
                    PoolOperator op;
                    op.id = static_cast<int>(pool.size());
                    op.rank = 2;
                    op.so_indices = {p, q, r, s};
                    op.generator.add_term(1.0, {cre(p), cre(q), ann(r), ann(s)});
                    op.generator.add_term(-1.0, {cre(s), cre(r), ann(q), ann(p)});
                    op.generator.simplify();
                    op.label = "d:" + so_name(p) + "," + so_name(q) + "<-" + so_name(r) + "," +
                               so_name(s);
                    pool.push_back(std::move(op));
                }
            }
        }
    }
    return pool;
}

}  // namespace avqe
