#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"

#include "avqe/apply.hpp"
#include "avqe/basis.hpp"
#include "avqe/hamiltonian.hpp"
#include "avqe/pool.hpp"
#include "test_helpers.hpp"

using namespace avqe;
using avqe::testing::random_state;

namespace {

/// Brute-force enumerator over all index tuples with the pool's filters,
/// counting distinct generators up to overall sign. Kept independent of the
/// production enumeration (set semantics instead of loop ordering).
struct BruteCounts {
    std::set<std::set<int>> singles;
    std::set<std::set<std::set<int>>> doubles;
};

BruteCounts brute_force_pool(int n_spatial, const std::vector<int>& irreps) {
    const int nso = 2 * n_spatial;
    auto so_irrep = [&](int so) { return irreps[static_cast<std::size_t>(spatial_of(so))]; };
    auto so_spin = [](int so) { return static_cast<int>(spin_of(so)); };
    BruteCounts out;
    for (int p = 0; p < nso; ++p) {
        for (int q = 0; q < nso; ++q) {
            if (p == q || so_spin(p) != so_spin(q)) {
                continue;
            }
            if ((so_irrep(p) ^ so_irrep(q)) != 0) {
                continue;
            }
            out.singles.insert({p, q});
        }
    }
    for (int p = 0; p < nso; ++p) {
        for (int q = 0; q < nso; ++q) {
            for (int r = 0; r < nso; ++r) {
                for (int s = 0; s < nso; ++s) {
                    if (p == q || r == s) {
                        continue;
                    }
                    const std::set<int> cre_pair{p, q};
                    const std::set<int> ann_pair{r, s};
                    if (cre_pair == ann_pair) {
                        continue;
                    }
                    if (so_spin(p) + so_spin(q) != so_spin(r) + so_spin(s)) {
                        continue;
                    }
                    if ((so_irrep(p) ^ so_irrep(q) ^ so_irrep(r) ^ so_irrep(s)) != 0) {
                        continue;
                    }
                    out.doubles.insert({cre_pair, ann_pair});
                }
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("pool: a single orbital admits no symmetric excitations") {
    CHECK(build_uccgsd_pool(1, {0}).empty());
}

TEST_CASE("pool counts match brute-force enumeration") {
    struct Case {
        int n;
        std::vector<int> irreps;
    };
    const Case cases[] = {
        {2, {0, 0}},
        {4, {0, 1, 2, 3}},   // rectangular H4
        {4, {0, 4, 0, 4}},   // linear H4 (ag/b1u alternation)
        {7, {0, 0, 2, 0, 1, 0, 2}},  // BeH2-like
    };
    for (const auto& c : cases) {
        const auto pool = build_uccgsd_pool(c.n, c.irreps);
        const auto brute = brute_force_pool(c.n, c.irreps);
        std::size_t n_singles = 0;
        std::size_t n_doubles = 0;
        for (const auto& op : pool) {
            (op.rank == 1 ? n_singles : n_doubles) += 1;
        }
        CHECK(n_singles == brute.singles.size());
        CHECK(n_doubles == brute.doubles.size());
    }

    // frozen regression values from the enumerator above
    const auto h4_rect = build_uccgsd_pool(4, {0, 1, 2, 3});
    const auto h4_line = build_uccgsd_pool(4, {0, 4, 0, 4});
    const auto beh2 = build_uccgsd_pool(7, {0, 0, 2, 0, 1, 0, 2});
    CHECK(brute_force_pool(4, {0, 1, 2, 3}).singles.empty());
    CHECK(h4_rect.size() == 30);
    CHECK(h4_line.size() == 74);
    CHECK(beh2.size() == 490);
}

TEST_CASE("pool: n_spatial = 2, both orbitals the same irrep") {
    const auto pool = build_uccgsd_pool(2, {0, 0});
    // singles: the alpha-alpha and beta-beta hops between the two orbitals
    std::size_t n_singles = 0;
    for (const auto& op : pool) {
        n_singles += op.rank == 1 ? 1 : 0;
    }
    CHECK(n_singles == 2);
    const auto brute = brute_force_pool(2, {0, 0});
    CHECK(n_singles == brute.singles.size());
    CHECK(pool.size() - n_singles == brute.doubles.size());
}

TEST_CASE("pool generators are anti-Hermitian and conserve N and Sz") {
    std::mt19937 rng(31337);
    const std::vector<int> irreps = {0, 1, 2, 3};
    const auto pool = build_uccgsd_pool(4, irreps);
    auto basis = enumerate_basis(4, 2, 2, std::nullopt, irreps);

    FermionOperator number;
    FermionOperator sz;
    for (int p = 0; p < 4; ++p) {
        for (const Spin s : {Spin::alpha, Spin::beta}) {
            number.add_term(1.0, {cre(spin_orbital(p, s)), ann(spin_orbital(p, s))});
            sz.add_term(s == Spin::alpha ? 0.5 : -0.5,
                        {cre(spin_orbital(p, s)), ann(spin_orbital(p, s))});
        }
    }
    number.simplify();
    sz.simplify();
    const CompiledOperator nc = CompiledOperator::compile(number, basis);
    const CompiledOperator szc = CompiledOperator::compile(sz, basis);

    for (const auto& op : pool) {
        CHECK(op.generator.anti_hermiticity_defect() == 0.0);
        const CompiledOperator a = CompiledOperator::compile(op.generator, basis);
        const StateVector u = random_state(rng, basis);
        const StateVector v = random_state(rng, basis);
        CHECK(u.coeffs.dot(a.apply(v.coeffs)) ==
              doctest::Approx(-a.apply(u.coeffs).dot(v.coeffs)).epsilon(1e-12));
        // commutators with N and Sz
        const Eigen::VectorXd na = nc.apply(a.apply(v.coeffs));
        const Eigen::VectorXd an = a.apply(nc.apply(v.coeffs));
        CHECK((na - an).norm() < 1e-12);
        const Eigen::VectorXd sa = szc.apply(a.apply(v.coeffs));
        const Eigen::VectorXd as = a.apply(szc.apply(v.coeffs));
        CHECK((sa - as).norm() < 1e-12);
    }
}

TEST_CASE("pool generators keep the Ag sector invariant for rectangular H4") {
    const std::vector<int> irreps = {0, 1, 2, 3};
    const auto pool = build_uccgsd_pool(4, irreps);
    auto ag = enumerate_basis(4, 2, 2, std::vector<int>{0}, irreps);
    std::mt19937 rng(11);
    const StateVector v = random_state(rng, ag);
    for (const auto& op : pool) {
        // compilation itself throws if any term leaves the sector
        const CompiledOperator a = CompiledOperator::compile(op.generator, ag);
        CHECK(a.apply(v.coeffs).allFinite());
    }
}

TEST_CASE("pool ordering is deterministic with stable ids") {
    const std::vector<int> irreps = {0, 0, 2, 0, 1, 0, 2};
    const auto a = build_uccgsd_pool(7, irreps);
    const auto b = build_uccgsd_pool(7, irreps);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == static_cast<int>(i));
        CHECK(a[i].label == b[i].label);
        CHECK(a[i].so_indices == b[i].so_indices);
    }
}
