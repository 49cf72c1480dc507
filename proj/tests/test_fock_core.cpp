#include <cmath>
#include <random>

#include "doctest.h"

#include "avqe/apply.hpp"
#include "avqe/basis.hpp"
#include "avqe/errors.hpp"
#include "avqe/hamiltonian.hpp"
#include "avqe/pool.hpp"
#include "dense_oracle.hpp"
#include "test_helpers.hpp"

using namespace avqe;
using avqe::testing::dense_exp;
using avqe::testing::dense_operator;
using avqe::testing::dense_sector_operator;
using avqe::testing::fock_embedding;
using avqe::testing::random_determinant;
using avqe::testing::random_state;

namespace {

const std::vector<int> kH4RectIrreps = {0, 1, 2, 3};  // ag, b3u, b2u, b1g (XOR codes)
const std::vector<int> kBeH2Irreps = {0, 0, 2, 0, 1, 0, 2};  // 4 a1, 2 b2, 1 b1

}  // namespace

TEST_CASE("enumerate_basis reproduces the sector dimensions of the target systems") {
    // BeH2 (6,7): Ms = 0 sectors of a1 and b2 symmetry
    auto a1 = enumerate_basis(7, 3, 3, std::vector<int>{0}, kBeH2Irreps);
    CHECK(a1->size() == 321);
    auto b2 = enumerate_basis(7, 3, 3, std::vector<int>{2}, kBeH2Irreps);
    CHECK(b2->size() == 304);
    auto uni = enumerate_basis(7, 3, 3, std::vector<int>{0, 2}, kBeH2Irreps);
    CHECK(uni->size() == 625);

    // rectangular H4: 12/8/8/8 over ag/b1g/b2u/b3u, total 36
    auto all = enumerate_basis(4, 2, 2, std::nullopt, kH4RectIrreps);
    CHECK(all->size() == 36);
    CHECK(enumerate_basis(4, 2, 2, std::vector<int>{0}, kH4RectIrreps)->size() == 12);
    CHECK(enumerate_basis(4, 2, 2, std::vector<int>{3}, kH4RectIrreps)->size() == 8);
    CHECK(enumerate_basis(4, 2, 2, std::vector<int>{1}, kH4RectIrreps)->size() == 8);
    CHECK(enumerate_basis(4, 2, 2, std::vector<int>{2}, kH4RectIrreps)->size() == 8);
}

TEST_CASE("enumerate_basis edge cases and ordering") {
    auto empty = enumerate_basis(3, 0, 0, std::nullopt, {0, 0, 0});
    REQUIRE(empty->size() == 1);
    CHECK(empty->det(0) == Determinant{});

    auto basis = enumerate_basis(4, 2, 2, std::nullopt, kH4RectIrreps);
    for (std::size_t i = 0; i + 1 < basis->size(); ++i) {
        CHECK(basis->det(i) < basis->det(i + 1));
    }
    for (std::size_t i = 0; i < basis->size(); ++i) {
        CHECK(basis->index_of(basis->det(i)) == i);
    }
    CHECK(!basis->index_of(Determinant{0b1111, 0}).has_value());
}

TEST_CASE("sector sizes sum over irreps to the unfiltered size") {
    for (int irycombo = 0; irycombo < 2; ++irycombo) {
        const auto& irreps = irycombo ? kBeH2Irreps : kH4RectIrreps;
        const int n = static_cast<int>(irreps.size());
        auto all = enumerate_basis(n, 2, 1, std::nullopt, irreps);
        std::size_t total = 0;
        for (int label = 0; label < 8; ++label) {
            total += enumerate_basis(n, 2, 1, std::vector<int>{label}, irreps)->size();
        }
        CHECK(total == all->size());
    }
}

TEST_CASE("apply_string: number operator and a simple hop") {
    const Determinant det{0b1, 0b1};  // both spins on spatial 0
    // a+_0a a_0a
    auto r = apply_string(det, std::vector<SQOp>{cre(0), ann(0)});
    REQUIRE(r.has_value());
    CHECK(r->first == det);
    CHECK(r->second == 1);

    // a+_1a a_0a on |alpha on 0> -> |alpha on 1>, no intervening occupation
    const Determinant one{0b1, 0};
    auto hop = apply_string(one, std::vector<SQOp>{cre(2), ann(0)});
    REQUIRE(hop.has_value());
    CHECK(hop->first == Determinant{0b10, 0});
    CHECK(hop->second == 1);

    // annihilating an empty orbital kills the determinant
    CHECK(!apply_string(one, std::vector<SQOp>{ann(1)}).has_value());
    // creating a filled orbital kills it too
    CHECK(!apply_string(one, std::vector<SQOp>{cre(0)}).has_value());
}

TEST_CASE("apply_string agrees with the dense Jordan-Wigner oracle on random strings") {
    std::mt19937 rng(20240811);
    const int n_so = 8;
    std::uniform_int_distribution<int> so_dist(0, n_so - 1);
    std::uniform_int_distribution<int> len_dist(1, 2);
    std::uniform_int_distribution<std::uint32_t> mask_dist(0, 15);

    for (int trial = 0; trial < 200; ++trial) {
        const Determinant det{mask_dist(rng), mask_dist(rng)};
        // particle-conserving random string
        const int pairs = len_dist(rng);
        std::vector<SQOp> ops;
        for (int p = 0; p < pairs; ++p) {
            ops.push_back(cre(so_dist(rng)));
        }
        for (int p = 0; p < pairs; ++p) {
            ops.push_back(ann(so_dist(rng)));
        }
        FermionOperator op;
        try {
            op.add_term(1.0, ops);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (op.n_terms() == 0) {
            continue;  // canonicalized to zero
        }
        const Eigen::MatrixXd dense = dense_operator(op, n_so);
        const auto in_index = static_cast<Eigen::Index>(det.spin_orbital_mask());
        const Eigen::VectorXd column = dense.col(in_index);

        const auto hit = apply_string(det, op.terms()[0].ops);
        if (!hit) {
            CHECK(column.cwiseAbs().maxCoeff() == 0.0);
        } else {
            const auto out_index = static_cast<Eigen::Index>(hit->first.spin_orbital_mask());
            CHECK(column(out_index) == doctest::Approx(op.terms()[0].coeff * hit->second).epsilon(1e-15));
            CHECK(column.cwiseAbs().sum() == doctest::Approx(std::abs(column(out_index))).epsilon(1e-15));
        }
    }
}

TEST_CASE("apply_operator: identity, number operator, linearity, hermiticity") {
    std::mt19937 rng(7);
    auto basis = enumerate_basis(4, 2, 2, std::nullopt, kH4RectIrreps);
    const StateVector v = random_state(rng, basis);

    FermionOperator ident(1.0);
    const StateVector w = apply_operator(ident, v);
    CHECK((w.coeffs - v.coeffs).norm() == 0.0);

    FermionOperator number;
    for (int so = 0; so < 8; ++so) {
        number.add_term(1.0, {cre(so), ann(so)});
    }
    number.simplify();
    const StateVector nv = apply_operator(number, v);
    CHECK((nv.coeffs - 4.0 * v.coeffs).norm() < 1e-13);

    // linearity: op(alpha u + beta w) = alpha op(u) + beta op(w)
    const StateVector u = random_state(rng, basis);
    FermionOperator s2 = build_s_squared(4);
    StateVector mix{basis, 0.3 * u.coeffs - 1.7 * v.coeffs};
    const Eigen::VectorXd lhs = apply_operator(s2, mix).coeffs;
    const Eigen::VectorXd rhs =
        0.3 * apply_operator(s2, u).coeffs - 1.7 * apply_operator(s2, v).coeffs;
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() < 1e-13);

    // hermitian adjointness <u|Ov> = <Ou|v>
    const double a = u.coeffs.dot(apply_operator(s2, v).coeffs);
    const double b = apply_operator(s2, u).coeffs.dot(v.coeffs);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("apply_operator flags sector-leaving terms instead of projecting") {
    auto ag = enumerate_basis(4, 2, 2, std::vector<int>{0}, kH4RectIrreps);
    std::mt19937 rng(3);
    const StateVector v = random_state(rng, ag);
    FermionOperator hop;  // moves an electron from ag(0) to b3u(1): leaves ag
    hop.add_term(1.0, {cre(spin_orbital(1, Spin::alpha)), ann(spin_orbital(0, Spin::alpha))});
    CHECK_THROWS_AS(apply_operator(hop, v), SectorError);
}

TEST_CASE("apply_exp: closed forms and inverse property") {
    // single excitation rotation on a one-electron basis
    auto basis = enumerate_basis(2, 1, 0, std::nullopt, {0, 0});
    REQUIRE(basis->size() == 2);
    StateVector v{basis, Eigen::VectorXd::Zero(2)};
    const auto i0 = *basis->index_of(Determinant{0b01, 0});
    const auto i1 = *basis->index_of(Determinant{0b10, 0});
    v.coeffs[static_cast<Eigen::Index>(i0)] = 1.0;

    FermionOperator gen;
    gen.add_term(1.0, {cre(2), ann(0)});
    gen.add_term(-1.0, {cre(0), ann(2)});
    gen.simplify();

    const double theta = 0.37;
    const StateVector rot = apply_exp(gen, theta, v);
    CHECK(rot.coeffs[static_cast<Eigen::Index>(i0)] == doctest::Approx(std::cos(theta)).epsilon(1e-14));
    CHECK(rot.coeffs[static_cast<Eigen::Index>(i1)] == doctest::Approx(std::sin(theta)).epsilon(1e-14));

    const StateVector zero = apply_exp(gen, 0.0, v);
    CHECK((zero.coeffs - v.coeffs).norm() == 0.0);

    const StateVector back = apply_exp(gen, -theta, rot);
    CHECK((back.coeffs - v.coeffs).norm() < 1e-10);
}

TEST_CASE("apply_exp matches the dense matrix exponential for random UCCGSD generators") {
    std::mt19937 rng(20240812);
    const std::vector<int> irreps = {0, 0, 0, 0};
    const auto pool = build_uccgsd_pool(4, irreps);
    REQUIRE(pool.size() > 10);
    auto basis = enumerate_basis(4, 2, 2, std::nullopt, irreps);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

    const Eigen::MatrixXd embed = fock_embedding(*basis, 8);
    for (int trial = 0; trial < 12; ++trial) {
        const auto& gen = pool[pick(rng)].generator;
        const StateVector v = random_state(rng, basis);
        const double theta = 0.3;
        const StateVector fast = apply_exp(gen, theta, v);

        const Eigen::MatrixXd dense = dense_operator(gen, 8);
        const Eigen::VectorXd ref = embed.transpose() * dense_exp(theta * dense) * (embed * v.coeffs);
        CHECK((fast.coeffs - ref).lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK(std::abs(fast.coeffs.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("compiled exponential paths agree: pair rotations vs Taylor vs generic") {
    std::mt19937 rng(99);
    const std::vector<int> irreps = {0, 1, 2, 3};
    const auto pool = build_uccgsd_pool(4, irreps);
    auto basis = enumerate_basis(4, 2, 2, std::nullopt, irreps);
    std::uniform_real_distribution<double> theta_dist(-2.5, 2.5);

    int rotatable = 0;
    for (const auto& p : pool) {
        const CompiledOperator cop = CompiledOperator::compile(p.generator, basis);
        const StateVector v = random_state(rng, basis);
        const double theta = theta_dist(rng);

        Eigen::VectorXd via_default = v.coeffs;
        cop.apply_exp_inplace(theta, via_default);
        Eigen::VectorXd via_taylor = v.coeffs;
        cop.apply_exp_taylor(theta, via_taylor);
        const StateVector via_generic = apply_exp(p.generator, theta, v);

        CHECK((via_default - via_taylor).lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK((via_default - via_generic.coeffs).lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK(std::abs(via_default.norm() - 1.0) < 1e-12);
        rotatable += cop.has_rotation_form() ? 1 : 0;
    }
    CHECK(rotatable == static_cast<int>(pool.size()));
}

TEST_CASE("apply_exp norm preservation across random generators and angles") {
    std::mt19937 rng(4242);
    const std::vector<int> irreps = {0, 0, 1, 1};
    const auto pool = build_uccgsd_pool(4, irreps);
    auto basis = enumerate_basis(4, 2, 2, std::nullopt, irreps);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_real_distribution<double> theta_dist(-3.0, 3.0);
    for (int trial = 0; trial < 40; ++trial) {
        const StateVector v = random_state(rng, basis);
        const double theta = theta_dist(rng);
        const auto& gen = pool[pick(rng)].generator;
        const StateVector w = apply_exp(gen, theta, v);
        CHECK(std::abs(w.coeffs.norm() - 1.0) < 1e-12);
        const StateVector back = apply_exp(gen, -theta, w);
        CHECK((back.coeffs - v.coeffs).lpNorm<Eigen::Infinity>() < 1e-10);
    }
}

TEST_CASE("build_reference: single determinants and the B1g CSF pair") {
    auto basis = enumerate_basis(4, 2, 2, std::nullopt, kH4RectIrreps);
    const CompiledOperator s2 = CompiledOperator::compile(build_s_squared(4), basis);

    // single determinant
    const Determinant hf = determinant_from_string("2200");
    const StateVector ref = build_reference({{hf, 1.0}}, basis);
    CHECK(ref.coeffs.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ref.coeffs[static_cast<Eigen::Index>(*basis->index_of(hf))] == doctest::Approx(1.0));

    // open-shell singlet (minus combination): <S^2> = 0
    const Determinant d1 = determinant_from_string("20ab");
    const Determinant d2 = determinant_from_string("20ba");
    const StateVector singlet = build_reference({{d1, 1.0}, {d2, -1.0}}, basis);
    CHECK(s2.expectation(singlet.coeffs) == doctest::Approx(0.0).epsilon(1e-12));

    // plus combination: triplet, <S^2> = 2
    const StateVector triplet = build_reference({{d1, 1.0}, {d2, 1.0}}, basis);
    CHECK(s2.expectation(triplet.coeffs) == doctest::Approx(2.0).epsilon(1e-12));

    // determinant outside the sector
    auto ag = enumerate_basis(4, 2, 2, std::vector<int>{0}, kH4RectIrreps);
    CHECK_THROWS_AS(build_reference({{d1, 1.0}}, ag), SectorError);
}

TEST_CASE("occupation strings round-trip") {
    const Determinant det = determinant_from_string("2a0b");
    CHECK(det.n_alpha() == 2);
    CHECK(det.n_beta() == 2);
    CHECK(to_occupation_string(det, 4) == "2a0b");
    CHECK_THROWS_AS(determinant_from_string("20x1"), std::invalid_argument);
}

TEST_CASE("determinant irrep composes by XOR") {
    const Determinant det = determinant_from_string("2ab0");
    // occupied: 0a,0b (ag), 1a (b3u), 2b (b2u) -> 1 ^ 2 = 3 (b1g)
    CHECK(determinant_irrep(det, kH4RectIrreps) == 3);
}
