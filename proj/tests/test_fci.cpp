#include <algorithm>
#include <random>

#include "doctest.h"

#include <Eigen/Eigenvalues>

#include "avqe/errors.hpp"
#include "avqe/fci.hpp"
#include "avqe/hamiltonian.hpp"
#include "avqe/integrals.hpp"
#include "dense_oracle.hpp"
#include "test_helpers.hpp"

using namespace avqe;
using avqe::testing::dense_sector_operator;
using avqe::testing::repo_path;

TEST_CASE("fci_solve on the H2 fixture matches the dense diagonalization oracle") {
    const auto mi = parse_fcidump_file(repo_path("fixtures/h2/h2_r1.00.fcidump"));
    REQUIRE(mi.n_spatial == 2);
    const FermionOperator h = build_hamiltonian(mi);
    auto basis = enumerate_basis(2, 1, 1, std::nullopt, mi.orbital_irreps);
    REQUIRE(basis->size() == 4);

    const FciSpectrum spec = fci_solve(h, basis, 4);

    const Eigen::MatrixXd dense = dense_sector_operator(h, *basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    for (int i = 0; i < 4; ++i) {
        CHECK(spec.energies[i] == doctest::Approx(es.eigenvalues()[i]).epsilon(1e-12));
    }
    // frozen ground-state energy, first computed with the independent
    // dense-diagonalization oracle over the 4-spin-orbital space
    CHECK(spec.energies[0] == doctest::Approx(-1.1088730568996774).epsilon(1e-9));

    // residuals and orthonormality
    const CompiledOperator hc = CompiledOperator::compile(h, basis);
    for (int i = 0; i < 4; ++i) {
        const Eigen::VectorXd resid = hc.apply(spec.vectors.col(i)) - spec.energies[i] * spec.vectors.col(i);
        CHECK(resid.norm() < 1e-10);
        for (int j = 0; j <= i; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            CHECK(spec.vectors.col(i).dot(spec.vectors.col(j)) ==
                  doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("fci_solve: one-determinant basis returns the diagonal element") {
    const auto mi = parse_fcidump_file(repo_path("fixtures/h2/h2_r1.00.fcidump"));
    const FermionOperator h = build_hamiltonian(mi);
    auto basis = enumerate_basis(2, 1, 1, std::vector<int>{determinant_irrep(
                                              determinant_from_string("ab"),
                                              mi.orbital_irreps)},
                                 mi.orbital_irreps);
    // restrict to one determinant by building a tiny basis directly
    std::vector<Determinant> dets = {determinant_from_string("20")};
    auto one = std::make_shared<Basis>(2, dets, SectorSpec{1, 1, std::nullopt}, mi.orbital_irreps);
    const FciSpectrum spec = fci_solve(h, one, 1);
    const CompiledOperator hc = CompiledOperator::compile(h, one);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(1);
    CHECK(spec.energies[0] == doctest::Approx(hc.expectation(v)).epsilon(1e-14));

    CHECK_THROWS_AS(fci_solve(h, one, 2), BoundsError);
}

TEST_CASE("rectangular H4 at the square geometry: degenerate leading determinants") {
    const auto mi = parse_fcidump_file(repo_path("fixtures/h4_rect/h4_rect_r1.00.fcidump"));
    REQUIRE(mi.n_spatial == 4);
    const FermionOperator h = build_hamiltonian(mi);
    auto all = enumerate_basis(4, 2, 2, std::nullopt, mi.orbital_irreps);
    REQUIRE(all->size() == 36);

    const FciSpectrum spec = fci_solve(h, all, 8);

    // ground state: the two leading closed-shell determinants carry equal weight
    const Eigen::VectorXd g = spec.vectors.col(0);
    std::vector<double> w(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        w[static_cast<std::size_t>(i)] = g[i] * g[i];
    }
    std::sort(w.begin(), w.end(), std::greater<>());
    CHECK(w[0] == doctest::Approx(w[1]).epsilon(1e-10));
    CHECK(w[0] > 0.2);

    // the two lowest Ag singlets avoid crossing: finite gap at the square geometry
    auto ag = enumerate_basis(4, 2, 2, std::vector<int>{0}, mi.orbital_irreps);
    const FciSpectrum sag = fci_solve(h, ag, 3);
    double gap = -1.0;
    for (int i = 1; i < 3; ++i) {
        if (sag.s2_values[i] < 0.1) {
            gap = sag.energies[i] - sag.energies[0];
            break;
        }
    }
    CHECK(gap > 1e-3);
}

TEST_CASE("sector eigenvalue multisets: irrep blocks reassemble the full spectrum") {
    const auto mi = parse_fcidump_file(repo_path("fixtures/h4_rect/h4_rect_r1.20.fcidump"));
    const FermionOperator h = build_hamiltonian(mi);
    auto all = enumerate_basis(4, 2, 2, std::nullopt, mi.orbital_irreps);
    const FciSpectrum full = fci_solve(h, all, static_cast<int>(all->size()));

    std::vector<double> merged;
    std::size_t total = 0;
    for (int irrep : {0, 1, 2, 3}) {
        auto sec = enumerate_basis(4, 2, 2, std::vector<int>{irrep}, mi.orbital_irreps);
        total += sec->size();
        const FciSpectrum s = fci_solve(h, sec, static_cast<int>(sec->size()));
        for (Eigen::Index i = 0; i < s.energies.size(); ++i) {
            merged.push_back(s.energies[i]);
        }
    }
    REQUIRE(total == all->size());
    std::sort(merged.begin(), merged.end());
    for (Eigen::Index i = 0; i < full.energies.size(); ++i) {
        CHECK(full.energies[i] ==
              doctest::Approx(merged[static_cast<std::size_t>(i)]).epsilon(1e-10));
    }

    // every <S^2> close to s(s+1) for some half-integer s
    for (Eigen::Index i = 0; i < full.s2_values.size(); ++i) {
        const double v = full.s2_values[i];
        const double s = 0.5 * (std::sqrt(1.0 + 4.0 * v) - 1.0);
        const double snap = std::round(2.0 * s) / 2.0;
        CHECK(std::abs(v - snap * (snap + 1.0)) < 1e-8);
    }
}

TEST_CASE("Lanczos path agrees with the dense path") {
    const auto mi = parse_fcidump_file(repo_path("fixtures/h4_rect/h4_rect_r0.90.fcidump"));
    const FermionOperator h = build_hamiltonian(mi);
    auto all = enumerate_basis(4, 2, 2, std::nullopt, mi.orbital_irreps);
    const FciSpectrum dense = fci_solve(h, all, 5);
    const FciSpectrum kry = fci_solve(h, all, 5, /*dense_limit=*/1);
    for (int i = 0; i < 5; ++i) {
        CHECK(kry.energies[i] == doctest::Approx(dense.energies[i]).epsilon(1e-10));
        const CompiledOperator hc = CompiledOperator::compile(h, all);
        CHECK((hc.apply(kry.vectors.col(i)) - kry.energies[i] * kry.vectors.col(i)).norm() < 1e-9);
    }
}

TEST_CASE("assign_states: identity, permutation recovery, ambiguity flag") {
    const auto mi = parse_fcidump_file(repo_path("fixtures/h4_rect/h4_rect_r1.00.fcidump"));
    const FermionOperator h = build_hamiltonian(mi);
    auto all = enumerate_basis(4, 2, 2, std::nullopt, mi.orbital_irreps);
    const FciSpectrum spec = fci_solve(h, all, 6);

    std::vector<StateVector> approx;
    for (int i = 0; i < 6; ++i) {
        approx.push_back(spec.state(i));
    }
    const StateAssignment id = assign_states(approx, spec);
    for (int i = 0; i < 6; ++i) {
        CHECK(id.map[static_cast<std::size_t>(i)] == i);
        CHECK(id.overlap_sq[i] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(!id.ambiguous[static_cast<std::size_t>(i)]);
    }

    std::vector<StateVector> permuted = {approx[3], approx[0], approx[5], approx[1]};
    const StateAssignment pm = assign_states(permuted, spec);
    CHECK(pm.map == std::vector<int>{3, 0, 5, 1});

    // an even mixture of two eigenstates is ambiguous against either
    StateVector mix{all, (approx[0].coeffs + approx[1].coeffs) / std::sqrt(2.0)};
    const StateAssignment am = assign_states({mix}, spec);
    CHECK(am.overlap_sq[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(am.ambiguous[0]);
}
