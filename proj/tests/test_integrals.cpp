#include <random>
#include <sstream>

#include "doctest.h"

#include "avqe/errors.hpp"
#include "avqe/integrals.hpp"
#include "test_helpers.hpp"

using namespace avqe;

namespace {

MolecularIntegrals random_integrals(std::mt19937& rng, int n) {
    std::normal_distribution<double> dist(0.0, 1.0);
    MolecularIntegrals mi;
    mi.n_spatial = n;
    mi.n_electrons = 2;
    mi.core_energy = dist(rng);
    mi.orbital_irreps.assign(static_cast<std::size_t>(n), 0);
    Eigen::MatrixXd h = Eigen::MatrixXd::NullaryExpr(n, n, [&]() { return dist(rng); });
    mi.one_body = (h + h.transpose()) / 2.0;
    mi.two_body.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q <= p; ++q) {
            for (int r = 0; r <= p; ++r) {
                const int smax = (r == p) ? q : r;
                for (int s = 0; s <= smax; ++s) {
                    const double v = dist(rng);
                    const int P[2] = {p, q};
                    const int R[2] = {r, s};
                    for (int x = 0; x < 2; ++x) {
                        for (int y = 0; y < 2; ++y) {
                            mi.g(P[x], P[1 - x], R[y], R[1 - y]) = v;
                            mi.g(R[y], R[1 - y], P[x], P[1 - x]) = v;
                        }
                    }
                }
            }
        }
    }
    return mi;
}

}  // namespace

TEST_CASE("parse_fcidump: constant-only file") {
    std::istringstream in("&FCI NORB=1,NELEC=2,MS2=0,\n ORBSYM=1,\n&END\n 0.5 0 0 0 0\n");
    const auto mi = parse_fcidump(in);
    CHECK(mi.n_spatial == 1);
    CHECK(mi.n_electrons == 2);
    CHECK(mi.core_energy == 0.5);
    CHECK(mi.one_body.cwiseAbs().maxCoeff() == 0.0);
    for (const double v : mi.two_body) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("parse_fcidump: two-body line expands to all 8 permutations") {
    std::istringstream in("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n 0.7 1 1 1 1\n 0.25 2 1 2 2\n");
    const auto mi = parse_fcidump(in);
    CHECK(mi.g(0, 0, 0, 0) == 0.7);
    // (21|22): all 8 index images read back the same value
    const double v = 0.25;
    CHECK(mi.g(1, 0, 1, 1) == v);
    CHECK(mi.g(0, 1, 1, 1) == v);
    CHECK(mi.g(1, 1, 1, 0) == v);
    CHECK(mi.g(1, 1, 0, 1) == v);
    CHECK(mi.g(1, 0, 1, 1) == v);
}

TEST_CASE("parse_fcidump errors") {
    {
        std::istringstream in("NORB=2\n 0.5 0 0 0 0\n");
        CHECK_THROWS_AS(parse_fcidump(in), ParseError);
    }
    {
        std::istringstream in("&FCI NELEC=2,\n&END\n");
        CHECK_THROWS_AS(parse_fcidump(in), ParseError);
    }
    {
        std::istringstream in("&FCI NORB=2,\n&END\n 1.0 3 1 0 0\n");
        CHECK_THROWS_AS(parse_fcidump(in), BoundsError);
    }
    {
        std::istringstream in("&FCI NORB=2,\n&END\n 1.0 1 2 0 0\n 1.5 2 1 0 0\n");
        CHECK_THROWS_AS(parse_fcidump(in), ConsistencyError);
    }
    {
        std::istringstream in("&FCI NORB=2,\n&END\n 1.0 1 oops 0 0\n");
        CHECK_THROWS_AS(parse_fcidump(in), ParseError);
    }
    {
        // repeated identical entries are fine
        std::istringstream in("&FCI NORB=2,\n&END\n 1.0 1 2 0 0\n 1.0 2 1 0 0\n");
        CHECK(parse_fcidump(in).one_body(0, 1) == 1.0);
    }
}

TEST_CASE("parse_property_integrals: symmetrization, empty files, nuclear term") {
    {
        std::istringstream in("&FCI NORB=3,\n&END\n 0.3 1 2 0 0\n 1.25 0 0 0 0\n");
        const auto pi = parse_property_integrals(in, "z");
        CHECK(pi.component == "z");
        CHECK(pi.one_body(0, 1) == 0.3);
        CHECK(pi.one_body(1, 0) == 0.3);
        CHECK(pi.nuclear_term == 1.25);
    }
    {
        std::istringstream in("");
        CHECK_THROWS_AS(parse_property_integrals(in, "x"), ParseError);
    }
    {
        std::istringstream in("\n");
        const auto pi = parse_property_integrals(in, "x", 2);
        CHECK(pi.one_body.cwiseAbs().maxCoeff() == 0.0);
        CHECK(pi.nuclear_term == 0.0);
    }
    {
        std::istringstream in("&FCI NORB=3,\n&END\n 0.3 1 2 3 1\n");
        CHECK_THROWS_AS(parse_property_integrals(in, "y"), ParseError);
    }
}

TEST_CASE("fcidump round-trip preserves tensors exactly") {
    std::mt19937 rng(555);
    const auto mi = random_integrals(rng, 3);
    std::ostringstream out;
    write_fcidump(out, mi);
    std::istringstream in(out.str());
    const auto back = parse_fcidump(in);
    CHECK(back.n_spatial == mi.n_spatial);
    CHECK(std::abs(back.core_energy - mi.core_energy) < 1e-15);
    CHECK((back.one_body - mi.one_body).cwiseAbs().maxCoeff() < 1e-15);
    for (std::size_t i = 0; i < mi.two_body.size(); ++i) {
        CHECK(std::abs(back.two_body[i] - mi.two_body[i]) < 1e-15);
    }
}

TEST_CASE("parsing is order-insensitive") {
    const std::string header = "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n";
    const std::string lines[] = {" 0.7 1 1 1 1\n", " 0.2 2 1 2 1\n", " -0.4 1 1 0 0\n",
                                 " 1.5 0 0 0 0\n"};
    std::istringstream fwd(header + lines[0] + lines[1] + lines[2] + lines[3]);
    std::istringstream rev(header + lines[3] + lines[2] + lines[1] + lines[0]);
    const auto a = parse_fcidump(fwd);
    const auto b = parse_fcidump(rev);
    CHECK(a.core_energy == b.core_energy);
    CHECK((a.one_body - b.one_body).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.two_body == b.two_body);
}

TEST_CASE("validate_integrals reports violated relations") {
    std::mt19937 rng(777);
    auto mi = random_integrals(rng, 3);
    CHECK(validate_integrals(mi).ok());

    auto broken = mi;
    broken.one_body(0, 1) += 1e-3;
    const auto report = validate_integrals(broken);
    REQUIRE(!report.ok());
    CHECK(report.violations[0].relation == "one_body hermiticity");
    CHECK(report.violations[0].deviation == doctest::Approx(1e-3).epsilon(1e-9));

    auto broken2 = mi;
    broken2.g(0, 1, 2, 2) += 5e-4;
    const auto report2 = validate_integrals(broken2);
    REQUIRE(!report2.ok());
    CHECK(report2.worst() == doctest::Approx(5e-4).epsilon(1e-9));
}
