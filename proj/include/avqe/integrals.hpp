#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace avqe {

/// Molecular one- and two-electron integrals over spatial orbitals, in
/// hartree. The two-body tensor is stored fully expanded in chemists'
/// notation (pq|rs) with 8-fold permutational symmetry.
struct MolecularIntegrals {
    int n_spatial = 0;
    int n_electrons = 0;
    int ms2 = 0;
    double core_energy = 0.0;  // nuclear repulsion plus any frozen-core constant
    Eigen::MatrixXd one_body;
    std::vector<double> two_body;       // dense n^4
    std::vector<int> orbital_irreps;    // 0-based XOR-composable labels

    double g(int p, int q, int r, int s) const {
        const auto n = static_cast<std::size_t>(n_spatial);
        return two_body[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
    }
    double& g(int p, int q, int r, int s) {
        const auto n = static_cast<std::size_t>(n_spatial);
        return two_body[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
    }
};

/// One-body property integrals (e.g. a dipole component) in atomic units,
/// plus the scalar nuclear contribution for that axis.
struct PropertyIntegrals {
    std::string component;  // "x" | "y" | "z"
    double nuclear_term = 0.0;
    Eigen::MatrixXd one_body;
};

struct ValidationReport {
    struct Violation {
        std::string relation;
        double deviation = 0.0;
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    double worst() const;
};

MolecularIntegrals parse_fcidump(std::istream& in);
MolecularIntegrals parse_fcidump_file(const std::string& path);

/// Same line grammar as parse_fcidump with k = l = 0 for one-body entries;
/// the component label comes from the caller. n_spatial_hint is used when the
/// file has no header (or to cross-check the header when it does).
PropertyIntegrals parse_property_integrals(std::istream& in, const std::string& component,
                                           int n_spatial_hint = -1);
PropertyIntegrals parse_property_integrals_file(const std::string& path,
                                                const std::string& component,
                                                int n_spatial_hint = -1);

void write_fcidump(std::ostream& out, const MolecularIntegrals& mi);

ValidationReport validate_integrals(const MolecularIntegrals& mi);

}  // namespace avqe
