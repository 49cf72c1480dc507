#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "avqe/vqe.hpp"

namespace avqe {

/// H conjugated by the ansatz unitary, in the reference basis.
struct DressedHamiltonian {
    Eigen::MatrixXd matrix;  // k x k, symmetric
};

struct RitzSolution {
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXd coeffs;    // orthogonal, column i = state i
};

struct AdaptIterationRecord {
    int iter = 0;
    int pool_id = -1;
    double max_grad = 0.0;
    double grad_norm = 0.0;
    double e_sa = 0.0;
    Eigen::VectorXd ritz_energies;
    int vqe_iterations = 0;
    int n_distinct_ops = 0;
};

struct AdaptTrace {
    std::vector<AdaptIterationRecord> rows;
    std::string stop_reason;  // max_ops | grad_norm | energy_change | pool_exhausted
};

struct AdaptResult {
    Ansatz ansatz;
    RitzSolution ritz;
    AdaptTrace trace;
    double e_sa = 0.0;
};

/// At least one criterion must be set.
struct StopCriteria {
    std::optional<int> max_ops;
    std::optional<double> grad_norm;
    std::optional<double> energy_change;
};

/// Pool gradients g_j = d/dtheta_j of the state-averaged energy at theta_j=0,
/// evaluated with one H application per reference.
Eigen::VectorXd screen_pool(const SaProblem& problem, const Ansatz& ansatz);

/// Argmax of |g|; ties (within 1e-12) break to the smallest pool id. Returns
/// nothing when the gradient vector vanishes identically ("converged pool").
std::optional<int> select_operator(const Eigen::VectorXd& g);

DressedHamiltonian build_dressed_hamiltonian(const SaProblem& problem, const Ansatz& ansatz);

RitzSolution ritz_diagonalize(const DressedHamiltonian& dh);

/// The adaptive loop: screen -> select -> grow -> minimize -> dress ->
/// diagonalize, until a stop criterion fires. k = 1 covers plain ADAPT-VQE.
AdaptResult run_adapt(const SaProblem& problem, const StopCriteria& stop,
                      const MinimizeOptions& opts = {});

}  // namespace avqe
