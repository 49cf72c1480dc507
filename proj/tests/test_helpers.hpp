#pragma once

#include <random>
#include <vector>

#include "avqe/basis.hpp"
#include "avqe/pool.hpp"
#include "avqe/state_vector.hpp"

#ifndef AVQE_REPO_ROOT
#define AVQE_REPO_ROOT "."
#endif

namespace avqe::testing {

inline std::string repo_path(const std::string& rel) {
    return std::string(AVQE_REPO_ROOT) + "/" + rel;
}

inline Determinant random_determinant(std::mt19937& rng, int n_spatial, int n_alpha, int n_beta) {
    auto pick = [&](int k) {
        std::vector<int> idx(static_cast<std::size_t>(n_spatial));
        for (int i = 0; i < n_spatial; ++i) {
            idx[static_cast<std::size_t>(i)] = i;
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        std::uint32_t mask = 0;
        for (int i = 0; i < k; ++i) {
            mask |= std::uint32_t(1) << idx[static_cast<std::size_t>(i)];
        }
        return mask;
    };
    return Determinant{pick(n_alpha), pick(n_beta)};
}

inline StateVector random_state(std::mt19937& rng, std::shared_ptr<const Basis> basis) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::VectorXd c(static_cast<Eigen::Index>(basis->size()));
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        c[i] = dist(rng);
    }
    c.normalize();
    return StateVector{std::move(basis), std::move(c)};
}

}  // namespace avqe::testing
