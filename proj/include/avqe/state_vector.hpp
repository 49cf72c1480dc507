#pragma once

#include <memory>

#include <Eigen/Dense>

#include "avqe/basis.hpp"

namespace avqe {

/// Real coefficient vector over the determinants of one Basis.
struct StateVector {
    std::shared_ptr<const Basis> basis;
    Eigen::VectorXd coeffs;
};

inline bool same_basis(const StateVector& a, const StateVector& b) {
    return a.basis == b.basis || (a.basis && b.basis && *a.basis == *b.basis);
}

inline double dot(const StateVector& a, const StateVector& b) {
    return a.coeffs.dot(b.coeffs);
}

inline double norm(const StateVector& v) { return v.coeffs.norm(); }

inline StateVector normalized(StateVector v) {
    v.coeffs /= v.coeffs.norm();
    return v;
}

}  // namespace avqe
