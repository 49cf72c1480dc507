#include "avqe/fci.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "avqe/errors.hpp"
#include "avqe/hamiltonian.hpp"

namespace avqe {

namespace {

constexpr std::size_t kBasisLimit = 100000;

/// Lanczos with full reorthogonalization; returns the lowest n_states pairs.
void lanczos_lowest(const CompiledOperator& h, int n_states, Eigen::VectorXd& evals,
                    Eigen::MatrixXd& evecs) {
    const auto dim = static_cast<Eigen::Index>(h.basis()->size());
    const int m_max = static_cast<int>(std::min<Eigen::Index>(dim, std::max(3 * n_states + 60, 160)));

    Eigen::MatrixXd V(dim, m_max);
    Eigen::VectorXd alpha(m_max), beta(m_max);
    Eigen::VectorXd w(dim);

    // deterministic, structured start vector
    Eigen::VectorXd v0(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v0[i] = 1.0 + 0.5 * std::sin(static_cast<double>(i) + 0.7);
    }
    v0.normalize();
    V.col(0) = v0;

    int m = 0;
    for (int k = 0; k < m_max; ++k) {
        h.apply(V.col(k), w);
        alpha[k] = V.col(k).dot(w);
        w -= alpha[k] * V.col(k);
        if (k > 0) {
            w -= beta[k - 1] * V.col(k - 1);
        }
        // full reorthogonalization, twice
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= k; ++i) {
                w -= V.col(i).dot(w) * V.col(i);
            }
        }
        beta[k] = w.norm();
        m = k + 1;
        if (k + 1 < m_max) {
            if (beta[k] < 1e-13) {
                break;  // invariant subspace found
            }
            V.col(k + 1) = w / beta[k];
        }

        // convergence check on the lowest n_states Ritz pairs
        if (m >= std::max(2 * n_states, 10) || m == m_max || beta[k] < 1e-13) {
            Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                T(i, i) = alpha[i];
                if (i + 1 < m) {
                    T(i, i + 1) = T(i + 1, i) = beta[i];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
            bool done = true;
            for (int s = 0; s < n_states; ++s) {
                const double resid = std::abs(beta[m - 1] * es.eigenvectors()(m - 1, s));
                if (resid > 1e-11) {
                    done = false;
                    break;
                }
            }
            if (done || m == m_max || beta[k] < 1e-13) {
                evals = es.eigenvalues().head(n_states);
                evecs = V.leftCols(m) * es.eigenvectors().leftCols(n_states);
                for (int s = 0; s < n_states; ++s) {
                    evecs.col(s).normalize();
                }
                return;
            }
        }
    }
    throw NumericalError("Lanczos failed to converge");
}

/// Within clusters of equal eigenvalue, rotate eigenvectors to diagonalize a
/// Hermitian operator's restriction; keeps columns orthonormal.
void subdiagonalize(Eigen::MatrixXd& vectors, int lo, int hi,
                    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply) {
    const int k = hi - lo;
    if (k < 2) {
        return;
    }
    Eigen::MatrixXd block(k, k);
    std::vector<Eigen::VectorXd> images(k);
    for (int a = 0; a < k; ++a) {
        images[a] = apply(vectors.col(lo + a));
    }
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            block(a, b) = vectors.col(lo + a).dot(images[b]);
        }
    }
    block = (block + block.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    vectors.middleCols(lo, k) = vectors.middleCols(lo, k) * es.eigenvectors();
}

}  // namespace

FciSpectrum fci_solve(const FermionOperator& h, std::shared_ptr<const Basis> basis, int n_states,
                      std::size_t dense_limit) {
    const std::size_t dim = basis->size();
    if (dim == 0) {
        throw BoundsError("empty basis");
    }
    if (dim > kBasisLimit) {
        throw BoundsError("basis dimension exceeds the solver limit");
    }
    if (n_states < 1 || static_cast<std::size_t>(n_states) > dim) {
        throw BoundsError("n_states must lie in [1, |basis|]");
    }

    const CompiledOperator hc = CompiledOperator::compile(h, basis);

    FciSpectrum spec;
    spec.basis = basis;
    if (dim <= dense_limit) {
        Eigen::MatrixXd dense = Eigen::MatrixXd(hc.matrix());
        dense.diagonal().array() += hc.constant();
        dense = (dense + dense.transpose()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        spec.energies = es.eigenvalues().head(n_states);
        spec.vectors = es.eigenvectors().leftCols(n_states);
    } else {
        lanczos_lowest(hc, n_states, spec.energies, spec.vectors);
        spec.energies.array() += hc.constant();
    }

    // canonicalize degenerate clusters: irrep label first, then S^2
    const FermionOperator s2op = build_s_squared(basis->n_spatial());
    const CompiledOperator s2c = CompiledOperator::compile(s2op, basis);
    Eigen::VectorXd irrep_diag(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        irrep_diag[static_cast<Eigen::Index>(i)] =
            determinant_irrep(basis->det(i), basis->orbital_irreps());
    }
    const double scale = std::max(1.0, spec.energies.cwiseAbs().maxCoeff());
    int lo = 0;
    while (lo < n_states) {
        int hi = lo + 1;
        while (hi < n_states && spec.energies[hi] - spec.energies[hi - 1] < 1e-9 * scale) {
            ++hi;
        }
        if (hi - lo > 1) {
            subdiagonalize(spec.vectors, lo, hi, [&](const Eigen::VectorXd& v) {
                return Eigen::VectorXd(irrep_diag.asDiagonal() * v);
            });
            // split by irrep eigenvalue, then S^2 within
            int a = lo;
            while (a < hi) {
                const double ia = (irrep_diag.asDiagonal() * spec.vectors.col(a))
                                      .dot(spec.vectors.col(a));
                int b = a + 1;
                while (b < hi) {
                    const double ib = (irrep_diag.asDiagonal() * spec.vectors.col(b))
                                          .dot(spec.vectors.col(b));
                    if (std::abs(ib - ia) > 1e-6) {
                        break;
                    }
                    ++b;
                }
                subdiagonalize(spec.vectors, a, b,
                               [&](const Eigen::VectorXd& v) { return s2c.apply(v); });
                a = b;
            }
        }
        lo = hi;
    }

    // deterministic signs
    for (int s = 0; s < n_states; ++s) {
        Eigen::Index imax = 0;
        spec.vectors.col(s).cwiseAbs().maxCoeff(&imax);
        if (spec.vectors(imax, s) < 0) {
            spec.vectors.col(s) = -spec.vectors.col(s);
        }
    }

    spec.s2_values.resize(n_states);
    for (int s = 0; s < n_states; ++s) {
        spec.s2_values[s] = s2c.expectation(spec.vectors.col(s));
    }
    return spec;
}

StateAssignment assign_states(const std::vector<StateVector>& approx, const FciSpectrum& exact) {
    const int na = static_cast<int>(approx.size());
    const int ne = static_cast<int>(exact.energies.size());
    Eigen::MatrixXd ov(na, ne);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < ne; ++j) {
            ov(i, j) = std::abs(approx[static_cast<std::size_t>(i)].coeffs.dot(exact.vectors.col(j)));
        }
    }
    StateAssignment out;
    out.map.assign(na, -1);
    out.overlap_sq = Eigen::VectorXd::Zero(na);
    out.ambiguous.assign(na, false);
    Eigen::MatrixXd work = ov;
    for (int step = 0; step < std::min(na, ne); ++step) {
        Eigen::Index bi = 0, bj = 0;
        work.maxCoeff(&bi, &bj);
        if (work(bi, bj) < 0.0) {
            break;
        }
        out.map[static_cast<std::size_t>(bi)] = static_cast<int>(bj);
        const double o = ov(bi, bj);
        out.overlap_sq[bi] = o * o;
        out.ambiguous[static_cast<std::size_t>(bi)] = (o * o) < 0.5;
        work.row(bi).setConstant(-1.0);
        work.col(bj).setConstant(-1.0);
    }
    return out;
}

}  // namespace avqe
