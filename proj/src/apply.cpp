#include "avqe/apply.hpp"

#include <cmath>
#include <sstream>

#include "avqe/errors.hpp"

namespace avqe {

std::optional<std::pair<Determinant, int>> apply_string(const Determinant& det,
                                                        std::span<const SQOp> ops) {
    std::uint64_t occ = det.spin_orbital_mask();
    int parity = 0;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const std::uint64_t bit = std::uint64_t(1) << it->index;
        const std::uint64_t below = bit - 1;
        if (it->action == SQAction::annihilate) {
            if (!(occ & bit)) {
                return std::nullopt;
            }
            parity ^= std::popcount(occ & below) & 1;
            occ &= ~bit;
        } else {
            if (occ & bit) {
                return std::nullopt;
            }
            parity ^= std::popcount(occ & below) & 1;
            occ |= bit;
        }
    }
    return std::make_pair(Determinant::from_spin_orbital_mask(occ), parity ? -1 : 1);
}

StateVector apply_operator(const FermionOperator& op, const StateVector& v) {
    const Basis& basis = *v.basis;
    StateVector w{v.basis, Eigen::VectorXd::Zero(v.coeffs.size())};
    if (op.constant() != 0.0) {
        w.coeffs = op.constant() * v.coeffs;
    }
    for (const auto& term : op.terms()) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const double c = v.coeffs[static_cast<Eigen::Index>(j)];
            if (c == 0.0) {
                continue;
            }
            const auto hit = apply_string(basis.det(j), term.ops);
            if (!hit) {
                continue;
            }
            const auto idx = basis.index_of(hit->first);
            if (!idx) {
                std::ostringstream msg;
                msg << "operator term " << to_string(term) << " maps determinant "
                    << to_occupation_string(basis.det(j), basis.n_spatial())
                    << " outside the working sector";
                throw SectorError(msg.str());
            }
            w.coeffs[static_cast<Eigen::Index>(*idx)] += term.coeff * hit->second * c;
        }
    }
    return w;
}

StateVector apply_exp(const FermionOperator& generator, double theta, const StateVector& v,
                      double tol) {
    constexpr int kMaxTerms = 60;
    if (generator.constant() != 0.0) {
        throw std::invalid_argument("exp generator must have zero constant part");
    }
    StateVector acc = v;
    StateVector powder = v;
    if (theta == 0.0) {
        return acc;
    }
    for (int k = 1; k <= kMaxTerms; ++k) {
        powder = apply_operator(generator, powder);
        powder.coeffs *= theta / static_cast<double>(k);
        acc.coeffs += powder.coeffs;
        if (powder.coeffs.norm() < tol) {
            return acc;
        }
    }
    std::ostringstream msg;
    msg << "operator exponential did not converge in " << kMaxTerms
        << " terms; |theta|*max-column-sum estimate "
        << std::abs(theta) * (powder.coeffs.norm() > 0 ? powder.coeffs.norm() : 1.0);
    throw NumericalError(msg.str());
}

StateVector build_reference(const std::vector<std::pair<Determinant, double>>& entries,
                            std::shared_ptr<const Basis> basis) {
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis->size()));
    for (const auto& [det, c] : entries) {
        const auto idx = basis->index_of(det);
        if (!idx) {
            throw SectorError("reference determinant " +
                              to_occupation_string(det, basis->n_spatial()) +
                              " is not in the basis sector");
        }
        coeffs[static_cast<Eigen::Index>(*idx)] += c;
    }
    const double n = coeffs.norm();
    if (n == 0.0) {
        throw std::invalid_argument("reference has zero norm");
    }
    coeffs /= n;
    return StateVector{std::move(basis), std::move(coeffs)};
}

CompiledOperator CompiledOperator::compile(const FermionOperator& op,
                                           std::shared_ptr<const Basis> basis) {
    CompiledOperator out;
    out.basis_ = basis;
    out.constant_ = op.constant();
    const auto n = static_cast<Eigen::Index>(basis->size());
    std::vector<Eigen::Triplet<double>> triplets;
    for (const auto& term : op.terms()) {
        for (std::size_t j = 0; j < basis->size(); ++j) {
            const auto hit = apply_string(basis->det(j), term.ops);
            if (!hit) {
                continue;
            }
            const auto idx = basis->index_of(hit->first);
            if (!idx) {
                std::ostringstream msg;
                msg << "operator term " << to_string(term) << " maps determinant "
                    << to_occupation_string(basis->det(j), basis->n_spatial())
                    << " outside the working sector";
                throw SectorError(msg.str());
            }
            const double value = term.coeff * hit->second;
            if (value != 0.0) {
                triplets.emplace_back(static_cast<int>(*idx), static_cast<int>(j), value);
            }
        }
    }
    out.matrix_.resize(n, n);
    out.matrix_.setFromTriplets(triplets.begin(), triplets.end());
    out.matrix_.prune([](int, int, double v) { return v != 0.0; });
    out.matrix_.makeCompressed();
    out.detect_rotation_form();
    return out;
}

void CompiledOperator::detect_rotation_form() {
    rotation_form_ = false;
    pairs_.clear();
    if (constant_ != 0.0) {
        return;
    }
    const auto n = matrix_.outerSize();
    for (Eigen::Index j = 0; j < n; ++j) {
        int count = 0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix_, j); it; ++it) {
            ++count;
        }
        if (count > 1) {
            return;
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::SparseMatrix<double>::InnerIterator it(matrix_, j);
        if (!it) {
            continue;
        }
        const Eigen::Index i = it.row();
        if (i == j) {
            return;
        }
        // column j has entry (i, s); require column i to hold (j, -s)
        Eigen::SparseMatrix<double>::InnerIterator partner(matrix_, i);
        if (!partner || partner.row() != j || partner.value() != -it.value()) {
            return;
        }
        if (i > j) {
            pairs_.push_back(PairRotation{static_cast<int>(i), static_cast<int>(j), it.value()});
        }
    }
    rotation_form_ = true;
}

void CompiledOperator::apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
    out.noalias() = matrix_ * in;
    if (constant_ != 0.0) {
        out += constant_ * in;
    }
}

Eigen::VectorXd CompiledOperator::apply(const Eigen::VectorXd& in) const {
    Eigen::VectorXd out(in.size());
    apply(in, out);
    return out;
}

double CompiledOperator::matrix_element(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return u.dot(matrix_ * v) + constant_ * u.dot(v);
}

void CompiledOperator::apply_exp_inplace(double theta, Eigen::VectorXd& v, double tol) const {
    if (theta == 0.0) {
        return;
    }
    if (rotation_form_) {
        for (const auto& pr : pairs_) {
            const double c = std::cos(pr.s * theta);
            const double s = std::sin(pr.s * theta);
            const double vi = v[pr.i];
            const double vj = v[pr.j];
            v[pr.i] = c * vi + s * vj;
            v[pr.j] = -s * vi + c * vj;
        }
        return;
    }
    apply_exp_taylor(theta, v, tol);
}

void CompiledOperator::apply_exp_taylor(double theta, Eigen::VectorXd& v, double tol,
                                        int max_terms) const {
    if (constant_ != 0.0) {
        throw std::invalid_argument("exp generator must have zero constant part");
    }
    if (theta == 0.0) {
        return;
    }
    Eigen::VectorXd powder = v;
    Eigen::VectorXd work(v.size());
    for (int k = 1; k <= max_terms; ++k) {
        work.noalias() = matrix_ * powder;
        powder = work * (theta / static_cast<double>(k));
        v += powder;
        if (powder.norm() < tol) {
            return;
        }
    }
    std::ostringstream msg;
    msg << "operator exponential did not converge in " << max_terms << " terms at theta = "
        << theta;
    throw NumericalError(msg.str());
}

}  // namespace avqe
