#include "avqe/vqe.hpp"

#include <cmath>

#include "avqe/errors.hpp"

namespace avqe {

ReferenceSet make_reference_set(std::vector<StateVector> refs,
                                std::optional<Eigen::VectorXd> weights) {
    if (refs.empty()) {
        throw ValidationError("reference set must not be empty");
    }
    const auto k = static_cast<Eigen::Index>(refs.size());
    for (std::size_t i = 1; i < refs.size(); ++i) {
        if (!same_basis(refs[0], refs[i])) {
            throw ValidationError("references must share one basis");
        }
    }
    for (std::size_t i = 0; i < refs.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double ov = refs[i].coeffs.dot(refs[j].coeffs);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(ov - want) > 1e-12) {
                throw ValidationError("references are not orthonormal to 1e-12");
            }
        }
    }
    ReferenceSet out;
    out.refs = std::move(refs);
    if (weights) {
        if (weights->size() != k) {
            throw ValidationError("weight count must match reference count");
        }
        if ((weights->array() <= 0.0).any()) {
            throw ValidationError("weights must be positive");
        }
        if (std::abs(weights->sum() - 1.0) > 1e-10) {
            throw ValidationError("weights must sum to 1");
        }
        out.weights = *weights;
    } else {
        out.weights = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
    }
    return out;
}

CompiledPool::CompiledPool(const std::vector<PoolOperator>& pool,
                           std::shared_ptr<const Basis> basis)
    : pool_(&pool), basis_(std::move(basis)) {
    ops_.reserve(pool.size());
    for (const auto& p : pool) {
        ops_.push_back(CompiledOperator::compile(p.generator, basis_));
    }
}

SaProblem::SaProblem(const CompiledOperator& h, const CompiledPool& pool, ReferenceSet refs)
    : h_(&h), pool_(&pool), refs_(std::move(refs)) {
    for (const auto& r : refs_.refs) {
        if (!(r.basis == pool.basis() || (r.basis && *r.basis == *pool.basis()))) {
            throw ValidationError("references and pool must share one basis");
        }
    }
}

void SaProblem::evolve_inplace(std::span<const AnsatzOp> ansatz, Eigen::VectorXd& v) const {
    for (auto it = ansatz.rbegin(); it != ansatz.rend(); ++it) {
        pool_->op(it->pool_id).apply_exp_inplace(it->theta, v);
    }
}

Eigen::VectorXd SaProblem::evolve(std::span<const AnsatzOp> ansatz,
                                  const Eigen::VectorXd& v) const {
    Eigen::VectorXd out = v;
    evolve_inplace(ansatz, out);
    return out;
}

double SaProblem::sa_energy(std::span<const AnsatzOp> ansatz) const {
    double e = 0.0;
    for (std::size_t i = 0; i < refs_.size(); ++i) {
        const Eigen::VectorXd u = evolve(ansatz, refs_.refs[i].coeffs);
        e += refs_.weights[static_cast<Eigen::Index>(i)] * h_->expectation(u);
    }
    return e;
}

double SaProblem::sa_energy_and_gradient(std::span<const AnsatzOp> ansatz,
                                         Eigen::VectorXd& grad) const {
    const auto n = static_cast<Eigen::Index>(ansatz.size());
    grad = Eigen::VectorXd::Zero(n);
    double e = 0.0;
    Eigen::VectorXd r, l, tmp;
    for (std::size_t i = 0; i < refs_.size(); ++i) {
        const double w = refs_.weights[static_cast<Eigen::Index>(i)];
        r = evolve(ansatz, refs_.refs[i].coeffs);  // U |phi_i>
        h_->apply(r, l);                           // H U |phi_i>
        e += w * r.dot(l);
        // sweep newest-to-oldest: r_m = E_m..E_{N-1} phi, l_m = (E_0..E_{m-1})+ H U phi
        for (Eigen::Index m = 0; m < n; ++m) {
            const auto& op = pool_->op(ansatz[static_cast<std::size_t>(m)].pool_id);
            const double theta = ansatz[static_cast<std::size_t>(m)].theta;
            op.apply(r, tmp);
            grad[m] += 2.0 * w * l.dot(tmp);
            if (m + 1 < n) {
                op.apply_exp_inplace(-theta, r);
                op.apply_exp_inplace(-theta, l);
            }
        }
    }
    return e;
}

MinimizeResult SaProblem::minimize(Ansatz& ansatz, const MinimizeOptions& opts) const {
    const auto n = static_cast<Eigen::Index>(ansatz.size());
    Eigen::VectorXd x0(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        x0[m] = ansatz.ops[static_cast<std::size_t>(m)].theta;
    }
    std::vector<AnsatzOp> work = ansatz.ops;
    auto fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
        for (Eigen::Index m = 0; m < n; ++m) {
            work[static_cast<std::size_t>(m)].theta = x[m];
        }
        return sa_energy_and_gradient(work, g);
    };
    MinimizeResult res = bfgs_minimize(fg, std::move(x0), opts);
    for (Eigen::Index m = 0; m < n; ++m) {
        ansatz.ops[static_cast<std::size_t>(m)].theta = res.x[m];
    }
    return res;
}

StateVector evolve(const Ansatz& ansatz, const std::vector<PoolOperator>& pool,
                   const StateVector& v) {
    StateVector out = v;
    for (auto it = ansatz.ops.rbegin(); it != ansatz.ops.rend(); ++it) {
        out = apply_exp(pool.at(static_cast<std::size_t>(it->pool_id)).generator, it->theta, out);
    }
    return out;
}

double sa_energy(const Ansatz& ansatz, const ReferenceSet& refs, const FermionOperator& h,
                 const std::vector<PoolOperator>& pool) {
    const CompiledOperator hc = CompiledOperator::compile(h, refs.refs.at(0).basis);
    const CompiledPool pc(pool, refs.refs.at(0).basis);
    return SaProblem(hc, pc, refs).sa_energy(ansatz.ops);
}

Eigen::VectorXd sa_gradient(const Ansatz& ansatz, const ReferenceSet& refs,
                            const FermionOperator& h, const std::vector<PoolOperator>& pool) {
    const CompiledOperator hc = CompiledOperator::compile(h, refs.refs.at(0).basis);
    const CompiledPool pc(pool, refs.refs.at(0).basis);
    Eigen::VectorXd grad;
    SaProblem(hc, pc, refs).sa_energy_and_gradient(ansatz.ops, grad);
    return grad;
}

}  // namespace avqe
