#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "avqe/apply.hpp"
#include "avqe/pool.hpp"
#include "avqe/quasi_newton.hpp"
#include "avqe/state_vector.hpp"

namespace avqe {

/// One ansatz factor: pool operator id and its angle. ops[0] is the newest
/// operator, i.e. the leftmost exponential, applied last to the state.
struct AnsatzOp {
    int pool_id = -1;
    double theta = 0.0;
};

struct Ansatz {
    std::vector<AnsatzOp> ops;

    void prepend(int pool_id, double theta = 0.0) {
        ops.insert(ops.begin(), AnsatzOp{pool_id, theta});
    }
    std::size_t size() const { return ops.size(); }
};

/// Orthonormal reference states with positive weights summing to one.
struct ReferenceSet {
    std::vector<StateVector> refs;
    Eigen::VectorXd weights;

    std::size_t size() const { return refs.size(); }
};

ReferenceSet make_reference_set(std::vector<StateVector> refs,
                                std::optional<Eigen::VectorXd> weights = std::nullopt);

/// Pool generators compiled onto one basis, indexed by pool id.
class CompiledPool {
  public:
    CompiledPool(const std::vector<PoolOperator>& pool, std::shared_ptr<const Basis> basis);

    const CompiledOperator& op(int id) const { return ops_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return ops_.size(); }
    const std::shared_ptr<const Basis>& basis() const { return basis_; }
    const std::vector<PoolOperator>& pool() const { return *pool_; }

  private:
    const std::vector<PoolOperator>* pool_;
    std::shared_ptr<const Basis> basis_;
    std::vector<CompiledOperator> ops_;
};

/// State-averaged VQE working set: H, compiled pool and references on a
/// shared basis. All evaluation routines live here; the free functions below
/// are thin wrappers for one-off use.
class SaProblem {
  public:
    SaProblem(const CompiledOperator& h, const CompiledPool& pool, ReferenceSet refs);

    const CompiledOperator& h() const { return *h_; }
    const CompiledPool& pool() const { return *pool_; }
    const ReferenceSet& refs() const { return refs_; }
    std::size_t k() const { return refs_.size(); }

    /// U(theta) v, exponentials applied oldest first.
    void evolve_inplace(std::span<const AnsatzOp> ansatz, Eigen::VectorXd& v) const;
    Eigen::VectorXd evolve(std::span<const AnsatzOp> ansatz, const Eigen::VectorXd& v) const;

    double sa_energy(std::span<const AnsatzOp> ansatz) const;
    double sa_energy_and_gradient(std::span<const AnsatzOp> ansatz, Eigen::VectorXd& grad) const;

    /// BFGS over the angles, warm-started from the incoming thetas.
    MinimizeResult minimize(Ansatz& ansatz, const MinimizeOptions& opts = {}) const;

  private:
    const CompiledOperator* h_;
    const CompiledPool* pool_;
    ReferenceSet refs_;
};

StateVector evolve(const Ansatz& ansatz, const std::vector<PoolOperator>& pool,
                   const StateVector& v);
double sa_energy(const Ansatz& ansatz, const ReferenceSet& refs, const FermionOperator& h,
                 const std::vector<PoolOperator>& pool);
Eigen::VectorXd sa_gradient(const Ansatz& ansatz, const ReferenceSet& refs,
                            const FermionOperator& h, const std::vector<PoolOperator>& pool);

}  // namespace avqe
