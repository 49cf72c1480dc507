#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "avqe/basis.hpp"
#include "avqe/fermion_operator.hpp"
#include "avqe/state_vector.hpp"

namespace avqe {

/// Apply an operator string to a determinant (rightmost op acts first).
/// Returns the image determinant and fermionic phase, or nothing if the
/// string annihilates the determinant. The phase convention counts occupied
/// spin orbitals below the acted index in the interleaved ordering.
std::optional<std::pair<Determinant, int>> apply_string(const Determinant& det,
                                                        std::span<const SQOp> ops);

/// w = op * v by sparse term application. Throws SectorError if a term maps a
/// basis determinant outside the basis.
StateVector apply_operator(const FermionOperator& op, const StateVector& v);

/// exp(theta * generator) * v by a truncated Taylor series on the vector
/// (term-norm stopping criterion, 60-term cap). The generator must be
/// anti-Hermitian so the result keeps the input norm.
StateVector apply_exp(const FermionOperator& generator, double theta, const StateVector& v,
                      double tol = 1e-14);

/// Normalized linear combination of basis determinants.
StateVector build_reference(const std::vector<std::pair<Determinant, double>>& entries,
                            std::shared_ptr<const Basis> basis);

/// A FermionOperator compiled to a sparse matrix over one Basis. Compilation
/// pays the determinant lookups once; applications are then plain sparse
/// matvecs. Generators whose strings pair determinants one-to-one also get an
/// exact Givens-rotation form for their exponential.
class CompiledOperator {
  public:
    static CompiledOperator compile(const FermionOperator& op, std::shared_ptr<const Basis> basis);

    const std::shared_ptr<const Basis>& basis() const { return basis_; }
    double constant() const { return constant_; }
    const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }

    /// out = (M + constant) * in
    void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& in) const;

    /// <u | (M + constant) | v>
    double matrix_element(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    double expectation(const Eigen::VectorXd& v) const { return matrix_element(v, v); }

    /// In-place v <- exp(theta * M) v. Uses the exact pair-rotation form when
    /// available, otherwise the Taylor series. Requires constant() == 0.
    void apply_exp_inplace(double theta, Eigen::VectorXd& v, double tol = 1e-14) const;

    /// Taylor-series path, available for any compiled operator with zero
    /// constant; used directly by tests as the reference for the rotation form.
    void apply_exp_taylor(double theta, Eigen::VectorXd& v, double tol = 1e-14,
                          int max_terms = 60) const;

    bool has_rotation_form() const { return rotation_form_; }

  private:
    struct PairRotation {
        int i, j;  // M(i,j) = s, M(j,i) = -s
        double s;
    };

    std::shared_ptr<const Basis> basis_;
    Eigen::SparseMatrix<double> matrix_;
    double constant_ = 0.0;
    bool rotation_form_ = false;
    std::vector<PairRotation> pairs_;

    void detect_rotation_form();
};

}  // namespace avqe
