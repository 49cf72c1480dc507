#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace avqe {

enum class SQAction : std::uint8_t { annihilate = 0, create = 1 };

struct SQOp {
    std::uint16_t index;  // spin-orbital index
    SQAction action;

    friend bool operator==(const SQOp&, const SQOp&) = default;
};

inline SQOp cre(int so) { return {static_cast<std::uint16_t>(so), SQAction::create}; }
inline SQOp ann(int so) { return {static_cast<std::uint16_t>(so), SQAction::annihilate}; }

struct FermionTerm {
    double coeff = 0.0;
    std::vector<SQOp> ops;  // normal ordered: creations first, then annihilations
};

/// Real-coefficient sum of normal-ordered creation/annihilation strings plus a
/// constant. Strings are kept in a canonical form (creation and annihilation
/// indices ascending, parity folded into the coefficient) so duplicates merge.
class FermionOperator {
  public:
    FermionOperator() = default;
    explicit FermionOperator(double constant) : constant_(constant) {}

    /// Add coeff times a normal-ordered operator string (rightmost op acts
    /// first). Throws if the string is not normal ordered.
    void add_term(double coeff, std::vector<SQOp> ops);
    void add_constant(double c) { constant_ += c; }

    /// Sort terms and merge duplicate strings; drops exact zeros.
    void simplify();

    const std::vector<FermionTerm>& terms() const { return terms_; }
    double constant() const { return constant_; }
    std::size_t n_terms() const { return terms_.size(); }

    FermionOperator adjoint() const;
    FermionOperator scaled(double factor) const;
    FermionOperator& operator+=(const FermionOperator& other);

    /// Max deviation from (anti-)Hermiticity over merged term coefficients.
    double hermiticity_defect() const;
    double anti_hermiticity_defect() const;

    /// Highest spin-orbital index that appears, or -1 if none.
    int max_spin_orbital() const;

  private:
    double constant_ = 0.0;
    std::vector<FermionTerm> terms_;
};

std::string to_string(const FermionTerm& term);

}  // namespace avqe
