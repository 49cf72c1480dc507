#include "avqe/fermion_operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace avqe {

namespace {

/// Sort a block of same-action ops ascending by index; parity of the
/// permutation flips the sign. Returns 0 if an index repeats.
int sort_block(std::vector<SQOp>& ops, std::size_t lo, std::size_t hi) {
    int sign = 1;
    for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = lo; j + 1 < hi - (i - lo); ++j) {
            if (ops[j].index > ops[j + 1].index) {
                std::swap(ops[j], ops[j + 1]);
                sign = -sign;
            }
        }
    }
    for (std::size_t i = lo; i + 1 < hi; ++i) {
        if (ops[i].index == ops[i + 1].index) {
            return 0;
        }
    }
    return sign;
}

bool ops_less(const std::vector<SQOp>& a, const std::vector<SQOp>& b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].index != b[i].index) {
            return a[i].index < b[i].index;
        }
        if (a[i].action != b[i].action) {
            return a[i].action < b[i].action;
        }
    }
    return false;
}

}  // namespace

void FermionOperator::add_term(double coeff, std::vector<SQOp> ops) {
    if (ops.empty()) {
        constant_ += coeff;
        return;
    }
    std::size_t n_create = 0;
    while (n_create < ops.size() && ops[n_create].action == SQAction::create) {
        ++n_create;
    }
    for (std::size_t i = n_create; i < ops.size(); ++i) {
        if (ops[i].action == SQAction::create) {
            throw std::invalid_argument("operator string must be normal ordered");
        }
    }
    int sign = sort_block(ops, 0, n_create);
    if (sign == 0) {
        return;
    }
    const int sign2 = sort_block(ops, n_create, ops.size());
    if (sign2 == 0) {
        return;
    }
    terms_.push_back(FermionTerm{coeff * sign * sign2, std::move(ops)});
}

void FermionOperator::simplify() {
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const FermionTerm& a, const FermionTerm& b) { return ops_less(a.ops, b.ops); });
    std::vector<FermionTerm> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().ops == t.ops) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const FermionTerm& t) { return t.coeff == 0.0; }),
                 merged.end());
    terms_ = std::move(merged);
}

FermionOperator FermionOperator::adjoint() const {
    FermionOperator out(constant_);
    for (const auto& t : terms_) {
        std::vector<SQOp> ops(t.ops.rbegin(), t.ops.rend());
        for (auto& op : ops) {
            op.action = (op.action == SQAction::create) ? SQAction::annihilate : SQAction::create;
        }
        out.add_term(t.coeff, std::move(ops));
    }
    out.simplify();
    return out;
}

FermionOperator FermionOperator::scaled(double factor) const {
    FermionOperator out(constant_ * factor);
    for (const auto& t : terms_) {
        out.terms_.push_back(FermionTerm{t.coeff * factor, t.ops});
    }
    return out;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
    constant_ += other.constant_;
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    simplify();
    return *this;
}

namespace {

double defect_against(const FermionOperator& a, const FermionOperator& b) {
    std::map<std::vector<std::uint32_t>, double> acc;
    auto key = [](const FermionTerm& t) {
        std::vector<std::uint32_t> k;
        k.reserve(t.ops.size());
        for (const auto& op : t.ops) {
            k.push_back((std::uint32_t(op.index) << 1) | std::uint32_t(op.action));
        }
        return k;
    };
    for (const auto& t : a.terms()) {
        acc[key(t)] += t.coeff;
    }
    for (const auto& t : b.terms()) {
        acc[key(t)] -= t.coeff;
    }
    double worst = 0.0;
    for (const auto& [k, v] : acc) {
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

}  // namespace

double FermionOperator::hermiticity_defect() const {
    FermionOperator self = *this;
    self.simplify();
    return defect_against(self, self.adjoint());
}

double FermionOperator::anti_hermiticity_defect() const {
    FermionOperator self = *this;
    self.simplify();
    return std::max(defect_against(self, self.adjoint().scaled(-1.0)), 2.0 * std::abs(constant_));
}

int FermionOperator::max_spin_orbital() const {
    int m = -1;
    for (const auto& t : terms_) {
        for (const auto& op : t.ops) {
            m = std::max(m, static_cast<int>(op.index));
        }
    }
    return m;
}

std::string to_string(const FermionTerm& term) {
    std::string s = std::to_string(term.coeff) + " *";
    for (const auto& op : term.ops) {
        s += " " + std::to_string(op.index) + (op.action == SQAction::create ? "^" : "");
    }
    return s;
}

}  // namespace avqe
