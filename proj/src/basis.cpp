#include "avqe/basis.hpp"

#include <algorithm>
#include <stdexcept>

#include "avqe/errors.hpp"

namespace avqe {

namespace {

/// All n_spatial-bit masks with k bits set, ascending.
std::vector<std::uint32_t> bit_combinations(int n_spatial, int k) {
    std::vector<std::uint32_t> out;
    if (k < 0 || k > n_spatial) {
        return out;
    }
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    std::uint32_t v = (std::uint32_t(1) << k) - 1;
    const std::uint32_t limit = (n_spatial == 32) ? ~std::uint32_t(0)
                                                  : (std::uint32_t(1) << n_spatial) - 1;
    while (v <= limit) {
        out.push_back(v);
        // Gosper's hack: next mask with the same popcount
        const std::uint32_t t = v | (v - 1);
        if (t == ~std::uint32_t(0)) {
            break;
        }
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    }
    return out;
}

int mask_irrep(std::uint32_t mask, const std::vector<int>& irreps) {
    int s = 0;
    while (mask) {
        s ^= irreps[std::countr_zero(mask)];
        mask &= mask - 1;
    }
    return s;
}

}  // namespace

Basis::Basis(int n_spatial, std::vector<Determinant> dets, SectorSpec sector,
             std::vector<int> orbital_irreps)
    : n_spatial_(n_spatial),
      dets_(std::move(dets)),
      sector_(std::move(sector)),
      orbital_irreps_(std::move(orbital_irreps)) {
    if (n_spatial_ < 0 || n_spatial_ > 32) {
        throw std::invalid_argument("n_spatial must be in [0, 32]");
    }
    if (static_cast<int>(orbital_irreps_.size()) != n_spatial_) {
        throw std::invalid_argument("orbital_irreps size must equal n_spatial");
    }
    if (!std::is_sorted(dets_.begin(), dets_.end())) {
        std::sort(dets_.begin(), dets_.end());
    }
    if (std::adjacent_find(dets_.begin(), dets_.end()) != dets_.end()) {
        throw std::invalid_argument("duplicate determinants in basis");
    }
}

std::optional<std::size_t> Basis::index_of(const Determinant& d) const {
    const auto it = std::lower_bound(dets_.begin(), dets_.end(), d);
    if (it == dets_.end() || *it != d) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - dets_.begin());
}

std::shared_ptr<const Basis> enumerate_basis(int n_spatial, int n_alpha, int n_beta,
                                             std::optional<std::vector<int>> irrep_filter,
                                             std::vector<int> orbital_irreps) {
    if (n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial || n_beta > n_spatial) {
        throw BoundsError("particle numbers must lie in [0, n_spatial]");
    }
    const auto alphas = bit_combinations(n_spatial, n_alpha);
    const auto betas = bit_combinations(n_spatial, n_beta);

    std::vector<Determinant> dets;
    for (const auto a : alphas) {
        const int ia = mask_irrep(a, orbital_irreps);
        for (const auto b : betas) {
            if (irrep_filter) {
                const int irrep = ia ^ mask_irrep(b, orbital_irreps);
                if (std::find(irrep_filter->begin(), irrep_filter->end(), irrep) ==
                    irrep_filter->end()) {
                    continue;
                }
            }
            dets.push_back(Determinant{a, b});
        }
    }
    std::sort(dets.begin(), dets.end());
    SectorSpec sector{n_alpha, n_beta, std::move(irrep_filter)};
    return std::make_shared<Basis>(n_spatial, std::move(dets), std::move(sector),
                                   std::move(orbital_irreps));
}

}  // namespace avqe
