#include "avqe/determinant.hpp"

#include <stdexcept>

namespace avqe {

int determinant_irrep(const Determinant& det, std::span<const int> orbital_irreps) {
    int irrep = 0;
    std::uint32_t a = det.alpha;
    while (a) {
        const int p = std::countr_zero(a);
        irrep ^= orbital_irreps[p];
        a &= a - 1;
    }
    std::uint32_t b = det.beta;
    while (b) {
        const int p = std::countr_zero(b);
        irrep ^= orbital_irreps[p];
        b &= b - 1;
    }
    return irrep;
}

Determinant determinant_from_string(std::string_view occ) {
    if (occ.size() > 32) {
        throw std::invalid_argument("occupation string longer than 32 orbitals");
    }
    Determinant det;
    for (std::size_t p = 0; p < occ.size(); ++p) {
        switch (occ[p]) {
            case '0':
                break;
            case 'a':
                det.alpha |= std::uint32_t(1) << p;
                break;
            case 'b':
                det.beta |= std::uint32_t(1) << p;
                break;
            case '2':
                det.alpha |= std::uint32_t(1) << p;
                det.beta |= std::uint32_t(1) << p;
                break;
            default:
                throw std::invalid_argument("occupation characters must be one of {0,a,b,2}");
        }
    }
    return det;
}

std::string to_occupation_string(const Determinant& det, int n_spatial) {
    std::string s(static_cast<std::size_t>(n_spatial), '0');
    for (int p = 0; p < n_spatial; ++p) {
        const bool a = det.occupied(p, Spin::alpha);
        const bool b = det.occupied(p, Spin::beta);
        s[p] = a && b ? '2' : a ? 'a' : b ? 'b' : '0';
    }
    return s;
}

}  // namespace avqe
