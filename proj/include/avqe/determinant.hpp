#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace avqe {

enum class Spin : int { alpha = 0, beta = 1 };

/// Spin orbitals are interleaved: 2*p for (p, alpha), 2*p + 1 for (p, beta).
constexpr int spin_orbital(int spatial, Spin s) { return 2 * spatial + static_cast<int>(s); }
constexpr int spatial_of(int so) { return so / 2; }
constexpr Spin spin_of(int so) { return static_cast<Spin>(so & 1); }

/// Occupation pattern of one Slater determinant, one bit per spatial orbital
/// and spin channel. Particle numbers are fixed by the enclosing Basis.
struct Determinant {
    std::uint32_t alpha = 0;
    std::uint32_t beta = 0;

    friend auto operator<=>(const Determinant&, const Determinant&) = default;

    int n_alpha() const { return std::popcount(alpha); }
    int n_beta() const { return std::popcount(beta); }

    bool occupied(int spatial, Spin s) const {
        const std::uint32_t occ = (s == Spin::alpha) ? alpha : beta;
        return (occ >> spatial) & 1u;
    }

    /// Occupation bitmask over interleaved spin orbitals.
    std::uint64_t spin_orbital_mask() const {
        std::uint64_t mask = 0;
        std::uint32_t a = alpha;
        while (a) {
            const int p = std::countr_zero(a);
            mask |= std::uint64_t(1) << (2 * p);
            a &= a - 1;
        }
        std::uint32_t b = beta;
        while (b) {
            const int p = std::countr_zero(b);
            mask |= std::uint64_t(1) << (2 * p + 1);
            b &= b - 1;
        }
        return mask;
    }

    static Determinant from_spin_orbital_mask(std::uint64_t mask) {
        Determinant det;
        while (mask) {
            const int so = std::countr_zero(mask);
            if (so & 1) {
                det.beta |= std::uint32_t(1) << (so / 2);
            } else {
                det.alpha |= std::uint32_t(1) << (so / 2);
            }
            mask &= mask - 1;
        }
        return det;
    }
};

/// XOR-composed irrep of the occupied orbitals (labels are 0-based XOR codes).
int determinant_irrep(const Determinant& det, std::span<const int> orbital_irreps);

/// Parse a per-spatial-orbital occupation string over {0, a, b, 2}, e.g. "22a0b".
Determinant determinant_from_string(std::string_view occ);

std::string to_occupation_string(const Determinant& det, int n_spatial);

}  // namespace avqe
