#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "avqe/determinant.hpp"

namespace avqe {

/// Symmetry sector: particle numbers per spin plus an optional irrep filter.
/// An empty filter means "all irreps".
struct SectorSpec {
    int n_alpha = 0;
    int n_beta = 0;
    std::optional<std::vector<int>> irreps;
};

/// Ordered determinant basis of one symmetry sector. Determinants are unique
/// and sorted lexicographically on (alpha, beta), so index_of is a binary
/// search and the ordering is reproducible across runs.
class Basis {
  public:
    Basis(int n_spatial, std::vector<Determinant> dets, SectorSpec sector,
          std::vector<int> orbital_irreps);

    std::size_t size() const { return dets_.size(); }
    const Determinant& det(std::size_t i) const { return dets_[i]; }
    const std::vector<Determinant>& dets() const { return dets_; }
    std::optional<std::size_t> index_of(const Determinant& d) const;

    int n_spatial() const { return n_spatial_; }
    const SectorSpec& sector() const { return sector_; }
    const std::vector<int>& orbital_irreps() const { return orbital_irreps_; }

    bool operator==(const Basis& other) const {
        return n_spatial_ == other.n_spatial_ && dets_ == other.dets_;
    }

  private:
    int n_spatial_;
    std::vector<Determinant> dets_;
    SectorSpec sector_;
    std::vector<int> orbital_irreps_;
};

/// All determinants with the given particle numbers (and irreps, if filtered),
/// in lexicographic (alpha, beta) order.
std::shared_ptr<const Basis> enumerate_basis(int n_spatial, int n_alpha, int n_beta,
                                             std::optional<std::vector<int>> irrep_filter,
                                             std::vector<int> orbital_irreps);

}  // namespace avqe
