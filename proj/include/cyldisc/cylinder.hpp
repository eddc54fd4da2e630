#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cyldisc::cylinder {

using BitVec = boost::dynamic_bitset<std::uint64_t>;

// X = X_1 x ... x X_k with point indices in mixed radix, factor 1 most
// significant.
struct ProductSpace {
    std::vector<std::uint32_t> factors;
    std::uint64_t total = 0;

    static ProductSpace make(std::vector<std::uint32_t> factors);

    std::size_t arity() const { return factors.size(); }
    std::vector<std::uint32_t> decode(std::uint64_t point) const;
    std::uint64_t encode(std::span<const std::uint32_t> coords) const;

    // product of the factor sizes other than `dir`
    std::uint64_t comp_size(std::size_t dir) const;
    // index of x_{-dir} in the complementary product (factor order preserved,
    // first remaining factor most significant)
    std::uint64_t comp_index(std::uint64_t point, std::size_t dir) const;
    std::uint64_t comp_index_of_coords(std::span<const std::uint32_t> coords,
                                       std::size_t dir) const;
    std::vector<std::uint32_t> comp_decode(std::uint64_t comp_point, std::size_t dir) const;

    bool operator==(const ProductSpace&) const = default;

private:
    std::vector<std::uint64_t> strides_;                  // per factor
    std::vector<std::vector<std::uint64_t>> comp_strides_;  // [dir][factor], 0 at dir
};

// Indicator of a set that ignores coordinate `dir`: base is a subset of the
// complementary product.
struct Cylinder {
    std::size_t dir = 0;
    BitVec base;
};

// One optional cylinder per direction; a missing slot means the full
// cylinder in that direction.
struct CylinderIntersection {
    std::vector<std::optional<BitVec>> bases;

    static CylinderIntersection full(std::size_t arity) {
        CylinderIntersection ci;
        ci.bases.resize(arity);
        return ci;
    }
};

// Singleton CI of a point: every slot pinned to that point's complementary
// index; its member set is exactly {point}.
CylinderIntersection point_ci(const ProductSpace& space, std::uint64_t point);

bool ci_contains(const ProductSpace& space, const CylinderIntersection& ci, std::uint64_t point);
std::uint64_t ci_size(const ProductSpace& space, const CylinderIntersection& ci);
BitVec ci_members(const ProductSpace& space, const CylinderIntersection& ci);

// (k+1)-ary edge set stored as an indicator over the space's points.
struct Relation {
    ProductSpace space;
    BitVec edges;
};

Relation make_relation(ProductSpace space, BitVec edges);

enum class Homogeneity { Positive, Negative, Mixed };

// Positive when every member is an edge, Negative when none is; the empty
// intersection counts as Positive.
Homogeneity homogeneity(const CylinderIntersection& ci, const Relation& rel);

const char* homogeneity_name(Homogeneity h);

// Index-addressable enumeration of every cylinder intersection of a space:
// one base assignment per direction, bases ordered as integers over the
// complementary product's characteristic bits, direction 1 most significant.
// Feasible only when the count fits the budget (so every base fits in 64
// bits); throws BudgetExceededError otherwise.
class CiEnumeration {
public:
    CiEnumeration(const ProductSpace& space, std::uint64_t budget);

    std::uint64_t count() const { return count_; }
    CylinderIntersection at(std::uint64_t index) const;
    // fast path used by sweeps: bases as bit masks, one per direction
    void masks_at(std::uint64_t index, std::span<std::uint64_t> out) const;

private:
    const ProductSpace* space_;
    std::vector<std::uint32_t> base_bits_;  // comp_size per direction
    std::uint64_t count_;
};

}  // namespace cyldisc::cylinder
