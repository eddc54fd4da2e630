#include "cyldisc/cylinder.hpp"

#include "cyldisc/errors.hpp"

#include <limits>
#include <string>

namespace cyldisc::cylinder {

ProductSpace ProductSpace::make(std::vector<std::uint32_t> factors) {
    if (factors.empty()) throw ValidationError("product space needs at least one factor");
    ProductSpace s;
    s.factors = std::move(factors);
    s.total = 1;
    for (std::uint32_t f : s.factors) {
        if (f < 1) throw ValidationError("factor sizes must be >= 1");
        if (s.total > std::numeric_limits<std::uint64_t>::max() / f)
            throw ValidationError("product space size overflows");
        s.total *= f;
    }
    const std::size_t k = s.factors.size();
    s.strides_.assign(k, 1);
    for (std::size_t i = k; i-- > 1;) s.strides_[i - 1] = s.strides_[i] * s.factors[i];
    s.comp_strides_.assign(k, std::vector<std::uint64_t>(k, 0));
    for (std::size_t d = 0; d < k; ++d) {
        std::uint64_t stride = 1;
        for (std::size_t j = k; j-- > 0;) {
            if (j == d) continue;
            s.comp_strides_[d][j] = stride;
            stride *= s.factors[j];
        }
    }
    return s;
}

std::vector<std::uint32_t> ProductSpace::decode(std::uint64_t point) const {
    if (point >= total) throw ValidationError("point index out of range");
    std::vector<std::uint32_t> coords(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        coords[i] = static_cast<std::uint32_t>(point / strides_[i]);
        point %= strides_[i];
    }
    return coords;
}

std::uint64_t ProductSpace::encode(std::span<const std::uint32_t> coords) const {
    if (coords.size() != factors.size()) throw ValidationError("coordinate arity mismatch");
    std::uint64_t point = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (coords[i] >= factors[i]) throw ValidationError("coordinate out of range");
        point += coords[i] * strides_[i];
    }
    return point;
}

std::uint64_t ProductSpace::comp_size(std::size_t dir) const {
    if (dir >= factors.size()) throw ValidationError("direction out of range");
    return total / factors[dir];
}

std::uint64_t ProductSpace::comp_index(std::uint64_t point, std::size_t dir) const {
    if (dir >= factors.size()) throw ValidationError("direction out of range");
    if (point >= total) throw ValidationError("point index out of range");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        std::uint64_t c = point / strides_[i];
        point %= strides_[i];
        idx += c * comp_strides_[dir][i];
    }
    return idx;
}

std::uint64_t ProductSpace::comp_index_of_coords(std::span<const std::uint32_t> coords,
                                                 std::size_t dir) const {
    if (coords.size() != factors.size()) throw ValidationError("coordinate arity mismatch");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) idx += coords[i] * comp_strides_[dir][i];
    return idx;
}

std::vector<std::uint32_t> ProductSpace::comp_decode(std::uint64_t comp_point,
                                                     std::size_t dir) const {
    if (dir >= factors.size()) throw ValidationError("direction out of range");
    if (comp_point >= comp_size(dir)) throw ValidationError("complementary index out of range");
    std::vector<std::uint32_t> coords(factors.size() - 1);
    std::size_t out = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i == dir) continue;
        std::uint64_t stride = comp_strides_[dir][i];
        coords[out++] = static_cast<std::uint32_t>(comp_point / stride);
        comp_point %= stride;
    }
    return coords;
}

CylinderIntersection point_ci(const ProductSpace& space, std::uint64_t point) {
    CylinderIntersection ci = CylinderIntersection::full(space.arity());
    for (std::size_t d = 0; d < space.arity(); ++d) {
        BitVec base(space.comp_size(d));
        base.set(space.comp_index(point, d));
        ci.bases[d] = std::move(base);
    }
    return ci;
}

namespace {
void check_ci(const ProductSpace& space, const CylinderIntersection& ci) {
    if (ci.bases.size() != space.arity())
        throw ValidationError("cylinder intersection arity mismatch");
    for (std::size_t d = 0; d < ci.bases.size(); ++d) {
        if (ci.bases[d] && ci.bases[d]->size() != space.comp_size(d))
            throw ValidationError("cylinder base has wrong length in direction " +
                                  std::to_string(d));
    }
}
}  // namespace

bool ci_contains(const ProductSpace& space, const CylinderIntersection& ci, std::uint64_t point) {
    check_ci(space, ci);
    for (std::size_t d = 0; d < ci.bases.size(); ++d) {
        if (!ci.bases[d]) continue;
        if (!ci.bases[d]->test(space.comp_index(point, d))) return false;
    }
    return true;
}

std::uint64_t ci_size(const ProductSpace& space, const CylinderIntersection& ci) {
    check_ci(space, ci);
    std::uint64_t n = 0;
    for (std::uint64_t p = 0; p < space.total; ++p)
        if (ci_contains(space, ci, p)) ++n;
    return n;
}

BitVec ci_members(const ProductSpace& space, const CylinderIntersection& ci) {
    check_ci(space, ci);
    BitVec members(space.total);
    for (std::uint64_t p = 0; p < space.total; ++p)
        if (ci_contains(space, ci, p)) members.set(p);
    return members;
}

Relation make_relation(ProductSpace space, BitVec edges) {
    if (edges.size() != space.total)
        throw ValidationError("edge indicator length must equal the space size");
    return Relation{std::move(space), std::move(edges)};
}

Homogeneity homogeneity(const CylinderIntersection& ci, const Relation& rel) {
    check_ci(rel.space, ci);
    bool saw_edge = false, saw_non_edge = false;
    for (std::uint64_t p = 0; p < rel.space.total; ++p) {
        if (!ci_contains(rel.space, ci, p)) continue;
        (rel.edges.test(p) ? saw_edge : saw_non_edge) = true;
        if (saw_edge && saw_non_edge) return Homogeneity::Mixed;
    }
    if (saw_non_edge) return Homogeneity::Negative;
    return Homogeneity::Positive;  // includes the empty intersection
}

const char* homogeneity_name(Homogeneity h) {
    switch (h) {
        case Homogeneity::Positive: return "positive";
        case Homogeneity::Negative: return "negative";
        default: return "mixed";
    }
}

CiEnumeration::CiEnumeration(const ProductSpace& space, std::uint64_t budget) : space_(&space) {
    const std::size_t k = space.arity();
    base_bits_.resize(k);
    std::uint64_t log2_count = 0;
    for (std::size_t d = 0; d < k; ++d) {
        std::uint64_t m = space.comp_size(d);
        base_bits_[d] = static_cast<std::uint32_t>(m);
        log2_count += m;
    }
    if (log2_count >= 64) {
        throw BudgetExceededError("cylinder-intersection enumeration needs 2^" +
                                      std::to_string(log2_count) + " entries, budget is " +
                                      std::to_string(budget),
                                  std::numeric_limits<std::uint64_t>::max(), budget);
    }
    count_ = std::uint64_t{1} << log2_count;
    if (count_ > budget) {
        throw BudgetExceededError("cylinder-intersection enumeration needs " +
                                      std::to_string(count_) + " entries, budget is " +
                                      std::to_string(budget),
                                  count_, budget);
    }
}

void CiEnumeration::masks_at(std::uint64_t index, std::span<std::uint64_t> out) const {
    const std::size_t k = base_bits_.size();
    if (index >= count_) throw ValidationError("enumeration index out of range");
    if (out.size() != k) throw ValidationError("mask buffer arity mismatch");
    for (std::size_t d = k; d-- > 0;) {
        std::uint64_t range = std::uint64_t{1} << base_bits_[d];
        out[d] = index % range;
        index /= range;
    }
}

CylinderIntersection CiEnumeration::at(std::uint64_t index) const {
    const std::size_t k = base_bits_.size();
    std::vector<std::uint64_t> masks(k);
    masks_at(index, masks);
    CylinderIntersection ci = CylinderIntersection::full(k);
    for (std::size_t d = 0; d < k; ++d) {
        BitVec base(space_->comp_size(d));
        for (std::uint32_t t = 0; t < base_bits_[d]; ++t)
            if ((masks[d] >> t) & 1) base.set(t);
        ci.bases[d] = std::move(base);
    }
    return ci;
}

}  // namespace cyldisc::cylinder
