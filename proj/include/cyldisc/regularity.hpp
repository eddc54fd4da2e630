#pragma once

#include "cyldisc/cylinder.hpp"
#include "cyldisc/discrepancy.hpp"
#include "cyldisc/rational.hpp"

#include <cstdint>
#include <vector>

namespace cyldisc::regularity {

using cylinder::BitVec;
using cylinder::CylinderIntersection;
using cylinder::Homogeneity;
using cylinder::ProductSpace;
using cylinder::Relation;

// Finitely supported probability measure on one factor of a product space.
struct WeightedMeasure {
    std::size_t factor = 0;
    std::vector<Rat> weights;  // non-negative, sum to 1
};

std::vector<WeightedMeasure> uniform_measures(const ProductSpace& space);
void validate_measures(const ProductSpace& space, const std::vector<WeightedMeasure>& measures);

// Product weight of a single point.
Rat point_measure(const ProductSpace& space, const std::vector<WeightedMeasure>& measures,
                  std::uint64_t point);

// Product measure of a cylinder intersection: sum of member point weights.
Rat product_measure(const ProductSpace& space, const std::vector<WeightedMeasure>& measures,
                    const CylinderIntersection& ci);

// Per direction i, a partition of the complementary product prod_{j!=i} X_j
// into nonempty blocks. Cells of the grid are the cylinder intersections
// obtained by picking one block per direction.
struct GridPartition {
    std::vector<std::vector<BitVec>> blocks;
};

GridPartition trivial_partition(const ProductSpace& space);
GridPartition singleton_partition(const ProductSpace& space);
void validate_partition(const ProductSpace& space, const GridPartition& partition);

// Total product measure of the grid cells that are Mixed for the relation.
struct DefectResult {
    Rat defect;
    struct Cell {
        std::vector<std::size_t> block_ids;  // one block index per direction
        Rat mass;
    };
    std::vector<Cell> mixed_cells;
};

DefectResult regularity_defect(const Relation& rel, const GridPartition& partition,
                               const std::vector<WeightedMeasure>& measures,
                               std::uint64_t cell_budget);

// Splits the heaviest Mixed cell's largest block along the complementary
// coordinate with the most distinct values until the defect drops below
// `eps` or no split is possible within `max_blocks` blocks per direction.
// Always reports the final partition and its exact defect.
struct RefineResult {
    bool success = false;  // defect < eps reached; false means budget exhausted
    GridPartition partition;
    Rat defect;
    std::size_t splits = 0;
};

RefineResult greedy_refine(const Relation& rel, const std::vector<WeightedMeasure>& measures,
                           const Rat& eps, std::size_t max_blocks, std::uint64_t cell_budget);

// Best homogeneous cylinder intersection by product measure. `found` is set
// only when the best measure reaches alpha; the best CI is reported either
// way (ties broken by smallest enumeration index). Empty intersections are
// skipped.
struct SehResult {
    bool found = false;
    bool any_homogeneous = false;
    CylinderIntersection ci;
    Rat measure;
    Homogeneity sign = Homogeneity::Positive;
    std::uint64_t size = 0;
    std::uint64_t enumeration_index = 0;  // meaningful for the exact search
    std::uint32_t restart = 0;            // meaningful for the greedy search
};

SehResult seh_search_exact(const Relation& rel, const std::vector<WeightedMeasure>& measures,
                           const Rat& alpha, std::uint64_t ci_budget, int threads = 0);

// Seeded multi-restart growth: restart r draws its start point from a
// generator seeded with seed+r, then saturates the bases round-robin while
// the intersection stays homogeneous. Never returns a Mixed intersection;
// its measure is at most the exact optimum.
SehResult seh_search_greedy(const Relation& rel, const std::vector<WeightedMeasure>& measures,
                            const Rat& alpha, std::uint64_t seed, std::uint32_t restarts);

// Half-graph on [n] x [n]: edges {(i,j) : i < j}.
Relation make_halfgraph(std::uint32_t n);

// Zero set of GIP_{q,s,k} as a k-ary relation on (F_q^s)^k.
Relation make_gip_zero(const discrepancy::GipSpec& spec, std::uint64_t point_budget);

}  // namespace cyldisc::regularity
