#include "cyldisc/errors.hpp"
#include "cyldisc/regularity.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace cyldisc;
using namespace cyldisc::regularity;
namespace ff = cyldisc::finfield;

namespace {

constexpr std::uint64_t kPointBudget = std::uint64_t{1} << 20;
constexpr std::uint64_t kCiBudget = std::uint64_t{1} << 22;
constexpr std::uint64_t kCellBudget = std::uint64_t{1} << 20;

Relation random_relation(const std::vector<std::uint32_t>& factors, std::mt19937_64& gen) {
    ProductSpace space = ProductSpace::make(factors);
    BitVec edges(space.total);
    for (std::uint64_t p = 0; p < space.total; ++p)
        if (gen() & 1) edges.set(p);
    return cylinder::make_relation(std::move(space), std::move(edges));
}

Relation full_relation(const std::vector<std::uint32_t>& factors) {
    ProductSpace space = ProductSpace::make(factors);
    BitVec edges(space.total);
    edges.set();
    return cylinder::make_relation(std::move(space), std::move(edges));
}

// Defect straight from the definition: enumerate cells as cylinder
// intersections and sum product_measure over the Mixed ones.
Rat brute_defect(const Relation& rel, const GridPartition& partition,
                 const std::vector<WeightedMeasure>& measures) {
    const ProductSpace& space = rel.space;
    std::vector<std::size_t> idx(space.arity(), 0);
    Rat defect(0);
    for (;;) {
        CylinderIntersection cell = CylinderIntersection::full(space.arity());
        for (std::size_t d = 0; d < space.arity(); ++d)
            cell.bases[d] = partition.blocks[d][idx[d]];
        if (cylinder::homogeneity(cell, rel) == Homogeneity::Mixed)
            defect += product_measure(space, measures, cell);
        std::size_t d = space.arity();
        while (d-- > 0) {
            if (++idx[d] < partition.blocks[d].size()) break;
            idx[d] = 0;
            if (d == 0) return defect;
        }
    }
}

GridPartition random_partition(const ProductSpace& space, std::mt19937_64& gen) {
    GridPartition g;
    g.blocks.resize(space.arity());
    for (std::size_t d = 0; d < space.arity(); ++d) {
        std::uint64_t m = space.comp_size(d);
        std::size_t count = 1 + gen() % std::min<std::uint64_t>(m, 3);
        std::vector<BitVec> blocks(count, BitVec(m));
        for (std::uint64_t t = 0; t < m; ++t) blocks[gen() % count].set(t);
        for (const BitVec& b : blocks)
            if (b.any()) g.blocks[d].push_back(b);
        std::vector<BitVec> kept;
        for (BitVec& b : g.blocks[d])
            if (b.any()) kept.push_back(std::move(b));
        g.blocks[d] = std::move(kept);
    }
    return g;
}

// Split one randomly chosen block of one direction in two.
GridPartition refine_once(const ProductSpace& space, const GridPartition& parent,
                          std::mt19937_64& gen) {
    GridPartition child = parent;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::size_t d = gen() % space.arity();
        std::size_t b = gen() % child.blocks[d].size();
        const BitVec& block = child.blocks[d][b];
        if (block.count() < 2) continue;
        BitVec left(block.size()), right(block.size());
        bool flip = false;
        for (std::uint64_t t = block.find_first(); t != BitVec::npos; t = block.find_next(t)) {
            (flip ? left : right).set(t);
            flip = gen() & 1;
        }
        if (left.none() || right.none()) continue;
        child.blocks[d][b] = std::move(left);
        child.blocks[d].push_back(std::move(right));
        return child;
    }
    return child;
}

}  // namespace

TEST_CASE("product measure of points and intersections") {
    ProductSpace sq = ProductSpace::make({2, 2});
    std::vector<WeightedMeasure> uniform = uniform_measures(sq);

    CHECK(product_measure(sq, uniform, CylinderIntersection::full(2)) == 1);

    CylinderIntersection rect = CylinderIntersection::full(2);
    rect.bases[0] = BitVec(2);
    rect.bases[0]->set();         // both columns
    rect.bases[1] = BitVec(2);
    rect.bases[1]->set(0);        // row 0
    CHECK(product_measure(sq, uniform, rect) == Rat(1, 2));

    std::vector<WeightedMeasure> skewed{
        {0, {Rat(1, 3), Rat(2, 3)}},
        {1, {Rat(1, 4), Rat(3, 4)}},
    };
    CHECK(point_measure(sq, skewed, sq.encode(std::vector<std::uint32_t>{1, 1})) == Rat(1, 2));
    CHECK(product_measure(sq, skewed, CylinderIntersection::full(2)) == 1);
}

TEST_CASE("defect examples") {
    std::mt19937_64 gen(5);

    // singleton partitions: every cell has at most one point
    for (int trial = 0; trial < 10; ++trial) {
        Relation rel = random_relation({3, 3}, gen);
        std::vector<WeightedMeasure> uniform = uniform_measures(rel.space);
        DefectResult d = regularity_defect(rel, singleton_partition(rel.space), uniform,
                                           kCellBudget);
        CHECK(d.defect == 0);
        CHECK(d.mixed_cells.empty());
    }

    // one-block partitions on a Mixed relation: the unique cell has mass 1
    Relation half = make_halfgraph(3);
    std::vector<WeightedMeasure> uniform = uniform_measures(half.space);
    DefectResult d = regularity_defect(half, trivial_partition(half.space), uniform, kCellBudget);
    CHECK(d.defect == 1);

    // half-graph on 4x4 with both sides split {0,1} | {2,3}: only the two
    // diagonal cells are Mixed, each of mass 1/4
    Relation half4 = make_halfgraph(4);
    GridPartition split;
    split.blocks.resize(2);
    for (std::size_t dir = 0; dir < 2; ++dir) {
        BitVec lo(4), hi(4);
        lo.set(0);
        lo.set(1);
        hi.set(2);
        hi.set(3);
        split.blocks[dir] = {lo, hi};
    }
    std::vector<WeightedMeasure> uniform4 = uniform_measures(half4.space);
    DefectResult d4 = regularity_defect(half4, split, uniform4, kCellBudget);
    CHECK(d4.defect == Rat(1, 2));
    CHECK(d4.defect == brute_defect(half4, split, uniform4));
    CHECK(d4.mixed_cells.size() == 2);
}

TEST_CASE("defect is a probability mass and matches the brute cell sweep") {
    std::mt19937_64 gen(31);
    for (const std::vector<std::uint32_t>& factors :
         {std::vector<std::uint32_t>{2, 2}, {3, 3}, {2, 2, 2}, {3, 3, 3}}) {
        for (int trial = 0; trial < 25; ++trial) {
            Relation rel = random_relation(factors, gen);
            std::vector<WeightedMeasure> uniform = uniform_measures(rel.space);
            GridPartition partition = random_partition(rel.space, gen);
            DefectResult d = regularity_defect(rel, partition, uniform, kCellBudget);
            CHECK(d.defect >= 0);
            CHECK(d.defect <= 1);
            CHECK(d.defect == brute_defect(rel, partition, uniform));
            bool any_mixed = !d.mixed_cells.empty();
            CHECK((d.defect == 0) == !any_mixed);
        }
    }
}

TEST_CASE("refining a partition never increases the defect") {
    std::mt19937_64 gen(37);
    const std::vector<std::vector<std::uint32_t>> shapes{{3, 3}, {4, 4}, {2, 3, 2}, {2, 2, 2}};
    int done = 0;
    while (done < 200) {
        Relation rel = random_relation(shapes[gen() % shapes.size()], gen);
        std::vector<WeightedMeasure> uniform = uniform_measures(rel.space);
        GridPartition parent = random_partition(rel.space, gen);
        GridPartition child = refine_once(rel.space, parent, gen);
        Rat parent_defect = regularity_defect(rel, parent, uniform, kCellBudget).defect;
        Rat child_defect = regularity_defect(rel, child, uniform, kCellBudget).defect;
        CHECK(child_defect <= parent_defect);
        ++done;
    }
}

TEST_CASE("greedy refinement reaches the target or reports exhaustion") {
    // full relation: the trivial partition is already homogeneous
    Relation full = full_relation({3, 3});
    std::vector<WeightedMeasure> uniform = uniform_measures(full.space);
    RefineResult done = greedy_refine(full, uniform, Rat(1, 100), 4, kCellBudget);
    CHECK(done.success);
    CHECK(done.defect == 0);
    CHECK(done.splits == 0);

    // half-graph n=8 with eps = 1/4 succeeds within 8 blocks per direction
    Relation half8 = make_halfgraph(8);
    std::vector<WeightedMeasure> uniform8 = uniform_measures(half8.space);
    RefineResult refined = greedy_refine(half8, uniform8, Rat(1, 4), 8, kCellBudget);
    CHECK(refined.success);
    CHECK(refined.defect < Rat(1, 4));
    for (const auto& direction : refined.partition.blocks) CHECK(direction.size() <= 8);
    // the reported defect is the real defect of the reported partition
    CHECK(regularity_defect(half8, refined.partition, uniform8, kCellBudget).defect ==
          refined.defect);

    // gip zero set q=2, s=2, k=2 cannot reach 1/100 with two blocks per side
    Relation gz = make_gip_zero(
        discrepancy::make_gip_spec(ff::make_field(2, 1, {0, 1}), 2, 2), kPointBudget);
    std::vector<WeightedMeasure> mg = uniform_measures(gz.space);
    RefineResult exhausted = greedy_refine(gz, mg, Rat(1, 100), 2, kCellBudget);
    CHECK_FALSE(exhausted.success);
    CHECK(exhausted.defect >= Rat(1, 100));
    CHECK(regularity_defect(gz, exhausted.partition, mg, kCellBudget).defect ==
          exhausted.defect);
}

TEST_CASE("exact homogeneous search") {
    // full relation: the full intersection has measure 1
    Relation full = full_relation({3, 3});
    std::vector<WeightedMeasure> uniform = uniform_measures(full.space);
    SehResult r = seh_search_exact(full, uniform, Rat(1), kCiBudget);
    CHECK(r.found);
    CHECK(r.measure == 1);
    CHECK(r.sign == Homogeneity::Positive);

    // half-graph 4x4: the best homogeneous rectangle is the 3x2 block below
    // the diagonal, measure 6/16
    Relation half4 = make_halfgraph(4);
    std::vector<WeightedMeasure> uniform4 = uniform_measures(half4.space);
    SehResult best = seh_search_exact(half4, uniform4, Rat(1, 4), kCiBudget);
    CHECK(best.found);
    CHECK(best.measure == Rat(3, 8));
    CHECK(best.sign == Homogeneity::Negative);
    CHECK(best.measure >= Rat(1, 4));

    // diagonal on 3x3: no homogeneous rectangle reaches 1/2
    ProductSpace sq = ProductSpace::make({3, 3});
    BitVec diag(9);
    for (std::uint32_t i = 0; i < 3; ++i)
        diag.set(sq.encode(std::vector<std::uint32_t>{i, i}));
    Relation diagonal = cylinder::make_relation(sq, diag);
    std::vector<WeightedMeasure> um = uniform_measures(sq);
    SehResult none = seh_search_exact(diagonal, um, Rat(1, 2), kCiBudget);
    CHECK_FALSE(none.found);
    CHECK(none.any_homogeneous);
    CHECK(none.measure == Rat(2, 9));  // e.g. {0} x {1,2} avoiding the diagonal
}

TEST_CASE("greedy homogeneous search") {
    Relation full = full_relation({3, 3});
    std::vector<WeightedMeasure> uniform = uniform_measures(full.space);
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
        SehResult r = seh_search_greedy(full, uniform, Rat(1), seed, 4);
        CHECK(r.found);
        CHECK(r.measure == 1);
    }

    // empty relation: everything is Negative-homogeneous
    ProductSpace sq = ProductSpace::make({3, 3});
    Relation empty = cylinder::make_relation(sq, BitVec(9));
    std::vector<WeightedMeasure> um = uniform_measures(sq);
    SehResult neg = seh_search_greedy(empty, um, Rat(1), 0, 1);
    CHECK(neg.found);
    CHECK(neg.measure == 1);
    CHECK(neg.sign == Homogeneity::Negative);

    // half-graph 8x8: reaches 1/4 with seed 0 and 32 restarts, and never
    // beats the exact optimum
    Relation half8 = make_halfgraph(8);
    std::vector<WeightedMeasure> u8 = uniform_measures(half8.space);
    SehResult greedy = seh_search_greedy(half8, u8, Rat(1, 4), 0, 32);
    CHECK(greedy.found);
    CHECK(greedy.measure >= Rat(1, 4));
    SehResult exact = seh_search_exact(half8, u8, Rat(1, 4), kCiBudget);
    CHECK(greedy.measure <= exact.measure);
    CHECK(cylinder::homogeneity(greedy.ci, half8) != Homogeneity::Mixed);

    // the exact sweep is scheduling-independent
    SehResult threaded = seh_search_exact(half8, u8, Rat(1, 4), kCiBudget, 4);
    CHECK(threaded.measure == exact.measure);
    CHECK(threaded.enumeration_index == exact.enumeration_index);
}

TEST_CASE("greedy never beats exact and always lands homogeneous") {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::uint32_t> factors =
            (trial % 2) ? std::vector<std::uint32_t>{3, 3} : std::vector<std::uint32_t>{2, 2, 2};
        Relation rel = random_relation(factors, gen);
        std::vector<WeightedMeasure> uniform = uniform_measures(rel.space);
        SehResult greedy = seh_search_greedy(rel, uniform, Rat(1), trial, 8);
        SehResult exact = seh_search_exact(rel, uniform, Rat(1), kCiBudget);
        REQUIRE(greedy.any_homogeneous);
        REQUIRE(exact.any_homogeneous);
        CHECK(greedy.measure <= exact.measure);
        CHECK(cylinder::homogeneity(greedy.ci, rel) != Homogeneity::Mixed);
        CHECK(cylinder::ci_size(rel.space, greedy.ci) > 0);
    }
}

TEST_CASE("relation generators") {
    Relation h2 = make_halfgraph(2);
    CHECK(h2.edges.count() == 1);
    CHECK(h2.edges.test(h2.space.encode(std::vector<std::uint32_t>{0, 1})));

    // AND zero set: everything except (1,1)
    Relation nand = make_gip_zero(
        discrepancy::make_gip_spec(ff::make_field(2, 1, {0, 1}), 1, 2), kPointBudget);
    CHECK(nand.edges.count() == 3);
    CHECK_FALSE(nand.edges.test(nand.space.encode(std::vector<std::uint32_t>{1, 1})));

    Relation nand3 = make_gip_zero(
        discrepancy::make_gip_spec(ff::make_field(2, 1, {0, 1}), 1, 3), kPointBudget);
    CHECK(nand3.space.total == 8);
    CHECK(nand3.edges.count() == 7);
}
