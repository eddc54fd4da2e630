#include "cyldisc/cylinder.hpp"
#include "cyldisc/errors.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <vector>

using namespace cyldisc;
using namespace cyldisc::cylinder;

namespace {

BitVec bits(std::size_t size, std::initializer_list<std::uint64_t> set_bits) {
    BitVec b(size);
    for (std::uint64_t i : set_bits) b.set(i);
    return b;
}

// Membership oracle straight from the definition: build each direction's
// cylinder as a point set, intersect the point sets.
std::set<std::uint64_t> brute_member_set(const ProductSpace& space,
                                         const CylinderIntersection& ci) {
    std::set<std::uint64_t> members;
    for (std::uint64_t p = 0; p < space.total; ++p) members.insert(p);
    for (std::size_t d = 0; d < ci.bases.size(); ++d) {
        if (!ci.bases[d]) continue;
        std::set<std::uint64_t> cyl;
        for (std::uint64_t p = 0; p < space.total; ++p)
            if (ci.bases[d]->test(space.comp_index(p, d))) cyl.insert(p);
        std::set<std::uint64_t> kept;
        for (std::uint64_t p : members)
            if (cyl.count(p)) kept.insert(p);
        members = std::move(kept);
    }
    return members;
}

Relation random_relation(ProductSpace space, std::mt19937_64& gen) {
    BitVec edges(space.total);
    for (std::uint64_t p = 0; p < space.total; ++p)
        if (gen() & 1) edges.set(p);
    return make_relation(std::move(space), std::move(edges));
}

}  // namespace

TEST_CASE("mixed-radix point indexing, factor 1 most significant") {
    ProductSpace space = ProductSpace::make({2, 3, 2});
    CHECK(space.total == 12);
    CHECK(space.decode(0) == std::vector<std::uint32_t>{0, 0, 0});
    CHECK(space.decode(11) == std::vector<std::uint32_t>{1, 2, 1});
    CHECK(space.decode(7) == std::vector<std::uint32_t>{1, 0, 1});
    for (std::uint64_t p = 0; p < space.total; ++p) {
        std::vector<std::uint32_t> coords = space.decode(p);
        CHECK(space.encode(coords) == p);
        // complementary index round-trips through comp_decode
        for (std::size_t d = 0; d < space.arity(); ++d) {
            std::vector<std::uint32_t> rest = space.comp_decode(space.comp_index(p, d), d);
            std::size_t out = 0;
            for (std::size_t j = 0; j < space.arity(); ++j)
                if (j != d) CHECK(rest[out++] == coords[j]);
        }
    }
    CHECK_THROWS_AS(ProductSpace::make({2, 0}), ValidationError);
    CHECK_THROWS_AS(ProductSpace::make({}), ValidationError);
}

TEST_CASE("ci_contains matches the definition") {
    // the all-full intersection contains everything
    ProductSpace sq = ProductSpace::make({2, 2});
    CylinderIntersection full_ci = CylinderIntersection::full(2);
    for (std::uint64_t p = 0; p < sq.total; ++p) CHECK(ci_contains(sq, full_ci, p));

    // direction-1 cylinder with base {0} on 2x2: exactly the points (.,0)...
    // direction index 0 constrains the complementary coordinate, i.e. x_2
    CylinderIntersection dir1 = CylinderIntersection::full(2);
    dir1.bases[0] = bits(2, {0});
    CHECK(ci_contains(sq, dir1, sq.encode(std::vector<std::uint32_t>{0, 0})));
    CHECK(ci_contains(sq, dir1, sq.encode(std::vector<std::uint32_t>{1, 0})));
    CHECK_FALSE(ci_contains(sq, dir1, sq.encode(std::vector<std::uint32_t>{0, 1})));
    CHECK_FALSE(ci_contains(sq, dir1, sq.encode(std::vector<std::uint32_t>{1, 1})));

    // 2x2x2: dir-1 base {(0,0)}, other directions full -> points (.,0,0)
    ProductSpace cube = ProductSpace::make({2, 2, 2});
    CylinderIntersection ci = CylinderIntersection::full(3);
    ci.bases[0] = bits(4, {0});
    std::set<std::uint64_t> brute = brute_member_set(cube, ci);
    std::set<std::uint64_t> expected{cube.encode(std::vector<std::uint32_t>{0, 0, 0}),
                                     cube.encode(std::vector<std::uint32_t>{1, 0, 0})};
    CHECK(brute == expected);
    for (std::uint64_t p = 0; p < cube.total; ++p)
        CHECK(ci_contains(cube, ci, p) == (brute.count(p) > 0));
}

TEST_CASE("ci_size by enumeration") {
    ProductSpace sq = ProductSpace::make({3, 3});
    CHECK(ci_size(sq, CylinderIntersection::full(2)) == 9);

    // rectangle {0,1} x {2}: rows from the dir-1 slot, columns from dir-0
    CylinderIntersection rect = CylinderIntersection::full(2);
    rect.bases[0] = bits(3, {2});     // x_2 = 2
    rect.bases[1] = bits(3, {0, 1});  // x_1 in {0,1}
    CHECK(ci_size(sq, rect) == 2);

    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 20; ++trial) {
        CylinderIntersection ci = CylinderIntersection::full(2);
        ci.bases[0] = BitVec(3);
        ci.bases[1] = BitVec(3);
        for (int t = 0; t < 3; ++t) {
            if (gen() & 1) ci.bases[0]->set(t);
            if (gen() & 1) ci.bases[1]->set(t);
        }
        CHECK(ci_size(sq, ci) == brute_member_set(sq, ci).size());
        CHECK(ci_size(sq, ci) == ci.bases[0]->count() * ci.bases[1]->count());
    }
}

TEST_CASE("homogeneity of the diagonal relation") {
    ProductSpace sq = ProductSpace::make({2, 2});
    BitVec diag(4);
    diag.set(sq.encode(std::vector<std::uint32_t>{0, 0}));
    diag.set(sq.encode(std::vector<std::uint32_t>{1, 1}));
    Relation rel = make_relation(sq, diag);

    BitVec all(4);
    all.set();
    Relation full_rel = make_relation(sq, all);
    CHECK(homogeneity(CylinderIntersection::full(2), full_rel) == Homogeneity::Positive);
    CHECK(homogeneity(CylinderIntersection::full(2), rel) == Homogeneity::Mixed);

    CylinderIntersection corner = CylinderIntersection::full(2);
    corner.bases[0] = bits(2, {0});
    corner.bases[1] = bits(2, {0});
    CHECK(homogeneity(corner, rel) == Homogeneity::Positive);

    // the empty intersection is Positive by convention
    CylinderIntersection empty_ci = CylinderIntersection::full(2);
    empty_ci.bases[0] = BitVec(2);
    CHECK(homogeneity(empty_ci, rel) == Homogeneity::Positive);
}

TEST_CASE("complementing the relation swaps Positive and Negative") {
    std::mt19937_64 gen(17);
    for (const std::vector<std::uint32_t>& factors :
         {std::vector<std::uint32_t>{2, 2}, {4, 4}, {2, 2, 2}, {2, 8}}) {
        ProductSpace space = ProductSpace::make(factors);
        REQUIRE(space.total <= 16);
        CiEnumeration en(space, std::uint64_t{1} << 22);
        for (int r = 0; r < 5; ++r) {
            Relation rel = random_relation(space, gen);
            Relation co = make_relation(space, ~rel.edges);
            for (std::uint64_t i = 0; i < en.count(); ++i) {
                CylinderIntersection ci = en.at(i);
                Homogeneity h = homogeneity(ci, rel);
                Homogeneity hc = homogeneity(ci, co);
                if (ci_size(space, ci) == 0) {
                    CHECK(h == Homogeneity::Positive);
                    CHECK(hc == Homogeneity::Positive);
                } else if (h == Homogeneity::Mixed) {
                    CHECK(hc == Homogeneity::Mixed);
                } else {
                    CHECK(hc == (h == Homogeneity::Positive ? Homogeneity::Negative
                                                            : Homogeneity::Positive));
                }
            }
        }
    }
}

TEST_CASE("enumeration counts and budget gating") {
    ProductSpace sq = ProductSpace::make({2, 2});
    CHECK(CiEnumeration(sq, 1 << 20).count() == 16);

    ProductSpace cube = ProductSpace::make({2, 2, 2});
    CHECK(CiEnumeration(cube, 1 << 20).count() == 4096);

    ProductSpace dot = ProductSpace::make({1, 1});
    CHECK(CiEnumeration(dot, 1 << 20).count() == 4);

    CHECK_THROWS_AS(CiEnumeration(cube, 4095), BudgetExceededError);
    try {
        CiEnumeration(cube, 4095);
    } catch (const BudgetExceededError& e) {
        CHECK(e.required == 4096);
        CHECK(e.budget == 4095);
    }
    // far over 2^63 combinations: still a clean budget error
    CHECK_THROWS_AS(CiEnumeration(ProductSpace::make({64, 64}), 1 << 20), BudgetExceededError);
}

TEST_CASE("every enumerated base assignment is distinct and complete") {
    ProductSpace sq = ProductSpace::make({2, 2});
    CiEnumeration en(sq, 1 << 20);
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t i = 0; i < en.count(); ++i) {
        std::vector<std::uint64_t> masks(2);
        en.masks_at(i, masks);
        seen.insert(masks);
        // at() agrees with masks_at()
        CylinderIntersection ci = en.at(i);
        for (std::size_t d = 0; d < 2; ++d)
            for (std::uint64_t t = 0; t < 2; ++t)
                CHECK(ci.bases[d]->test(t) == (((masks[d] >> t) & 1) != 0));
    }
    CHECK(seen.size() == 16);
}

TEST_CASE("ci_size never exceeds any base's extension") {
    // |C| <= |base_d| * n_d for every present slot, with equality to the
    // space total when every slot is full
    ProductSpace cube = ProductSpace::make({2, 3, 2});
    std::mt19937_64 gen(19);
    for (int trial = 0; trial < 50; ++trial) {
        CylinderIntersection ci = CylinderIntersection::full(3);
        for (std::size_t d = 0; d < 3; ++d) {
            if (gen() % 3 == 0) continue;  // leave some slots full
            BitVec base(cube.comp_size(d));
            for (std::uint64_t t = 0; t < base.size(); ++t)
                if (gen() & 1) base.set(t);
            ci.bases[d] = std::move(base);
        }
        std::uint64_t size = ci_size(cube, ci);
        for (std::size_t d = 0; d < 3; ++d)
            if (ci.bases[d]) CHECK(size <= ci.bases[d]->count() * cube.factors[d]);
    }
    CHECK(ci_size(cube, CylinderIntersection::full(3)) == cube.total);
}

TEST_CASE("for k=2 the cylinder intersections are exactly the rectangles") {
    ProductSpace sq = ProductSpace::make({3, 3});
    CiEnumeration en(sq, 1 << 20);
    std::set<std::set<std::uint64_t>> ci_sets;
    for (std::uint64_t i = 0; i < en.count(); ++i)
        ci_sets.insert(brute_member_set(sq, en.at(i)));

    std::set<std::set<std::uint64_t>> rects;
    for (std::uint32_t rows = 0; rows < 8; ++rows) {
        for (std::uint32_t cols = 0; cols < 8; ++cols) {
            std::set<std::uint64_t> rect;
            for (std::uint32_t r = 0; r < 3; ++r)
                for (std::uint32_t c = 0; c < 3; ++c)
                    if (((rows >> r) & 1) && ((cols >> c) & 1))
                        rect.insert(sq.encode(std::vector<std::uint32_t>{r, c}));
            rects.insert(std::move(rect));
        }
    }
    CHECK(ci_sets == rects);
}
