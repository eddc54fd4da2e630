#include "cyldisc/regularity.hpp"

#include "cyldisc/errors.hpp"
#include "cyldisc/parallel.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <string>

namespace cyldisc::regularity {

std::vector<WeightedMeasure> uniform_measures(const ProductSpace& space) {
    std::vector<WeightedMeasure> measures;
    for (std::size_t i = 0; i < space.arity(); ++i) {
        WeightedMeasure m;
        m.factor = i;
        m.weights.assign(space.factors[i], make_rat(Int(1), Int(space.factors[i])));
        measures.push_back(std::move(m));
    }
    return measures;
}

void validate_measures(const ProductSpace& space, const std::vector<WeightedMeasure>& measures) {
    if (measures.size() != space.arity())
        throw ValidationError("need one measure per factor");
    for (std::size_t i = 0; i < measures.size(); ++i) {
        if (measures[i].factor != i) throw ValidationError("measure factor index mismatch");
        if (measures[i].weights.size() != space.factors[i])
            throw ValidationError("measure weight count mismatch in factor " + std::to_string(i));
        Rat total(0);
        for (const Rat& w : measures[i].weights) {
            if (w < 0) throw ValidationError("negative weight in factor " + std::to_string(i));
            total += w;
        }
        if (total != 1)
            throw ValidationError("weights in factor " + std::to_string(i) + " must sum to 1");
    }
}

Rat point_measure(const ProductSpace& space, const std::vector<WeightedMeasure>& measures,
                  std::uint64_t point) {
    std::vector<std::uint32_t> coords = space.decode(point);
    Rat w(1);
    for (std::size_t i = 0; i < coords.size(); ++i) w *= measures[i].weights[coords[i]];
    return w;
}

namespace {

// Per-point weights as integer numerators over a common denominator, so the
// sweeps stay in integer arithmetic.
struct ScaledWeights {
    std::vector<Int> point_num;
    Int denom;
};

ScaledWeights scale_weights(const ProductSpace& space,
                            const std::vector<WeightedMeasure>& measures) {
    ScaledWeights sw;
    sw.denom = 1;
    std::vector<Int> factor_denoms(space.arity());
    for (std::size_t i = 0; i < space.arity(); ++i) {
        Int l = 1;
        for (const Rat& w : measures[i].weights) l = lcm(l, denominator(w));
        factor_denoms[i] = l;
        sw.denom *= l;
    }
    sw.point_num.resize(space.total);
    std::vector<std::vector<Int>> nums(space.arity());
    for (std::size_t i = 0; i < space.arity(); ++i) {
        nums[i].reserve(measures[i].weights.size());
        for (const Rat& w : measures[i].weights)
            nums[i].push_back(numerator(w) * (factor_denoms[i] / denominator(w)));
    }
    for (std::uint64_t p = 0; p < space.total; ++p) {
        std::vector<std::uint32_t> coords = space.decode(p);
        Int n = 1;
        for (std::size_t i = 0; i < coords.size(); ++i) n *= nums[i][coords[i]];
        sw.point_num[p] = std::move(n);
    }
    return sw;
}

}  // namespace

Rat product_measure(const ProductSpace& space, const std::vector<WeightedMeasure>& measures,
                    const CylinderIntersection& ci) {
    validate_measures(space, measures);
    Rat total(0);
    for (std::uint64_t p = 0; p < space.total; ++p)
        if (cylinder::ci_contains(space, ci, p)) total += point_measure(space, measures, p);
    return total;
}

GridPartition trivial_partition(const ProductSpace& space) {
    GridPartition g;
    g.blocks.resize(space.arity());
    for (std::size_t d = 0; d < space.arity(); ++d) {
        BitVec all(space.comp_size(d));
        all.set();
        g.blocks[d].push_back(std::move(all));
    }
    return g;
}

GridPartition singleton_partition(const ProductSpace& space) {
    GridPartition g;
    g.blocks.resize(space.arity());
    for (std::size_t d = 0; d < space.arity(); ++d) {
        for (std::uint64_t t = 0; t < space.comp_size(d); ++t) {
            BitVec b(space.comp_size(d));
            b.set(t);
            g.blocks[d].push_back(std::move(b));
        }
    }
    return g;
}

void validate_partition(const ProductSpace& space, const GridPartition& partition) {
    if (partition.blocks.size() != space.arity())
        throw ValidationError("partition needs one family of blocks per direction");
    for (std::size_t d = 0; d < partition.blocks.size(); ++d) {
        BitVec seen(space.comp_size(d));
        for (const BitVec& block : partition.blocks[d]) {
            if (block.size() != space.comp_size(d))
                throw ValidationError("block length mismatch in direction " + std::to_string(d));
            if (block.none())
                throw ValidationError("empty block in direction " + std::to_string(d));
            if ((seen & block).any())
                throw ValidationError("overlapping blocks in direction " + std::to_string(d));
            seen |= block;
        }
        if (!seen.all())
            throw ValidationError("blocks do not cover direction " + std::to_string(d));
    }
}

DefectResult regularity_defect(const Relation& rel, const GridPartition& partition,
                               const std::vector<WeightedMeasure>& measures,
                               std::uint64_t cell_budget) {
    const ProductSpace& space = rel.space;
    validate_partition(space, partition);
    validate_measures(space, measures);

    const std::size_t k = space.arity();
    std::uint64_t cells = 1;
    for (std::size_t d = 0; d < k; ++d) {
        std::uint64_t kd = partition.blocks[d].size();
        if (cells > cell_budget / kd)
            throw GridTooLargeError("partition grid exceeds the cell budget " +
                                        std::to_string(cell_budget),
                                    std::numeric_limits<std::uint64_t>::max(), cell_budget);
        cells *= kd;
    }

    // map complementary points to their block, then bin all points by cell
    std::vector<std::vector<std::size_t>> block_of(k);
    for (std::size_t d = 0; d < k; ++d) {
        block_of[d].assign(space.comp_size(d), 0);
        for (std::size_t b = 0; b < partition.blocks[d].size(); ++b) {
            const BitVec& block = partition.blocks[d][b];
            for (std::uint64_t t = block.find_first(); t != BitVec::npos; t = block.find_next(t))
                block_of[d][t] = b;
        }
    }

    ScaledWeights sw = scale_weights(space, measures);
    std::vector<Int> cell_mass(cells, Int(0));
    std::vector<std::uint8_t> cell_flags(cells, 0);  // bit0 edge seen, bit1 non-edge seen
    for (std::uint64_t p = 0; p < space.total; ++p) {
        std::uint64_t cell = 0;
        for (std::size_t d = 0; d < k; ++d)
            cell = cell * partition.blocks[d].size() + block_of[d][space.comp_index(p, d)];
        cell_mass[cell] += sw.point_num[p];
        cell_flags[cell] |= rel.edges.test(p) ? 1 : 2;
    }

    DefectResult result;
    Int bad_total = 0;
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
        if (cell_flags[cell] != 3) continue;  // not Mixed
        bad_total += cell_mass[cell];
        DefectResult::Cell bad;
        bad.block_ids.resize(k);
        std::uint64_t rest = cell;
        for (std::size_t d = k; d-- > 0;) {
            bad.block_ids[d] = rest % partition.blocks[d].size();
            rest /= partition.blocks[d].size();
        }
        bad.mass = make_rat(cell_mass[cell], sw.denom);
        result.mixed_cells.push_back(std::move(bad));
    }
    result.defect = make_rat(bad_total, sw.denom);
    return result;
}

RefineResult greedy_refine(const Relation& rel, const std::vector<WeightedMeasure>& measures,
                           const Rat& eps, std::size_t max_blocks, std::uint64_t cell_budget) {
    if (eps <= 0) throw ValidationError("eps must be positive");
    if (max_blocks < 1) throw ValidationError("max_blocks must be >= 1");
    const ProductSpace& space = rel.space;
    const std::size_t k = space.arity();

    RefineResult result;
    result.partition = trivial_partition(space);
    for (;;) {
        DefectResult d = regularity_defect(rel, result.partition, measures, cell_budget);
        result.defect = d.defect;
        if (d.defect < eps) {
            result.success = true;
            return result;
        }
        // heaviest Mixed cell; regularity_defect lists cells in index order,
        // so the first strict maximum has the smallest cell index
        const DefectResult::Cell* worst = &d.mixed_cells.front();
        for (const auto& cell : d.mixed_cells)
            if (cell.mass > worst->mass) worst = &cell;

        // split one of the worst cell's blocks: largest block first
        std::vector<std::size_t> dirs(k);
        for (std::size_t i = 0; i < k; ++i) dirs[i] = i;
        std::stable_sort(dirs.begin(), dirs.end(), [&](std::size_t a, std::size_t b) {
            return result.partition.blocks[a][worst->block_ids[a]].count() >
                   result.partition.blocks[b][worst->block_ids[b]].count();
        });
        bool split_done = false;
        for (std::size_t dir : dirs) {
            if (result.partition.blocks[dir].size() >= max_blocks) continue;
            const BitVec& block = result.partition.blocks[dir][worst->block_ids[dir]];
            if (block.count() <= 1) continue;

            // complementary coordinate with the most distinct values
            std::size_t best_coord = 0;
            std::vector<std::uint32_t> best_values;
            for (std::size_t c = 0; c + 1 < space.arity(); ++c) {
                std::set<std::uint32_t> values;
                for (std::uint64_t t = block.find_first(); t != BitVec::npos;
                     t = block.find_next(t))
                    values.insert(space.comp_decode(t, dir)[c]);
                if (values.size() > best_values.size()) {
                    best_coord = c;
                    best_values.assign(values.begin(), values.end());
                }
            }
            if (best_values.size() < 2) continue;
            std::uint32_t cutoff = best_values[(best_values.size() + 1) / 2 - 1];

            BitVec low(block.size()), high(block.size());
            for (std::uint64_t t = block.find_first(); t != BitVec::npos; t = block.find_next(t))
                (space.comp_decode(t, dir)[best_coord] <= cutoff ? low : high).set(t);
            result.partition.blocks[dir][worst->block_ids[dir]] = std::move(low);
            result.partition.blocks[dir].push_back(std::move(high));
            ++result.splits;
            split_done = true;
            break;
        }
        if (!split_done) return result;  // budget exhausted, defect already final
    }
}

namespace {

SehResult finish_seh(const Relation& rel, const Rat& alpha, SehResult result) {
    if (result.any_homogeneous) {
        result.size = cylinder::ci_size(rel.space, result.ci);
        result.sign = cylinder::homogeneity(result.ci, rel);
        result.found = result.measure >= alpha;
    }
    return result;
}

}  // namespace

SehResult seh_search_exact(const Relation& rel, const std::vector<WeightedMeasure>& measures,
                           const Rat& alpha, std::uint64_t ci_budget, int threads) {
    const ProductSpace& space = rel.space;
    validate_measures(space, measures);
    cylinder::CiEnumeration en(space, ci_budget);
    const std::size_t k = space.arity();
    if (k > 16) throw ValidationError("sweep supports k <= 16");

    std::vector<std::vector<std::uint64_t>> comp(k, std::vector<std::uint64_t>(space.total));
    for (std::size_t d = 0; d < k; ++d)
        for (std::uint64_t p = 0; p < space.total; ++p) comp[d][p] = space.comp_index(p, d);
    ScaledWeights sw = scale_weights(space, measures);

    struct Best {
        bool seen = false;
        Int mass = 0;
        std::uint64_t index = 0;
    };
    auto step = [&](Best& acc, std::uint64_t ci_index) {
        std::uint64_t masks_buf[16];
        std::span<std::uint64_t> masks(masks_buf, k);
        en.masks_at(ci_index, masks);
        bool saw_edge = false, saw_non_edge = false, empty = true;
        Int mass = 0;
        for (std::uint64_t p = 0; p < space.total; ++p) {
            bool inside = true;
            for (std::size_t d = 0; d < k; ++d) {
                if (((masks[d] >> comp[d][p]) & 1) == 0) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            empty = false;
            (rel.edges.test(p) ? saw_edge : saw_non_edge) = true;
            if (saw_edge && saw_non_edge) return;  // Mixed
            mass += sw.point_num[p];
        }
        if (empty) return;
        if (!acc.seen || mass > acc.mass) {
            acc.seen = true;
            acc.mass = std::move(mass);
            acc.index = ci_index;
        }
    };
    auto merge = [](Best& into, const Best& other) {
        if (!into.seen || (other.seen && other.mass > into.mass)) into = other;
    };
    Best best = parallel_index_reduce(en.count(), threads, Best{}, step, merge);

    SehResult result;
    result.measure = Rat(0);
    if (best.seen) {
        result.any_homogeneous = true;
        result.ci = en.at(best.index);
        result.enumeration_index = best.index;
        result.measure = make_rat(best.mass, sw.denom);
    }
    return finish_seh(rel, alpha, std::move(result));
}

SehResult seh_search_greedy(const Relation& rel, const std::vector<WeightedMeasure>& measures,
                            const Rat& alpha, std::uint64_t seed, std::uint32_t restarts) {
    const ProductSpace& space = rel.space;
    validate_measures(space, measures);
    const std::size_t k = space.arity();

    SehResult best;
    best.measure = Rat(0);
    for (std::uint32_t r = 0; r < restarts; ++r) {
        std::mt19937_64 gen(seed + r);
        std::uint64_t start = gen() % space.total;
        bool want_edge = rel.edges.test(start);

        CylinderIntersection ci = cylinder::point_ci(space, start);
        // grow bases round-robin; an element joins when every point it adds
        // matches the start point's edge status
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t d = 0; d < k; ++d) {
                BitVec& base = *ci.bases[d];
                for (std::uint64_t t = 0; t < base.size(); ++t) {
                    if (base.test(t)) continue;
                    std::vector<std::uint32_t> coords(k);
                    std::vector<std::uint32_t> rest = space.comp_decode(t, d);
                    std::size_t out = 0;
                    for (std::size_t i = 0; i < k; ++i)
                        if (i != d) coords[i] = rest[out++];
                    bool ok = true;
                    for (std::uint32_t c = 0; c < space.factors[d] && ok; ++c) {
                        coords[d] = c;
                        std::uint64_t p = space.encode(coords);
                        bool member = true;
                        for (std::size_t j = 0; j < k && member; ++j) {
                            if (j == d) continue;
                            member = ci.bases[j]->test(space.comp_index(p, j));
                        }
                        if (member && rel.edges.test(p) != want_edge) ok = false;
                    }
                    if (ok) {
                        base.set(t);
                        changed = true;
                    }
                }
            }
        }
        Rat measure = product_measure(space, measures, ci);
        if (!best.any_homogeneous || measure > best.measure) {
            best.any_homogeneous = true;
            best.ci = std::move(ci);
            best.measure = std::move(measure);
            best.restart = r;
        }
    }
    return finish_seh(rel, alpha, std::move(best));
}

Relation make_halfgraph(std::uint32_t n) {
    if (n < 1) throw ValidationError("half-graph needs n >= 1");
    ProductSpace space = ProductSpace::make({n, n});
    BitVec edges(space.total);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            edges.set(static_cast<std::uint64_t>(i) * n + j);
    return cylinder::make_relation(std::move(space), std::move(edges));
}

Relation make_gip_zero(const discrepancy::GipSpec& spec, std::uint64_t point_budget) {
    discrepancy::FiniteFunction f = discrepancy::gip_function(spec, point_budget);
    ProductSpace space = discrepancy::gip_space(spec);
    BitVec edges(space.total);
    for (std::uint64_t p = 0; p < space.total; ++p)
        if (f.values[p] == 0) edges.set(p);  // index 0 is the zero element
    return cylinder::make_relation(std::move(space), std::move(edges));
}

}  // namespace cyldisc::regularity
