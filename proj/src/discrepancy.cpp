#include "cyldisc/discrepancy.hpp"

#include "cyldisc/errors.hpp"
#include "cyldisc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cyldisc::discrepancy {

FiniteFunction make_function(std::uint64_t domain_size, std::uint32_t range_size,
                             std::vector<std::uint32_t> values) {
    if (domain_size < 1 || range_size < 1)
        throw ValidationError("function needs nonempty domain and range");
    if (values.size() != domain_size)
        throw ValidationError("value table length must equal the domain size");
    for (std::uint32_t v : values)
        if (v >= range_size) throw ValidationError("function value out of range");
    return FiniteFunction{domain_size, range_size, std::move(values)};
}

DiscrepancyResult strong_discrepancy(const FiniteFunction& f, const BitVec& S) {
    if (S.size() != f.domain_size) throw ValidationError("subset indicator length mismatch");
    DiscrepancyResult r;
    r.fiber_counts.assign(f.range_size, 0);
    for (std::uint64_t p = S.find_first(); p != BitVec::npos; p = S.find_next(p)) {
        ++r.fiber_counts[f.values[p]];
        ++r.subset_size;
    }
    // |count_y - |S|/|B|| / |Z| = |count_y |B| - |S|| / (|B| |Z|): compare by
    // the integer numerators over the common denominator
    std::uint64_t best_num = 0;
    std::uint32_t best_y = 0;
    for (std::uint32_t y = 0; y < f.range_size; ++y) {
        std::uint64_t scaled = r.fiber_counts[y] * f.range_size;
        std::uint64_t num = scaled >= r.subset_size ? scaled - r.subset_size : r.subset_size - scaled;
        if (num > best_num) {
            best_num = num;
            best_y = y;
        }
    }
    r.gamma = make_rat(Int(best_num), Int(f.range_size) * f.domain_size);
    r.argmax = best_y;
    return r;
}

FiberBoundReport fiber_bound_check(const FiniteFunction& f, const BitVec& S,
                                   std::optional<Rat> alpha) {
    FiberBoundReport report;
    report.gamma = strong_discrepancy(f, S);
    const Rat share = make_rat(Int(report.gamma.subset_size), Int(f.range_size));
    const Rat lower = share - report.gamma.gamma * f.domain_size;
    report.holds = true;
    report.all_fibers_nonempty = true;
    for (std::uint32_t y = 0; y < f.range_size; ++y) {
        FiberBoundReport::Row row;
        row.count = report.gamma.fiber_counts[y];
        row.lower = lower;
        row.ok = Rat(row.count) >= lower;
        report.holds = report.holds && row.ok;
        report.all_fibers_nonempty = report.all_fibers_nonempty && row.count > 0;
        report.rows.push_back(std::move(row));
    }
    report.alpha = alpha ? *alpha : make_rat(Int(report.gamma.subset_size), Int(f.domain_size));
    report.trigger_fires = report.alpha > 0 &&
                           Rat(report.gamma.subset_size) >= report.alpha * f.domain_size &&
                           report.gamma.gamma * f.range_size < report.alpha;
    return report;
}

GipSpec make_gip_spec(finfield::FieldSpec field, std::uint32_t s, std::uint32_t k) {
    if (s < 1) throw ValidationError("inner length s must be >= 1");
    if (k < 2) throw ValidationError("party count k must be >= 2");
    return GipSpec{std::move(field), s, k};
}

finfield::FieldElement gip_eval(const GipSpec& spec,
                                const std::vector<std::vector<finfield::FieldElement>>& x) {
    if (x.size() != spec.k) throw ValidationError("gip argument must have k tuples");
    for (const auto& t : x)
        if (t.size() != spec.s) throw ValidationError("gip tuples must have s elements");
    finfield::FieldElement acc = finfield::zero(spec.field);
    for (std::uint32_t i = 0; i < spec.s; ++i) {
        finfield::FieldElement prod = x[0][i];
        for (std::uint32_t j = 1; j < spec.k; ++j) prod = finfield::mul(spec.field, prod, x[j][i]);
        acc = finfield::add(spec.field, acc, prod);
    }
    return acc;
}

namespace {

// factor size q^s with overflow guard
std::uint64_t factor_size(const GipSpec& spec) {
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < spec.s; ++i) {
        if (size > std::numeric_limits<std::uint32_t>::max() / spec.field.q)
            throw BudgetExceededError("gip factor size q^s exceeds 2^32",
                                      std::numeric_limits<std::uint64_t>::max(),
                                      std::numeric_limits<std::uint32_t>::max());
        size *= spec.field.q;
    }
    return size;
}

}  // namespace

ProductSpace gip_space(const GipSpec& spec) {
    std::uint64_t fs = factor_size(spec);
    return ProductSpace::make(
        std::vector<std::uint32_t>(spec.k, static_cast<std::uint32_t>(fs)));
}

FiniteFunction gip_function(const GipSpec& spec, std::uint64_t point_budget) {
    std::uint64_t fs = factor_size(spec);
    std::uint64_t domain = 1;
    for (std::uint32_t j = 0; j < spec.k; ++j) {
        if (domain > point_budget / fs)
            throw BudgetExceededError("gip table needs q^(s k) points over the budget " +
                                          std::to_string(point_budget),
                                      std::numeric_limits<std::uint64_t>::max(), point_budget);
        domain *= fs;
    }

    const std::uint64_t q = spec.field.q;
    std::vector<finfield::FieldElement> elems = finfield::enumerate_elements(spec.field);
    std::vector<std::uint32_t> values(domain);
    std::vector<std::vector<finfield::FieldElement>> x(
        spec.k, std::vector<finfield::FieldElement>(spec.s, finfield::zero(spec.field)));
    for (std::uint64_t point = 0; point < domain; ++point) {
        std::uint64_t rest = point;
        for (std::uint32_t j = spec.k; j-- > 0;) {
            std::uint64_t fpoint = rest % fs;
            rest /= fs;
            for (std::uint32_t i = spec.s; i-- > 0;) {
                x[j][i] = elems[fpoint % q];
                fpoint /= q;
            }
        }
        values[point] =
            static_cast<std::uint32_t>(finfield::element_index(spec.field, gip_eval(spec, x)));
    }
    return make_function(domain, static_cast<std::uint32_t>(q), std::move(values));
}

BhkBound bhk_bound(std::uint64_t q, std::uint32_t s, std::uint32_t k) {
    if (q < 2) throw ValidationError("q must be >= 2");
    if (s < 1 || s > 4096) throw ValidationError("s must be in [1,4096]");
    if (k < 2 || k > 16) throw ValidationError("k must be in [2,16]");
    BhkBound b;
    b.power = 1u << (k - 1);
    const Rat one_minus = make_rat(Int(q - 1), Int(q));
    const Rat term = Rat(1) - rat_pow(one_minus, k - 1);
    b.rhs_power = rat_pow(one_minus, b.power) * rat_pow(term, s);

    // smallest double whose power-th power is >= rhs_power (doubles convert
    // to rationals exactly, so the certificate is watertight)
    auto certified = [&](double v) { return v >= 0 && rat_pow(Rat(v), b.power) >= b.rhs_power; };
    double estimate =
        std::pow(rat_to_double(b.rhs_power), 1.0 / static_cast<double>(b.power));
    if (!std::isfinite(estimate) || estimate < 0) estimate = 1.0;
    bool settled = false;
    for (int i = 0; i < 8 && !settled; ++i) {
        if (certified(estimate)) {
            double down = std::nextafter(estimate, 0.0);
            if (!certified(down)) settled = true;
            else estimate = down;
        } else {
            estimate = std::nextafter(estimate, std::numeric_limits<double>::infinity());
            settled = certified(estimate) &&
                      !certified(std::nextafter(estimate, 0.0));
        }
    }
    if (!settled) {
        // pow() landed far off (e.g. underflow); bisect over [0,1]
        double lo = 0.0, hi = 1.0;
        while (std::nextafter(lo, 1.0) < hi) {
            double mid = lo / 2 + hi / 2;
            if (mid <= lo || mid >= hi) mid = std::nextafter(lo, 1.0);
            (certified(mid) ? hi : lo) = mid;
        }
        estimate = hi;
    }
    b.value = estimate;
    return b;
}

MaxDiscrepancy max_discrepancy_over_cis(const FiniteFunction& f, const ProductSpace& space,
                                        std::uint64_t ci_budget, int threads) {
    if (f.domain_size != space.total)
        throw ValidationError("function domain must equal the space size");
    cylinder::CiEnumeration en(space, ci_budget);
    const std::size_t k = space.arity();
    const std::uint32_t range = f.range_size;

    // per-point complementary indices, computed once
    std::vector<std::vector<std::uint64_t>> comp(k, std::vector<std::uint64_t>(space.total));
    for (std::size_t d = 0; d < k; ++d)
        for (std::uint64_t p = 0; p < space.total; ++p) comp[d][p] = space.comp_index(p, d);

    struct Best {
        std::uint64_t num = 0;       // max_y |count_y |B| - |C||, denominator |B||Z|
        std::uint64_t index = 0;     // first CI attaining it
        bool seen = false;
    };
    auto step = [&](Best& acc, std::uint64_t ci_index) {
        std::uint64_t masks_buf[16];
        std::span<std::uint64_t> masks(masks_buf, k);
        en.masks_at(ci_index, masks);
        std::uint64_t counts[64] = {0};
        std::uint64_t size = 0;
        for (std::uint64_t p = 0; p < space.total; ++p) {
            bool inside = true;
            for (std::size_t d = 0; d < k; ++d) {
                if (((masks[d] >> comp[d][p]) & 1) == 0) {
                    inside = false;
                    break;
                }
            }
            if (inside) {
                ++counts[f.values[p]];
                ++size;
            }
        }
        std::uint64_t num = 0;
        for (std::uint32_t y = 0; y < range; ++y) {
            std::uint64_t scaled = counts[y] * range;
            std::uint64_t dev = scaled >= size ? scaled - size : size - scaled;
            num = std::max(num, dev);
        }
        if (!acc.seen || num > acc.num) {
            acc.num = num;
            acc.index = ci_index;
            acc.seen = true;
        }
    };
    auto merge = [](Best& into, const Best& other) {
        if (!into.seen || (other.seen && other.num > into.num)) into = other;
        // chunks are merged left to right, so earlier indices win ties
    };
    if (k > 16 || range > 64) throw ValidationError("sweep supports k <= 16 and |B| <= 64");
    Best best = parallel_index_reduce(en.count(), threads, Best{}, step, merge);

    MaxDiscrepancy result;
    result.gamma = make_rat(Int(best.num), Int(range) * space.total);
    result.witness_index = best.index;
    result.witness = en.at(best.index);
    DiscrepancyResult at_witness =
        strong_discrepancy(f, cylinder::ci_members(space, result.witness));
    result.argmax = at_witness.argmax;
    result.witness_size = at_witness.subset_size;
    if (at_witness.gamma != result.gamma)
        throw InternalError("sweep result disagrees with strong_discrepancy at the witness");
    return result;
}

std::uint64_t cor_threshold(std::uint32_t k, const Rat& alpha) {
    if (k < 2) throw ValidationError("k must be >= 2");
    if (alpha <= 0 || alpha > 1) throw ValidationError("alpha must be in (0,1]");
    const Rat threshold = Rat(Int(k - 1) * (k - 1)) / alpha;
    if (threshold > Rat(std::uint64_t{1} << 32))
        throw ValidationError("threshold (k-1)^2/alpha too large to scan");
    // first candidate strictly above the threshold
    Int floor_int = numerator(threshold) / denominator(threshold);
    std::uint64_t n = floor_int.convert_to<std::uint64_t>() + 1;
    n = std::max<std::uint64_t>(n, 2);
    while (!finfield::is_prime_power(n)) ++n;
    return n;
}

AllValuesReport all_values_attained(const FiniteFunction& f, const ProductSpace& space,
                                    const CylinderIntersection& ci) {
    if (f.domain_size != space.total)
        throw ValidationError("function domain must equal the space size");
    std::vector<bool> hit(f.range_size, false);
    for (std::uint64_t p = 0; p < space.total; ++p)
        if (cylinder::ci_contains(space, ci, p)) hit[f.values[p]] = true;
    AllValuesReport report;
    report.attained = true;
    for (std::uint32_t y = 0; y < f.range_size; ++y) {
        if (!hit[y]) {
            report.attained = false;
            report.missing.push_back(y);
        }
    }
    return report;
}

}  // namespace cyldisc::discrepancy
