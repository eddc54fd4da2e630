#pragma once

#include "cyldisc/cylinder.hpp"
#include "cyldisc/finfield.hpp"
#include "cyldisc/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cyldisc::discrepancy {

using cylinder::BitVec;
using cylinder::CylinderIntersection;
using cylinder::ProductSpace;

// f : Z -> B between finite sets, tabulated.
struct FiniteFunction {
    std::uint64_t domain_size = 0;
    std::uint32_t range_size = 0;
    std::vector<std::uint32_t> values;  // one range index per domain point
};

FiniteFunction make_function(std::uint64_t domain_size, std::uint32_t range_size,
                             std::vector<std::uint32_t> values);

// Gamma(f,S) = max_y (1/|Z|) | |f^-1(y) /\ S| - |S|/|B| |, exact; the argmax
// is the smallest maximizing range index. Empty S gives 0.
struct DiscrepancyResult {
    Rat gamma;
    std::uint32_t argmax = 0;
    std::uint64_t subset_size = 0;
    std::vector<std::uint64_t> fiber_counts;
};

DiscrepancyResult strong_discrepancy(const FiniteFunction& f, const BitVec& S);

// Per-value check of |f^-1(y) /\ S| >= |S|/|B| - Gamma |Z|, plus whether the
// density trigger (|S| >= alpha |Z| and Gamma < alpha/|B|) fires and forces
// every fiber to meet S. alpha defaults to |S|/|Z|.
struct FiberBoundReport {
    bool holds = false;  // can only be false if strong_discrepancy is broken
    struct Row {
        std::uint64_t count = 0;
        Rat lower;
        bool ok = false;
    };
    std::vector<Row> rows;
    Rat alpha;
    bool trigger_fires = false;
    bool all_fibers_nonempty = false;
    DiscrepancyResult gamma;
};

FiberBoundReport fiber_bound_check(const FiniteFunction& f, const BitVec& S,
                                   std::optional<Rat> alpha = std::nullopt);

// GIP_{q,s,k} : (F_q^s)^k -> F_q.
struct GipSpec {
    finfield::FieldSpec field;
    std::uint32_t s = 0;  // inner length >= 1
    std::uint32_t k = 0;  // parties >= 2
};

GipSpec make_gip_spec(finfield::FieldSpec field, std::uint32_t s, std::uint32_t k);

// sum over i<s of x[0][i] * x[1][i] * ... * x[k-1][i]
finfield::FieldElement gip_eval(const GipSpec& spec,
                                const std::vector<std::vector<finfield::FieldElement>>& x);

// k factors of size q^s each; point/coordinate conventions follow
// ProductSpace (first factor most significant), and inside a factor the
// first of the s inner elements is most significant.
ProductSpace gip_space(const GipSpec& spec);

// Tabulates GIP over its whole domain; range index = field element index.
// Throws BudgetExceededError when q^(s k) > point_budget.
FiniteFunction gip_function(const GipSpec& spec, std::uint64_t point_budget);

// Upper bound (1-1/q)(1-(1-1/q)^(k-1))^(s 2^(1-k)) on Gamma(GIP, C) over
// cylinder intersections C. `value` is the smallest double whose power-th
// power is >= rhs_power, so it never under-reports the bound. compare_exact
// decides Gamma <= bound without floating point: both sides are raised to
// the 2^(k-1)-th power, where the right-hand side becomes rational.
struct BhkBound {
    double value = 0.0;
    unsigned power = 1;  // 2^(k-1)
    Rat rhs_power;       // (1-1/q)^power * (1-(1-1/q)^(k-1))^s

    bool compare_exact(const Rat& gamma) const { return rat_pow(gamma, power) <= rhs_power; }
};

BhkBound bhk_bound(std::uint64_t q, std::uint32_t s, std::uint32_t k);

// Exact max of Gamma(f, C) over every cylinder intersection C of the space;
// the witness is the first maximizer in enumeration order.
struct MaxDiscrepancy {
    Rat gamma;
    std::uint64_t witness_index = 0;
    CylinderIntersection witness;
    std::uint32_t argmax = 0;
    std::uint64_t witness_size = 0;
};

MaxDiscrepancy max_discrepancy_over_cis(const FiniteFunction& f, const ProductSpace& space,
                                        std::uint64_t ci_budget, int threads = 0);

// Smallest prime power q with q > (k-1)^2 / alpha, exact comparison.
std::uint64_t cor_threshold(std::uint32_t k, const Rat& alpha);

struct AllValuesReport {
    bool attained = false;
    std::vector<std::uint32_t> missing;  // range values with empty fiber in C
};

AllValuesReport all_values_attained(const FiniteFunction& f, const ProductSpace& space,
                                    const CylinderIntersection& ci);

}  // namespace cyldisc::discrepancy
