#pragma once

#include "cyldisc/rational.hpp"

#include <cstdint>
#include <vector>

namespace cyldisc::boolalg {

// Subsets of the ground set {0..n-1} as n-bit masks, n <= 63.
using Mask = std::uint64_t;

Mask full_mask(int n);

// Atoms of the subalgebra generated by `gens` inside the power set of
// {0..n-1}: two points share an atom iff no generator separates them.
// Atoms are ordered by their smallest element.
struct SubalgebraPartition {
    int n = 0;
    std::vector<Mask> gens;
    std::vector<Mask> atoms;
};

SubalgebraPartition generate_subalgebra(int n, std::vector<Mask> gens);

// Non-negative rational weights summing to 1, one per atom of some algebra
// (for the full power set the atoms are the singletons in ground order).
struct AtomMeasure {
    std::vector<Rat> weights;
};

// Throws ValidationError unless weights are non-negative, of the given
// length, and sum to exactly 1.
void validate_measure(const AtomMeasure& mu, std::size_t atom_count);

// [lo, hi]: the exact range of values a finitely additive extension of mu
// can assign to B. lo sums the atoms inside B, hi the atoms meeting B.
struct ExtensionInterval {
    Rat lo;
    Rat hi;
};

ExtensionInterval extension_interval(const SubalgebraPartition& alg, const AtomMeasure& mu, Mask B);

struct ExtendedMeasure {
    SubalgebraPartition algebra;  // generated by gens + {B}
    AtomMeasure nu;               // one weight per atom of `algebra`
};

// Extends mu to the algebra generated by adding B, with nu(B) = alpha
// exactly. The slack alpha - lo is split across the straddling atoms'
// B-parts proportionally to the atoms' weights. Throws AlphaOutOfRangeError
// unless lo <= alpha <= hi.
ExtendedMeasure extend_measure(const SubalgebraPartition& alg, const AtomMeasure& mu, Mask B,
                               const Rat& alpha);

// Indices of the atoms meeting both B and its complement.
std::vector<std::size_t> border(const SubalgebraPartition& alg, Mask B);

// Measure of a union of atoms (any subset works; atoms are weighed by
// intersection-nonempty containment of whole atoms only).
Rat measure_of_union(const SubalgebraPartition& alg, const AtomMeasure& mu, Mask A);

// mu = nu restricted to the subalgebra: per-atom sums of ground weights.
AtomMeasure restrict_to(const SubalgebraPartition& alg, const AtomMeasure& ground_nu);

struct DeterminacyReport {
    bool determined = false;
    bool border_method = false;    // all B have border of mu-measure zero
    bool interval_method = false;  // all B have a degenerate extension interval
    bool exhaustive = false;       // swept all 2^n masks (n <= sweep cap)
    Mask counterexample = 0;       // first failing B when not determined
};

// Decides whether a measure nu on the full power set (ground weights) is
// the unique extension of its restriction to the subalgebra generated by
// `gens`. Runs the border-mass criterion and the interval-degeneracy
// criterion side by side; they must agree on every B or the implementation
// is broken (MethodDisagreementError). Ground sets above `sweep_cap` fall
// back to the positive-mass-atom-is-singleton shortcut for both methods.
DeterminacyReport is_determined(int n, const std::vector<Mask>& gens, const AtomMeasure& ground_nu,
                                int sweep_cap = 20);

}  // namespace cyldisc::boolalg
