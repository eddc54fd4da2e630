#include "cyldisc/boolalg.hpp"

#include "cyldisc/errors.hpp"

#include <map>
#include <string>

namespace cyldisc::boolalg {

Mask full_mask(int n) {
    return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

namespace {

void check_ground(int n) {
    if (n < 1 || n > 63) throw ValidationError("ground-set size must be in [1,63]");
}

void check_subset(int n, Mask s, const char* what) {
    if ((s & ~full_mask(n)) != 0)
        throw ValidationError(std::string(what) + " is not a subset of the ground set");
}

}  // namespace

SubalgebraPartition generate_subalgebra(int n, std::vector<Mask> gens) {
    check_ground(n);
    for (Mask g : gens) check_subset(n, g, "generator");

    SubalgebraPartition alg;
    alg.n = n;
    alg.gens = std::move(gens);
    // signature of a point = membership pattern across generators; scanning
    // points in ground order makes atoms come out sorted by smallest element
    std::map<std::vector<bool>, std::size_t> seen;
    for (int x = 0; x < n; ++x) {
        std::vector<bool> sig(alg.gens.size());
        for (std::size_t i = 0; i < alg.gens.size(); ++i) sig[i] = (alg.gens[i] >> x) & 1;
        auto [it, inserted] = seen.try_emplace(sig, alg.atoms.size());
        if (inserted) alg.atoms.push_back(0);
        alg.atoms[it->second] |= Mask{1} << x;
    }
    return alg;
}

void validate_measure(const AtomMeasure& mu, std::size_t atom_count) {
    if (mu.weights.size() != atom_count)
        throw ValidationError("measure has " + std::to_string(mu.weights.size()) +
                              " weights, algebra has " + std::to_string(atom_count) + " atoms");
    Rat total(0);
    for (std::size_t i = 0; i < mu.weights.size(); ++i) {
        if (mu.weights[i] < 0)
            throw ValidationError("weights[" + std::to_string(i) + "]: negative weight");
        total += mu.weights[i];
    }
    if (total != 1) throw ValidationError("weights must sum to 1, got " + rat_to_string(total));
}

namespace {
ExtensionInterval interval_unchecked(const SubalgebraPartition& alg, const AtomMeasure& mu,
                                     Mask B) {
    ExtensionInterval iv{Rat(0), Rat(0)};
    for (std::size_t i = 0; i < alg.atoms.size(); ++i) {
        Mask a = alg.atoms[i];
        if ((a & B) == a) iv.lo += mu.weights[i];  // atom inside B
        if ((a & B) != 0) iv.hi += mu.weights[i];  // atom meets B
    }
    return iv;
}
}  // namespace

ExtensionInterval extension_interval(const SubalgebraPartition& alg, const AtomMeasure& mu,
                                     Mask B) {
    check_subset(alg.n, B, "B");
    validate_measure(mu, alg.atoms.size());
    return interval_unchecked(alg, mu, B);
}

ExtendedMeasure extend_measure(const SubalgebraPartition& alg, const AtomMeasure& mu, Mask B,
                               const Rat& alpha) {
    ExtensionInterval iv = extension_interval(alg, mu, B);
    if (alpha < iv.lo || alpha > iv.hi)
        throw AlphaOutOfRangeError("alpha " + rat_to_string(alpha) + " outside [" +
                                   rat_to_string(iv.lo) + ", " + rat_to_string(iv.hi) + "]");

    std::vector<Mask> gens = alg.gens;
    gens.push_back(B);
    SubalgebraPartition refined = generate_subalgebra(alg.n, std::move(gens));

    Rat slack = alpha - iv.lo;
    Rat straddle_total(0);
    for (std::size_t i = 0; i < alg.atoms.size(); ++i) {
        Mask a = alg.atoms[i];
        if ((a & B) != 0 && (a & ~B) != 0) straddle_total += mu.weights[i];
    }

    AtomMeasure nu;
    nu.weights.resize(refined.atoms.size());
    for (std::size_t j = 0; j < refined.atoms.size(); ++j) {
        Mask piece = refined.atoms[j];
        // locate the parent atom containing this piece
        std::size_t parent = alg.atoms.size();
        for (std::size_t i = 0; i < alg.atoms.size(); ++i) {
            if ((piece & alg.atoms[i]) == piece) {
                parent = i;
                break;
            }
        }
        if (parent == alg.atoms.size())
            throw InternalError("refined atom not contained in any parent atom");
        Mask a = alg.atoms[parent];
        const Rat& w = mu.weights[parent];
        if ((a & B) == 0 || (a & B) == a) {
            nu.weights[j] = w;  // parent untouched by B; piece == parent
        } else {
            Rat b_share = slack == 0 ? Rat(0) : Rat(slack * w / straddle_total);
            nu.weights[j] = ((piece & B) == piece) ? b_share : Rat(w - b_share);
        }
    }
    return ExtendedMeasure{std::move(refined), std::move(nu)};
}

std::vector<std::size_t> border(const SubalgebraPartition& alg, Mask B) {
    check_subset(alg.n, B, "B");
    Mask comp = full_mask(alg.n) & ~B;
    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < alg.atoms.size(); ++i) {
        if ((alg.atoms[i] & B) != 0 && (alg.atoms[i] & comp) != 0) result.push_back(i);
    }
    return result;
}

Rat measure_of_union(const SubalgebraPartition& alg, const AtomMeasure& mu, Mask A) {
    Rat total(0);
    for (std::size_t i = 0; i < alg.atoms.size(); ++i)
        if ((alg.atoms[i] & A) == alg.atoms[i]) total += mu.weights[i];
    return total;
}

AtomMeasure restrict_to(const SubalgebraPartition& alg, const AtomMeasure& ground_nu) {
    if (ground_nu.weights.size() != static_cast<std::size_t>(alg.n))
        throw ValidationError("ground measure must have one weight per ground point");
    AtomMeasure mu;
    mu.weights.resize(alg.atoms.size(), Rat(0));
    for (std::size_t i = 0; i < alg.atoms.size(); ++i) {
        for (int x = 0; x < alg.n; ++x)
            if ((alg.atoms[i] >> x) & 1) mu.weights[i] += ground_nu.weights[x];
    }
    return mu;
}

DeterminacyReport is_determined(int n, const std::vector<Mask>& gens, const AtomMeasure& ground_nu,
                                int sweep_cap) {
    check_ground(n);
    validate_measure(ground_nu, static_cast<std::size_t>(n));
    SubalgebraPartition alg = generate_subalgebra(n, gens);
    AtomMeasure mu = restrict_to(alg, ground_nu);

    DeterminacyReport report;
    if (n <= sweep_cap) {
        report.exhaustive = true;
        bool all_borders_null = true;
        bool all_intervals_degenerate = true;
        Mask top = full_mask(n);
        for (Mask B = 0;; ++B) {
            Rat border_mass(0);
            for (std::size_t i : border(alg, B)) border_mass += mu.weights[i];
            ExtensionInterval iv = interval_unchecked(alg, mu, B);
            bool a_ok = border_mass == 0;
            bool b_ok = iv.lo == iv.hi;
            if (a_ok != b_ok)
                throw MethodDisagreementError(
                    "border criterion and interval criterion disagree on B=" + std::to_string(B));
            if (!a_ok && all_borders_null) report.counterexample = B;
            all_borders_null = all_borders_null && a_ok;
            all_intervals_degenerate = all_intervals_degenerate && b_ok;
            if (B == top) break;
        }
        report.border_method = all_borders_null;
        report.interval_method = all_intervals_degenerate;
    } else {
        // every positive-mass atom must be a singleton
        bool ok = true;
        Mask counter = 0;
        for (std::size_t i = 0; i < alg.atoms.size() && ok; ++i) {
            Mask a = alg.atoms[i];
            if (mu.weights[i] > 0 && (a & (a - 1)) != 0) {
                ok = false;
                counter = a & (~a + 1);  // lowest point of the offending atom
            }
        }
        report.border_method = ok;
        report.interval_method = ok;
        report.counterexample = ok ? 0 : counter;
    }
    report.determined = report.border_method;
    return report;
}

}  // namespace cyldisc::boolalg
