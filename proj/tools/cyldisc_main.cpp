#include "cyldisc/boolalg.hpp"
#include "cyldisc/cylinder.hpp"
#include "cyldisc/discrepancy.hpp"
#include "cyldisc/errors.hpp"
#include "cyldisc/finfield.hpp"
#include "cyldisc/json_io.hpp"
#include "cyldisc/parallel.hpp"
#include "cyldisc/rational.hpp"
#include "cyldisc/regularity.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using cyldisc::BudgetError;
using cyldisc::InternalError;
using cyldisc::Rat;
using cyldisc::ValidationError;
using cyldisc::io::json;
namespace boolalg = cyldisc::boolalg;
namespace cylinder = cyldisc::cylinder;
namespace discrepancy = cyldisc::discrepancy;
namespace finfield = cyldisc::finfield;
namespace io = cyldisc::io;
namespace regularity = cyldisc::regularity;

struct CommonOpts {
    std::string format = "json";
    std::string output;  // empty = stdout
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = hardware
    std::uint64_t point_budget = std::uint64_t{1} << 20;
    std::uint64_t ci_budget = std::uint64_t{1} << 22;
    std::uint64_t cell_budget = std::uint64_t{1} << 20;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", opts.output, "Output file (default: stdout)");
    cmd->add_option("--seed", opts.seed, "64-bit seed for randomized modes")
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads,
                    "Worker threads (0 = available parallelism); the CYLDISC_THREADS "
                    "environment variable overrides this")
        ->capture_default_str();
    cmd->add_option("--point-budget", opts.point_budget, "Max points to materialize")
        ->capture_default_str();
    cmd->add_option("--ci-budget", opts.ci_budget, "Max cylinder intersections to enumerate")
        ->capture_default_str();
    cmd->add_option("--cell-budget", opts.cell_budget, "Max partition grid cells")
        ->capture_default_str();
}

int effective_threads(const CommonOpts& opts) {
    if (const char* env = std::getenv("CYLDISC_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return opts.threads;
}

json config_json(const std::string& subcommand, const CommonOpts& opts, json params,
                 json inputs = json::object()) {
    return json{{"subcommand", subcommand},
                {"format", opts.format},
                {"seed", opts.seed},
                {"threads", effective_threads(opts)},
                {"budgets",
                 {{"points", opts.point_budget},
                  {"cis", opts.ci_budget},
                  {"cells", opts.cell_budget}}},
                {"params", std::move(params)},
                {"inputs", std::move(inputs)}};
}

std::string format_double_12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

using CsvRow = std::vector<std::pair<std::string, std::string>>;

void emit(const CommonOpts& opts, const json& config, const json& result, const CsvRow& csv) {
    std::string text;
    if (opts.format == "csv") {
        std::string header, row;
        for (const auto& [key, value] : csv) {
            if (!header.empty()) {
                header += ',';
                row += ',';
            }
            header += csv_escape(key);
            row += csv_escape(value);
        }
        header += ",config";
        row += "," + csv_escape(config.dump());
        text = header + "\n" + row + "\n";
    } else {
        json doc{{"config", config}, {"result", result}};
        text = doc.dump(2) + "\n";
    }
    if (opts.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.output, std::ios::binary);
        if (!out) throw ValidationError("cannot open output file '" + opts.output + "'");
        out << text;
    }
}

std::vector<regularity::WeightedMeasure> load_measures(const std::string& path,
                                                       const cylinder::ProductSpace& space) {
    if (path.empty()) return regularity::uniform_measures(space);
    return io::measures_from_json(io::load_json_file(path), space);
}

finfield::FieldSpec field_from_flags(std::uint32_t p, std::uint32_t m,
                                     std::vector<std::uint32_t> poly) {
    if (poly.empty()) {
        if (m != 1)
            throw ValidationError("--poly is required for extension degree m > 1 "
                                  "(no canonical modulus is assumed)");
        poly = {0, 1};  // x, the unique monic degree-1 choice up to constants
    }
    return finfield::make_field(p, m, std::move(poly));
}

json seh_result_json(const regularity::SehResult& r, const cylinder::ProductSpace& space,
                     const std::string& mode) {
    json out{{"found", r.found},
             {"any_homogeneous", r.any_homogeneous},
             {"measure", io::rat_to_json(r.measure)}};
    if (r.any_homogeneous) {
        out["witness"] = io::ci_to_json(r.ci, space);
        out["sign"] = cylinder::homogeneity_name(r.sign);
        out["size"] = r.size;
        if (mode == "exact")
            out["index"] = r.enumeration_index;
        else
            out["restart"] = r.restart;
    }
    return out;
}

// ---- subcommand handlers -------------------------------------------------

void run_bound(const CommonOpts& opts, std::uint64_t q, std::uint32_t s, std::uint32_t k) {
    if (!finfield::is_prime_power(q))
        throw ValidationError("q=" + std::to_string(q) + " is not a prime power");
    discrepancy::BhkBound b = discrepancy::bhk_bound(q, s, k);
    json config = config_json("bound", opts, json{{"q", q}, {"s", s}, {"k", k}});
    json result{{"bound", format_double_12(b.value)},
                {"rounding", "upper"},
                {"power", b.power},
                {"rhs_power", io::rat_to_json(b.rhs_power)}};
    emit(opts, config, result,
         {{"q", std::to_string(q)},
          {"s", std::to_string(s)},
          {"k", std::to_string(k)},
          {"bound_float", format_double_12(b.value)},
          {"rounding", "upper"}});
}

void run_gip_discrepancy(const CommonOpts& opts, std::uint32_t p, std::uint32_t m,
                         std::vector<std::uint32_t> poly, std::uint32_t s, std::uint32_t k,
                         const std::string& mode) {
    finfield::FieldSpec field = field_from_flags(p, m, std::move(poly));
    discrepancy::GipSpec spec = discrepancy::make_gip_spec(field, s, k);
    discrepancy::BhkBound bound = discrepancy::bhk_bound(field.q, s, k);

    json params{{"field", io::field_to_json(field)}, {"s", s}, {"k", k}, {"mode", mode}};
    json config = config_json("gip-discrepancy", opts, std::move(params));
    json result{{"q", field.q}, {"s", s}, {"k", k}, {"mode", mode}};
    CsvRow csv{{"q", std::to_string(field.q)},
               {"s", std::to_string(s)},
               {"k", std::to_string(k)}};

    std::string gamma_num, gamma_den, pass_str, witness_str;
    if (mode != "bound") {
        discrepancy::FiniteFunction f = discrepancy::gip_function(spec, opts.point_budget);
        cylinder::ProductSpace space = discrepancy::gip_space(spec);
        discrepancy::MaxDiscrepancy max = discrepancy::max_discrepancy_over_cis(
            f, space, opts.ci_budget, effective_threads(opts));
        gamma_num = numerator(max.gamma).str();
        gamma_den = denominator(max.gamma).str();
        json witness{{"index", max.witness_index},
                     {"bases", io::ci_to_json(max.witness, space)},
                     {"size", max.witness_size},
                     {"argmax_value", max.argmax}};
        witness_str = witness.dump();
        result["gamma_max"] = io::rat_to_json(max.gamma);
        result["witness"] = std::move(witness);
        if (mode == "check") {
            bool pass = bound.compare_exact(max.gamma);
            result["pass"] = pass;
            pass_str = pass ? "true" : "false";
        }
    }
    result["bound"] = format_double_12(bound.value);
    result["rounding"] = "upper";
    csv.insert(csv.end(), {{"gamma_max_num", gamma_num},
                           {"gamma_max_den", gamma_den},
                           {"bound_float", format_double_12(bound.value)},
                           {"pass", pass_str},
                           {"witness", witness_str}});
    emit(opts, config, result, csv);
}

void run_seh_search(const CommonOpts& opts, const std::string& relation_path,
                    const std::string& measures_path, const std::string& alpha_str,
                    const std::string& mode, std::uint32_t restarts) {
    regularity::Relation rel =
        io::relation_from_json(io::load_json_file(relation_path), opts.point_budget);
    std::vector<regularity::WeightedMeasure> measures = load_measures(measures_path, rel.space);
    Rat alpha = cyldisc::parse_rat(alpha_str, "--alpha");

    regularity::SehResult r;
    if (mode == "exact") {
        r = regularity::seh_search_exact(rel, measures, alpha, opts.ci_budget,
                                         effective_threads(opts));
    } else {
        r = regularity::seh_search_greedy(rel, measures, alpha, opts.seed, restarts);
    }
    json params{{"alpha", alpha_str}, {"mode", mode}, {"restarts", restarts}};
    json inputs{{"relation", relation_path}};
    if (!measures_path.empty()) inputs["measures"] = measures_path;
    json config = config_json("seh-search", opts, std::move(params), std::move(inputs));
    json result = seh_result_json(r, rel.space, mode);
    emit(opts, config, result,
         {{"found", r.found ? "true" : "false"},
          {"measure", cyldisc::rat_to_string(r.measure)},
          {"sign", r.any_homogeneous ? cylinder::homogeneity_name(r.sign) : ""},
          {"size", r.any_homogeneous ? std::to_string(r.size) : ""},
          {"witness", r.any_homogeneous ? io::ci_to_json(r.ci, rel.space).dump() : ""}});
}

void run_regularity_defect(const CommonOpts& opts, const std::string& relation_path,
                           const std::string& partition_path, const std::string& measures_path,
                           bool refine, const std::string& eps_str, std::uint64_t max_blocks) {
    regularity::Relation rel =
        io::relation_from_json(io::load_json_file(relation_path), opts.point_budget);
    std::vector<regularity::WeightedMeasure> measures = load_measures(measures_path, rel.space);

    json inputs{{"relation", relation_path}};
    if (!measures_path.empty()) inputs["measures"] = measures_path;

    if (refine) {
        Rat eps = cyldisc::parse_rat(eps_str, "--eps");
        regularity::RefineResult r = regularity::greedy_refine(
            rel, measures, eps, static_cast<std::size_t>(max_blocks), opts.cell_budget);
        json params{{"mode", "refine"}, {"eps", eps_str}, {"max_blocks", max_blocks}};
        json config =
            config_json("regularity-defect", opts, std::move(params), std::move(inputs));
        json result{{"status", r.success ? "ok" : "budget-exhausted"},
                    {"defect", io::rat_to_json(r.defect)},
                    {"splits", r.splits},
                    {"partition", io::partition_to_json(r.partition, rel.space)}};
        emit(opts, config, result,
             {{"status", r.success ? "ok" : "budget-exhausted"},
              {"defect", cyldisc::rat_to_string(r.defect)},
              {"splits", std::to_string(r.splits)}});
        return;
    }

    if (partition_path.empty()) throw ValidationError("--partition is required without --refine");
    regularity::GridPartition partition =
        io::partition_from_json(io::load_json_file(partition_path), rel.space);
    regularity::DefectResult d =
        regularity::regularity_defect(rel, partition, measures, opts.cell_budget);
    inputs["partition"] = partition_path;
    json config =
        config_json("regularity-defect", opts, json{{"mode", "evaluate"}}, std::move(inputs));
    json cells = json::array();
    for (const auto& cell : d.mixed_cells)
        cells.push_back(json{{"cell", cell.block_ids}, {"mass", io::rat_to_json(cell.mass)}});
    json result{{"defect", io::rat_to_json(d.defect)},
                {"mixed_cell_count", d.mixed_cells.size()},
                {"mixed_cells", std::move(cells)}};
    emit(opts, config, result,
         {{"defect", cyldisc::rat_to_string(d.defect)},
          {"mixed_cells", std::to_string(d.mixed_cells.size())}});
}

void run_measure_extend(const CommonOpts& opts, const std::string& algebra_path,
                        std::vector<std::uint64_t> set_points, const std::string& alpha_str) {
    io::AlgebraInput input = io::algebra_from_json(io::load_json_file(algebra_path));
    boolalg::SubalgebraPartition alg = boolalg::generate_subalgebra(input.n, input.gens);

    boolalg::AtomMeasure mu;
    if (input.weights.size() == alg.atoms.size()) {
        mu.weights = input.weights;
    } else if (input.weights.size() == static_cast<std::size_t>(input.n)) {
        boolalg::AtomMeasure ground{input.weights};
        boolalg::validate_measure(ground, static_cast<std::size_t>(input.n));
        mu = boolalg::restrict_to(alg, ground);
    } else {
        throw ValidationError("algebra.weights: expected " + std::to_string(alg.atoms.size()) +
                              " atom weights or " + std::to_string(input.n) + " ground weights");
    }
    boolalg::validate_measure(mu, alg.atoms.size());

    boolalg::Mask B = 0;
    for (std::uint64_t x : set_points) {
        if (x >= static_cast<std::uint64_t>(input.n))
            throw ValidationError("--set: ground point " + std::to_string(x) + " out of range");
        B |= boolalg::Mask{1} << x;
    }

    boolalg::ExtensionInterval iv = boolalg::extension_interval(alg, mu, B);
    json atoms = json::array();
    for (boolalg::Mask a : alg.atoms) atoms.push_back(io::mask_to_points(a));
    json result{{"set", io::mask_to_points(B)},
                {"atoms", std::move(atoms)},
                {"interval", {{"lo", io::rat_to_json(iv.lo)}, {"hi", io::rat_to_json(iv.hi)}}}};
    std::string nu_b_str;
    if (!alpha_str.empty()) {
        Rat alpha = cyldisc::parse_rat(alpha_str, "--alpha");
        boolalg::ExtendedMeasure ext = boolalg::extend_measure(alg, mu, B, alpha);
        json ext_atoms = json::array();
        json ext_weights = json::array();
        for (std::size_t i = 0; i < ext.algebra.atoms.size(); ++i) {
            ext_atoms.push_back(io::mask_to_points(ext.algebra.atoms[i]));
            ext_weights.push_back(io::rat_to_json(ext.nu.weights[i]));
        }
        Rat nu_b = boolalg::measure_of_union(ext.algebra, ext.nu, B);
        nu_b_str = cyldisc::rat_to_string(nu_b);
        result["extension"] = json{{"atoms", std::move(ext_atoms)},
                                   {"weights", std::move(ext_weights)},
                                   {"nu_B", io::rat_to_json(nu_b)}};
    }
    json params{{"set", set_points}};
    if (!alpha_str.empty()) params["alpha"] = alpha_str;
    json config = config_json("measure-extend", opts, std::move(params),
                              json{{"algebra", algebra_path}});
    emit(opts, config, result,
         {{"lo", cyldisc::rat_to_string(iv.lo)},
          {"hi", cyldisc::rat_to_string(iv.hi)},
          {"alpha", alpha_str},
          {"nu_B", nu_b_str}});
}

void run_determinacy_check(const CommonOpts& opts, const std::string& algebra_path) {
    io::AlgebraInput input = io::algebra_from_json(io::load_json_file(algebra_path));
    boolalg::SubalgebraPartition alg = boolalg::generate_subalgebra(input.n, input.gens);

    boolalg::AtomMeasure ground;
    if (input.weights.size() == static_cast<std::size_t>(input.n)) {
        ground.weights = input.weights;
    } else if (input.weights.size() == alg.atoms.size()) {
        // atom weights: concentrate each atom's mass on its smallest point
        // (the verdict only depends on the restriction to the subalgebra)
        ground.weights.assign(static_cast<std::size_t>(input.n), Rat(0));
        for (std::size_t i = 0; i < alg.atoms.size(); ++i) {
            boolalg::Mask lowest = alg.atoms[i] & (~alg.atoms[i] + 1);
            int x = 0;
            while (((lowest >> x) & 1) == 0) ++x;
            ground.weights[static_cast<std::size_t>(x)] = input.weights[i];
        }
    } else {
        throw ValidationError("algebra.weights: expected " + std::to_string(input.n) +
                              " ground weights or " + std::to_string(alg.atoms.size()) +
                              " atom weights");
    }

    boolalg::DeterminacyReport report = boolalg::is_determined(input.n, input.gens, ground);
    json result{{"determined", report.determined},
                {"border_method", report.border_method},
                {"interval_method", report.interval_method},
                {"exhaustive", report.exhaustive}};
    result["counterexample"] =
        report.determined ? json(nullptr) : io::mask_to_points(report.counterexample);
    json config = config_json("determinacy-check", opts, json::object(),
                              json{{"algebra", algebra_path}});
    emit(opts, config, result,
         {{"determined", report.determined ? "true" : "false"},
          {"border_method", report.border_method ? "true" : "false"},
          {"interval_method", report.interval_method ? "true" : "false"},
          {"exhaustive", report.exhaustive ? "true" : "false"}});
}

void run_gen_relation(const CommonOpts& opts, const std::string& kind, std::uint32_t n,
                      std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> poly,
                      std::uint32_t s, std::uint32_t k) {
    regularity::Relation rel = [&] {
        if (kind == "halfgraph") return regularity::make_halfgraph(n);
        finfield::FieldSpec field = field_from_flags(p, m, std::move(poly));
        if (s == 0) {
            if (k >= 32) throw ValidationError("default inner length 2^k overflows; pass --s");
            s = std::uint32_t{1} << k;
        }
        return regularity::make_gip_zero(discrepancy::make_gip_spec(field, s, k),
                                         opts.point_budget);
    }();
    json params{{"kind", kind}};
    if (kind == "halfgraph") {
        params["n"] = n;
    } else {
        params["s"] = s;
        params["k"] = k;
        params["p"] = p;
        params["m"] = m;
    }
    json config = config_json("gen-relation", opts, std::move(params));
    json doc = io::relation_to_json(rel);
    doc["config"] = std::move(config);
    std::string text = doc.dump(2) + "\n";
    if (opts.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.output, std::ios::binary);
        if (!out) throw ValidationError("cannot open output file '" + opts.output + "'");
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for strong discrepancy of generalized inner products, "
                 "homogeneous cylinder-intersection search, grid regularity defects, and "
                 "finite measure extension"};
    app.require_subcommand(1);
    std::function<void()> runner;

    // bound
    {
        struct Opts {
            CommonOpts common;
            std::uint64_t q = 2;
            std::uint32_t s = 1, k = 2;
        };
        auto o = std::make_shared<Opts>();
        CLI::App* cmd = app.add_subcommand("bound", "Print the GIP discrepancy upper bound");
        add_common(cmd, o->common);
        cmd->add_option("--q", o->q, "Field order (prime power)")->required();
        cmd->add_option("--s", o->s, "Inner length")->required();
        cmd->add_option("--k", o->k, "Parties")->required();
        cmd->callback([&runner, o] {
            runner = [o] { run_bound(o->common, o->q, o->s, o->k); };
        });
    }

    // gip-discrepancy
    {
        struct Opts {
            CommonOpts common;
            std::uint32_t p = 2, m = 1, s = 1, k = 2;
            std::vector<std::uint32_t> poly;
            std::string mode = "check";
        };
        auto o = std::make_shared<Opts>();
        CLI::App* cmd = app.add_subcommand(
            "gip-discrepancy", "Exhaustive max strong discrepancy of GIP over all cylinder "
                               "intersections, against the bound");
        add_common(cmd, o->common);
        cmd->add_option("--p", o->p, "Prime characteristic")->required();
        cmd->add_option("--m", o->m, "Extension degree")->capture_default_str();
        cmd->add_option("--poly", o->poly, "Monic modulus, little-endian coefficients")
            ->delimiter(',');
        cmd->add_option("--s", o->s, "Inner length")->required();
        cmd->add_option("--k", o->k, "Parties")->required();
        cmd->add_option("--mode", o->mode, "exact | bound | check")
            ->check(CLI::IsMember({"exact", "bound", "check"}))
            ->capture_default_str();
        cmd->callback([&runner, o] {
            runner = [o] {
                run_gip_discrepancy(o->common, o->p, o->m, o->poly, o->s, o->k, o->mode);
            };
        });
    }

    // seh-search
    {
        struct Opts {
            CommonOpts common;
            std::string relation, measures, alpha = "1/4", mode = "exact";
            std::uint32_t restarts = 32;
        };
        auto o = std::make_shared<Opts>();
        CLI::App* cmd = app.add_subcommand(
            "seh-search", "Find a homogeneous cylinder intersection of product measure >= alpha");
        add_common(cmd, o->common);
        cmd->add_option("--relation", o->relation, "Relation JSON file")->required();
        cmd->add_option("--measures", o->measures,
                        "Per-factor weights JSON file (default uniform)");
        cmd->add_option("--alpha", o->alpha, "Density threshold, rational")
            ->capture_default_str();
        cmd->add_option("--mode", o->mode, "exact | greedy")
            ->check(CLI::IsMember({"exact", "greedy"}))
            ->capture_default_str();
        cmd->add_option("--restarts", o->restarts, "Greedy restarts")->capture_default_str();
        cmd->callback([&runner, o] {
            runner = [o] {
                run_seh_search(o->common, o->relation, o->measures, o->alpha, o->mode,
                               o->restarts);
            };
        });
    }

    // regularity-defect
    {
        struct Opts {
            CommonOpts common;
            std::string relation, partition, measures, eps = "1/4";
            bool refine = false;
            std::uint64_t max_blocks = 8;
        };
        auto o = std::make_shared<Opts>();
        CLI::App* cmd = app.add_subcommand(
            "regularity-defect",
            "Total product measure of non-homogeneous grid cells (or --refine to search for a "
            "partition below --eps)");
        add_common(cmd, o->common);
        cmd->add_option("--relation", o->relation, "Relation JSON file")->required();
        cmd->add_option("--partition", o->partition, "Grid partition JSON file");
        cmd->add_option("--measures", o->measures,
                        "Per-factor weights JSON file (default uniform)");
        cmd->add_flag("--refine", o->refine, "Greedily refine instead of evaluating a partition");
        cmd->add_option("--eps", o->eps, "Defect target for --refine, rational")
            ->capture_default_str();
        cmd->add_option("--max-blocks", o->max_blocks, "Block budget per direction for --refine")
            ->capture_default_str();
        cmd->callback([&runner, o] {
            runner = [o] {
                run_regularity_defect(o->common, o->relation, o->partition, o->measures,
                                      o->refine, o->eps, o->max_blocks);
            };
        });
    }

    // measure-extend
    {
        struct Opts {
            CommonOpts common;
            std::string algebra, alpha;
            std::vector<std::uint64_t> set_points;
        };
        auto o = std::make_shared<Opts>();
        CLI::App* cmd = app.add_subcommand(
            "measure-extend",
            "Extension interval of a set B, and the extension hitting a chosen alpha");
        add_common(cmd, o->common);
        cmd->add_option("--algebra", o->algebra, "Algebra+measure JSON file")->required();
        cmd->add_option("--set", o->set_points, "Ground points of B, comma separated")
            ->delimiter(',')
            ->required();
        cmd->add_option("--alpha", o->alpha,
                        "Target value for nu(B), rational (omit for the interval only)");
        cmd->callback([&runner, o] {
            runner = [o] { run_measure_extend(o->common, o->algebra, o->set_points, o->alpha); };
        });
    }

    // determinacy-check
    {
        struct Opts {
            CommonOpts common;
            std::string algebra;
        };
        auto o = std::make_shared<Opts>();
        CLI::App* cmd = app.add_subcommand(
            "determinacy-check",
            "Is the measure the unique extension of its restriction to the subalgebra?");
        add_common(cmd, o->common);
        cmd->add_option("--algebra", o->algebra, "Algebra+measure JSON file")->required();
        cmd->callback([&runner, o] {
            runner = [o] { run_determinacy_check(o->common, o->algebra); };
        });
    }

    // gen-relation
    {
        struct Opts {
            CommonOpts common;
            std::string kind = "halfgraph";
            std::uint32_t n = 4, p = 2, m = 1, s = 0, k = 2;
            std::vector<std::uint32_t> poly;
        };
        auto o = std::make_shared<Opts>();
        CLI::App* cmd =
            app.add_subcommand("gen-relation", "Materialize a standard relation as JSON");
        add_common(cmd, o->common);
        cmd->add_option("--kind", o->kind, "halfgraph | gip-zero")
            ->check(CLI::IsMember({"halfgraph", "gip-zero"}))
            ->capture_default_str();
        cmd->add_option("--n", o->n, "Half-graph side size")->capture_default_str();
        cmd->add_option("--p", o->p, "Prime characteristic (gip-zero)")->capture_default_str();
        cmd->add_option("--m", o->m, "Extension degree (gip-zero)")->capture_default_str();
        cmd->add_option("--poly", o->poly, "Monic modulus, little-endian (gip-zero)")
            ->delimiter(',');
        cmd->add_option("--s", o->s, "Inner length (gip-zero; default 2^k)")
            ->capture_default_str();
        cmd->add_option("--k", o->k, "Parties (gip-zero)")->capture_default_str();
        cmd->callback([&runner, o] {
            runner = [o] {
                run_gen_relation(o->common, o->kind, o->n, o->p, o->m, o->poly, o->s, o->k);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        runner();
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
