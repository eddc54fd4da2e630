#include "cyldisc/json_io.hpp"

#include "cyldisc/errors.hpp"

#include <fstream>

namespace cyldisc::io {

namespace {

void expect(bool ok, const std::string& path, const std::string& why) {
    if (!ok) throw ValidationError(path + ": " + why);
}

bool is_nonneg_int(const json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::uint64_t get_uint(const json& j, const std::string& key, const std::string& path) {
    expect(j.contains(key), path, "missing field '" + key + "'");
    const json& v = j.at(key);
    expect(is_nonneg_int(v), path + "." + key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

}  // namespace

json rat_to_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const json& j, const std::string& path) {
    expect(j.is_string(), path, "expected a rational encoded as a \"num/den\" string");
    return parse_rat(j.get<std::string>(), path);
}

json field_to_json(const finfield::FieldSpec& spec) {
    return json{{"p", spec.p}, {"m", spec.m}, {"poly", spec.poly}};
}

finfield::FieldSpec field_from_json(const json& j, const std::string& path) {
    expect(j.is_object(), path, "expected an object");
    std::uint64_t p = get_uint(j, "p", path);
    std::uint64_t m = get_uint(j, "m", path);
    expect(j.contains("poly") && j.at("poly").is_array(), path, "missing coefficient array 'poly'");
    std::vector<std::uint32_t> poly;
    for (std::size_t i = 0; i < j.at("poly").size(); ++i) {
        const json& c = j.at("poly")[i];
        expect(is_nonneg_int(c), path + ".poly[" + std::to_string(i) + "]",
               "expected a non-negative integer");
        poly.push_back(c.get<std::uint32_t>());
    }
    return finfield::make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m),
                                std::move(poly));
}

json gip_to_json(const discrepancy::GipSpec& spec) {
    return json{{"field", field_to_json(spec.field)}, {"s", spec.s}, {"k", spec.k}};
}

discrepancy::GipSpec gip_from_json(const json& j, const std::string& path) {
    expect(j.is_object() && j.contains("field"), path, "missing 'field'");
    finfield::FieldSpec field = field_from_json(j.at("field"), path + ".field");
    std::uint32_t s = static_cast<std::uint32_t>(get_uint(j, "s", path));
    std::uint32_t k = static_cast<std::uint32_t>(get_uint(j, "k", path));
    return discrepancy::make_gip_spec(std::move(field), s, k);
}

regularity::Relation relation_from_json(const json& j, std::uint64_t point_budget) {
    expect(j.is_object(), "relation", "expected an object");
    std::string kind = j.value("kind", std::string("explicit"));
    if (kind == "halfgraph") {
        return regularity::make_halfgraph(static_cast<std::uint32_t>(get_uint(j, "n", "relation")));
    }
    if (kind == "gip") {
        return regularity::make_gip_zero(gip_from_json(j, "relation"), point_budget);
    }
    expect(kind == "explicit", "relation.kind", "unknown kind '" + kind + "'");
    expect(j.contains("factors") && j.at("factors").is_array(), "relation",
           "missing factor list 'factors'");
    std::vector<std::uint32_t> factors;
    for (std::size_t i = 0; i < j.at("factors").size(); ++i) {
        const json& f = j.at("factors")[i];
        expect(is_nonneg_int(f), "relation.factors[" + std::to_string(i) + "]",
               "expected a positive integer");
        factors.push_back(f.get<std::uint32_t>());
    }
    cylinder::ProductSpace space = cylinder::ProductSpace::make(std::move(factors));
    expect(space.total <= point_budget, "relation",
           "space larger than the point budget " + std::to_string(point_budget));
    cylinder::BitVec edges(space.total);
    expect(j.contains("edges") && j.at("edges").is_array(), "relation",
           "missing edge list 'edges'");
    for (std::size_t i = 0; i < j.at("edges").size(); ++i) {
        const json& e = j.at("edges")[i];
        const std::string path = "relation.edges[" + std::to_string(i) + "]";
        expect(e.is_array() && e.size() == space.arity(), path,
               "expected a coordinate tuple of arity " + std::to_string(space.arity()));
        std::vector<std::uint32_t> coords;
        for (const json& c : e) {
            expect(is_nonneg_int(c), path, "expected non-negative coordinates");
            coords.push_back(c.get<std::uint32_t>());
        }
        try {
            edges.set(space.encode(coords));
        } catch (const ValidationError&) {
            throw ValidationError(path + ": coordinate out of range");
        }
    }
    return cylinder::make_relation(std::move(space), std::move(edges));
}

json relation_to_json(const regularity::Relation& rel) {
    json edges = json::array();
    for (std::uint64_t p = rel.edges.find_first(); p != cylinder::BitVec::npos;
         p = rel.edges.find_next(p))
        edges.push_back(rel.space.decode(p));
    return json{{"factors", rel.space.factors}, {"edges", std::move(edges)}};
}

json mask_to_points(boolalg::Mask mask) {
    json points = json::array();
    for (int x = 0; x < 64; ++x)
        if ((mask >> x) & 1) points.push_back(x);
    return points;
}

boolalg::Mask mask_from_points(const json& j, int n, const std::string& path) {
    expect(j.is_array(), path, "expected a list of ground points");
    boolalg::Mask mask = 0;
    for (const json& p : j) {
        expect(is_nonneg_int(p), path, "expected non-negative ground points");
        std::uint64_t x = p.get<std::uint64_t>();
        expect(x < static_cast<std::uint64_t>(n), path,
               "ground point " + std::to_string(x) + " out of range [0," + std::to_string(n) + ")");
        mask |= boolalg::Mask{1} << x;
    }
    return mask;
}

AlgebraInput algebra_from_json(const json& j) {
    expect(j.is_object(), "algebra", "expected an object");
    AlgebraInput input;
    input.n = static_cast<int>(get_uint(j, "n", "algebra"));
    expect(input.n >= 1 && input.n <= 63, "algebra.n", "ground-set size must be in [1,63]");
    expect(j.contains("gens") && j.at("gens").is_array(), "algebra", "missing generator list 'gens'");
    for (std::size_t i = 0; i < j.at("gens").size(); ++i)
        input.gens.push_back(
            mask_from_points(j.at("gens")[i], input.n, "algebra.gens[" + std::to_string(i) + "]"));
    expect(j.contains("weights") && j.at("weights").is_array(), "algebra",
           "missing weight list 'weights'");
    for (std::size_t i = 0; i < j.at("weights").size(); ++i)
        input.weights.push_back(
            rat_from_json(j.at("weights")[i], "algebra.weights[" + std::to_string(i) + "]"));
    return input;
}

std::vector<regularity::WeightedMeasure> measures_from_json(const json& j,
                                                            const cylinder::ProductSpace& space) {
    expect(j.is_object() && j.contains("measures") && j.at("measures").is_array(), "measures",
           "expected {\"measures\": [[...], ...]}");
    const json& list = j.at("measures");
    expect(list.size() == space.arity(), "measures",
           "need one weight list per factor (" + std::to_string(space.arity()) + ")");
    std::vector<regularity::WeightedMeasure> measures;
    for (std::size_t i = 0; i < list.size(); ++i) {
        regularity::WeightedMeasure m;
        m.factor = i;
        expect(list[i].is_array(), "measures[" + std::to_string(i) + "]", "expected a weight list");
        for (std::size_t w = 0; w < list[i].size(); ++w)
            m.weights.push_back(rat_from_json(
                list[i][w], "measures[" + std::to_string(i) + "][" + std::to_string(w) + "]"));
        measures.push_back(std::move(m));
    }
    regularity::validate_measures(space, measures);
    return measures;
}

regularity::GridPartition partition_from_json(const json& j,
                                              const cylinder::ProductSpace& space) {
    expect(j.is_object() && j.contains("directions") && j.at("directions").is_array(), "partition",
           "expected {\"directions\": [...]}");
    const json& dirs = j.at("directions");
    expect(dirs.size() == space.arity(), "partition.directions",
           "need one partition per direction (" + std::to_string(space.arity()) + ")");
    regularity::GridPartition partition;
    partition.blocks.resize(space.arity());
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        const std::string dpath = "partition.directions[" + std::to_string(d) + "]";
        expect(dirs[d].is_array(), dpath, "expected a list of blocks");
        for (std::size_t b = 0; b < dirs[d].size(); ++b) {
            const json& blk = dirs[d][b];
            const std::string bpath = dpath + "[" + std::to_string(b) + "]";
            expect(blk.is_array(), bpath, "expected a list of complementary point indices");
            cylinder::BitVec bits(space.comp_size(d));
            for (const json& t : blk) {
                expect(is_nonneg_int(t), bpath, "expected non-negative indices");
                std::uint64_t idx = t.get<std::uint64_t>();
                expect(idx < bits.size(), bpath,
                       "index " + std::to_string(idx) + " out of range [0," +
                           std::to_string(bits.size()) + ")");
                bits.set(idx);
            }
            partition.blocks[d].push_back(std::move(bits));
        }
    }
    regularity::validate_partition(space, partition);
    return partition;
}

json partition_to_json(const regularity::GridPartition& partition,
                       const cylinder::ProductSpace& space) {
    json dirs = json::array();
    for (std::size_t d = 0; d < partition.blocks.size(); ++d) {
        json blocks = json::array();
        for (const cylinder::BitVec& blk : partition.blocks[d]) {
            json points = json::array();
            for (std::uint64_t t = blk.find_first(); t != cylinder::BitVec::npos;
                 t = blk.find_next(t))
                points.push_back(t);
            blocks.push_back(std::move(points));
        }
        dirs.push_back(std::move(blocks));
    }
    (void)space;
    return json{{"directions", std::move(dirs)}};
}

json ci_to_json(const cylinder::CylinderIntersection& ci, const cylinder::ProductSpace& space) {
    json bases = json::array();
    for (std::size_t d = 0; d < ci.bases.size(); ++d) {
        if (!ci.bases[d]) {
            bases.push_back(nullptr);
            continue;
        }
        json base = json::array();
        for (std::uint64_t t = ci.bases[d]->find_first(); t != cylinder::BitVec::npos;
             t = ci.bases[d]->find_next(t))
            base.push_back(space.comp_decode(t, d));
        bases.push_back(std::move(base));
    }
    return bases;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + path + "': not valid JSON (" + e.what() + ")");
    }
    return j;
}

}  // namespace cyldisc::io
