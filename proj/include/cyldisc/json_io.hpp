#pragma once

#include "cyldisc/boolalg.hpp"
#include "cyldisc/discrepancy.hpp"
#include "cyldisc/finfield.hpp"
#include "cyldisc/rational.hpp"
#include "cyldisc/regularity.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cyldisc::io {

using json = nlohmann::json;

// Rationals travel as "num/den" strings in lowest terms.
json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j, const std::string& path);

json field_to_json(const finfield::FieldSpec& spec);
// {"p":2,"m":2,"poly":[1,1,1]}, poly little-endian
finfield::FieldSpec field_from_json(const json& j, const std::string& path = "field");

json gip_to_json(const discrepancy::GipSpec& spec);
discrepancy::GipSpec gip_from_json(const json& j, const std::string& path = "gip");

// Relation files: {"factors":[...],"edges":[[coords],...]} or
// {"kind":"halfgraph","n":N} or {"kind":"gip","field":{...},"s":S,"k":K}
// (the gip kind materializes the GIP zero set).
regularity::Relation relation_from_json(const json& j, std::uint64_t point_budget);
json relation_to_json(const regularity::Relation& rel);

// {"n":4,"gens":[[0,1]],"weights":["1/2","1/2"]}; weights may be per ground
// point (length n) or per atom of the generated subalgebra.
struct AlgebraInput {
    int n = 0;
    std::vector<boolalg::Mask> gens;
    std::vector<Rat> weights;
};
AlgebraInput algebra_from_json(const json& j);
json mask_to_points(boolalg::Mask mask);
boolalg::Mask mask_from_points(const json& j, int n, const std::string& path);

// {"measures":[["1/2","1/2"],...]}, one weight list per factor
std::vector<regularity::WeightedMeasure> measures_from_json(const json& j,
                                                            const cylinder::ProductSpace& space);

// {"directions":[[[0,1],[2,3]],...]}: per direction, blocks listed as
// complementary point indices.
regularity::GridPartition partition_from_json(const json& j,
                                              const cylinder::ProductSpace& space);
json partition_to_json(const regularity::GridPartition& partition,
                       const cylinder::ProductSpace& space);

// Cylinder intersections serialize as one entry per direction: null for a
// full slot, else the base as a list of complementary coordinate tuples.
json ci_to_json(const cylinder::CylinderIntersection& ci, const cylinder::ProductSpace& space);

json load_json_file(const std::string& path);

}  // namespace cyldisc::io
