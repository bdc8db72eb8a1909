#pragma once

#include <string>

#include <json.hpp>

#include "inca/linmaps.hpp"
#include "inca/poset.hpp"
#include "inca/preserver.hpp"

namespace inca::io {

using nlohmann::json;

// Poset file: {"elements":["a","b","c"],"covers":[["a","c"],["b","c"]]}.
// The relation is the closure of the covers.
json poset_to_json(const Poset& p);
PosetPtr poset_from_json(const json& j);

// {"kind":"prime","p":2} or {"kind":"rational"}.
json field_to_json(Field f);
Field field_from_json(const json& j);

// Element file: {"field":{...},"entries":[{"from":"a","to":"c","value":"1"}]};
// omitted pairs are zero, values use the scalar grammar.
json element_to_json(const IncidenceElement& f);
IncidenceElement element_from_json(const json& j, const PosetPtr& poset);

// Map file: {"basis":[["a","a"],...],"field":{...},"matrix":[["1",...],...]},
// row-major; the echoed basis must match the canonical order.
json map_to_json(const LinearMap& m);
LinearMap map_from_json(const json& j, const PosetPtr& poset);

// Cocycle file reuses the element entry layout; reflexive entries are
// optional and must be "1".
json cocycle_to_json(const Cocycle& s);
Cocycle cocycle_from_json(const json& j, const PosetPtr& poset);

json automorphism_to_json(const PosetAutomorphism& a, const Poset& p);

json verification_report_to_json(const VerificationReport& r);
json verdict_to_json(const PreserverVerdict& v, const Poset& p);
json lemma_report_to_json(const LemmaSuiteReport& r);
json census_to_json(const BruteforceCensus& c, const Poset& p);
json classification_to_json(const IdempotentClassification& c, const Poset& p);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace inca::io
