#include "inca/io.hpp"

#include <fstream>

namespace inca::io {

namespace {

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(Errc::BadFile, std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace

json poset_to_json(const Poset& p) {
  json j;
  j["elements"] = p.elements();
  json covers = json::array();
  for (const auto& [a, b] : p.cover_pairs()) covers.push_back({p.name(a), p.name(b)});
  j["covers"] = covers;
  return j;
}

PosetPtr poset_from_json(const json& j) {
  std::vector<std::string> elements = require(j, "elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& c : require(j, "covers")) {
    if (!c.is_array() || c.size() != 2) fail(Errc::BadFile, "cover pairs must be [from, to]");
    covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
  }
  return make_poset(std::move(elements), covers);
}

json field_to_json(Field f) {
  json j;
  if (f.is_rational()) {
    j["kind"] = "rational";
  } else {
    j["kind"] = "prime";
    j["p"] = f.modulus();
  }
  return j;
}

Field field_from_json(const json& j) {
  std::string kind = require(j, "kind").get<std::string>();
  if (kind == "rational") return Field::rationals();
  if (kind == "prime") return Field::prime(require(j, "p").get<std::uint32_t>());
  fail(Errc::BadFile, "unknown field kind '" + kind + "'");
}

json element_to_json(const IncidenceElement& f) {
  json j;
  j["field"] = field_to_json(f.field());
  json entries = json::array();
  for (const auto& [pair, value] : f.entries()) {
    json e;
    e["from"] = f.poset()->name(pair.first);
    e["to"] = f.poset()->name(pair.second);
    e["value"] = value.to_string();
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

IncidenceElement element_from_json(const json& j, const PosetPtr& poset) {
  Field field = field_from_json(require(j, "field"));
  IncidenceElement f(poset, field);
  for (const auto& e : require(j, "entries")) {
    int u = poset->index_of(require(e, "from").get<std::string>());
    int v = poset->index_of(require(e, "to").get<std::string>());
    Scalar value = Scalar::parse(field, require(e, "value").get<std::string>());
    f = f.with(u, v, value);
  }
  return f;
}

json map_to_json(const LinearMap& m) {
  json j;
  const BasisOrder& order = m.order();
  json basis = json::array();
  for (int k = 0; k < order.dim(); ++k) {
    const auto& [u, v] = order.pair_at(k);
    basis.push_back({order.poset()->name(u), order.poset()->name(v)});
  }
  j["basis"] = basis;
  j["field"] = field_to_json(m.field());
  json matrix = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(m.at(r, c).to_string());
    matrix.push_back(row);
  }
  j["matrix"] = matrix;
  return j;
}

LinearMap map_from_json(const json& j, const PosetPtr& poset) {
  BasisOrder order(poset);
  const json& basis = require(j, "basis");
  if (static_cast<int>(basis.size()) != order.dim())
    fail(Errc::BadFile, "basis size does not match the poset");
  for (int k = 0; k < order.dim(); ++k) {
    const auto& [u, v] = order.pair_at(k);
    if (basis[static_cast<std::size_t>(k)][0].get<std::string>() != poset->name(u) ||
        basis[static_cast<std::size_t>(k)][1].get<std::string>() != poset->name(v))
      fail(Errc::BadFile, "echoed basis does not match the canonical order at position " +
                              std::to_string(k));
  }
  Field field = field_from_json(require(j, "field"));
  LinearMap m(order, field);
  const json& matrix = require(j, "matrix");
  if (static_cast<int>(matrix.size()) != order.dim()) fail(Errc::BadFile, "matrix row count");
  for (int r = 0; r < order.dim(); ++r) {
    const json& row = matrix[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != order.dim()) fail(Errc::BadFile, "matrix column count");
    for (int c = 0; c < order.dim(); ++c)
      m.set(r, c, Scalar::parse(field, row[static_cast<std::size_t>(c)].get<std::string>()));
  }
  return m;
}

json cocycle_to_json(const Cocycle& s) {
  json j;
  j["field"] = field_to_json(s.field());
  json entries = json::array();
  for (const auto& [pair, value] : s.values()) {
    if (pair.first == pair.second) continue;
    json e;
    e["from"] = s.poset()->name(pair.first);
    e["to"] = s.poset()->name(pair.second);
    e["value"] = value.to_string();
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

Cocycle cocycle_from_json(const json& j, const PosetPtr& poset) {
  Field field = field_from_json(require(j, "field"));
  std::map<std::pair<int, int>, Scalar> values;
  for (const auto& e : require(j, "entries")) {
    int u = poset->index_of(require(e, "from").get<std::string>());
    int v = poset->index_of(require(e, "to").get<std::string>());
    values.emplace(std::make_pair(u, v),
                   Scalar::parse(field, require(e, "value").get<std::string>()));
  }
  return Cocycle::validate(poset, field, values);
}

json automorphism_to_json(const PosetAutomorphism& a, const Poset& p) {
  json j = json::object();
  for (int z = 0; z < p.size(); ++z) j[p.name(z)] = p.name(a(z));
  return j;
}

json verification_report_to_json(const VerificationReport& r) {
  json j;
  if (r.mode.kind == VerifyModeKind::exhaustive) {
    j["mode"] = "exhaustive";
  } else {
    j["mode"] = "sampled";
    j["n"] = r.mode.n;
    j["seed"] = r.mode.seed;
  }
  j["holds"] = r.holds;
  j["pairs_checked"] = r.pairs_checked;
  if (r.counterexample) {
    j["counterexample"] = {{"f", element_to_json(r.counterexample->first)},
                           {"g", element_to_json(r.counterexample->second)}};
  }
  return j;
}

json verdict_to_json(const PreserverVerdict& v, const Poset& p) {
  json j;
  j["exists"] = v.exists;
  if (v.obstruction) {
    if (v.obstruction->kind == Obstruction::Kind::pair_count) {
      j["obstruction"] = {{"pair_count", {v.obstruction->count_without_x,
                                          v.obstruction->count_without_y}}};
    } else {
      j["obstruction"] = "no_orbit_automorphism";
    }
  }
  if (v.witness) {
    json w;
    w["map"] = map_to_json(*v.witness);
    if (v.witness_lambda) w["lambda"] = automorphism_to_json(*v.witness_lambda, p);
    j["witness"] = w;
  }
  if (v.verification) j["verification"] = verification_report_to_json(*v.verification);
  return j;
}

json lemma_report_to_json(const LemmaSuiteReport& r) {
  json j;
  j["all_pass"] = r.all_pass;
  json checks = json::array();
  for (const LemmaCheck& c : r.checks) {
    json e;
    e["id"] = c.id;
    e["pass"] = c.pass;
    if (!c.pass) e["detail"] = c.detail;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

json census_to_json(const BruteforceCensus& c, const Poset& p) {
  json j;
  j["total"] = c.total;
  j["pruned"] = c.pruned;
  j["fully_checked"] = c.fully_checked;
  j["preservers_found"] = c.preservers_found;
  j["all_pm_automorphisms"] = c.all_pm_automorphisms;
  j["all_lambda_map_x_to_y"] = c.all_lambda_map_x_to_y;
  j["connected"] = c.connected;
  if (!c.connected) j["scope"] = "outside theorem scope";
  j["audit"] = {{"sampled", c.audit_sampled}, {"violations", c.audit_violations}};
  json list = json::array();
  for (const FoundPreserver& f : c.preservers) {
    json e;
    e["map"] = map_to_json(f.map);
    e["verdict"] = pm_verdict_name(f.verdict);
    if (f.lambda) e["lambda"] = automorphism_to_json(*f.lambda, p);
    list.push_back(e);
  }
  j["preservers"] = list;
  return j;
}

json classification_to_json(const IdempotentClassification& c, const Poset& p) {
  json j;
  switch (c.kind) {
    case IdempotentKind::not_idempotent: j["verdict"] = "not_idempotent"; break;
    case IdempotentKind::idempotent_non_primitive: j["verdict"] = "idempotent_non_primitive"; break;
    case IdempotentKind::primitive: j["verdict"] = "primitive"; break;
  }
  if (c.base) j["base"] = p.name(*c.base);
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadFile, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(Errc::BadFile, path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::BadFile, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace inca::io
