#pragma once

// JSON records for verified objects. Requires nlohmann/json (json.hpp).

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpseq/group.hpp"
#include "dpseq/isbell.hpp"
#include "dpseq/sequencing.hpp"

namespace dpseq {

using Json = nlohmann::json;

inline Json to_json(const FiniteGroup& g, const Certificate& c) {
  Json j;
  j["construction"] = c.construction;
  j["m"] = c.m;
  if (c.l >= 0) j["l"] = c.l;
  if (!c.base.empty()) j["base"] = c.base;
  if (!c.perm.empty()) j["perm"] = c.perm;
  if (!c.derivation.empty()) j["derivation"] = c.derivation;
  if (c.automorphism) j["automorphism"] = {{"k", c.automorphism->k}, {"j", c.automorphism->j}};
  if (c.excluded) j["excluded"] = g.label(*c.excluded);
  if (!c.witness.empty()) j["witness"] = labels_of(g, c.witness);
  if (!c.route.empty()) j["route"] = c.route;
  return j;
}

inline Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.construction = j.at("construction").get<std::string>();
    c.m = j.at("m").get<int>();
    const FiniteGroup g = FiniteGroup::dihedral(c.m);
    c.l = j.value("l", -1);
    c.base = j.value("base", std::string());
    if (j.contains("perm")) c.perm = j["perm"].get<Perm>();
    if (j.contains("derivation")) c.derivation = j["derivation"].get<std::vector<std::string>>();
    if (j.contains("automorphism"))
      c.automorphism = DihedralAutomorphism{j["automorphism"].at("k").get<int>(), j["automorphism"].at("j").get<int>()};
    if (j.contains("excluded")) c.excluded = g.parse(j["excluded"].get<std::string>());
    if (j.contains("witness")) {
      auto labels = j["witness"].get<std::vector<std::string>>();
      c.witness = parse_labels(g, labels);
    }
    c.route = j.value("route", std::string());
    return c;
  } catch (const Json::exception& e) {
    throw IngestionError(std::string("malformed certificate: ") + e.what());
  }
}

/// {"group", "kind", "sequence", "partial_products"[, "certificate"]}
inline Json sequence_record(const FiniteGroup& g, const std::string& kind, const ElementSequence& s,
                            const std::optional<Certificate>& cert = std::nullopt) {
  Json j;
  j["group"] = g.name();
  j["kind"] = kind;
  j["sequence"] = labels_of(g, s.elements);
  j["partial_products"] = labels_of(g, partial_products(g, s).entries);
  if (cert) j["certificate"] = to_json(g, *cert);
  return j;
}

}  // namespace dpseq
