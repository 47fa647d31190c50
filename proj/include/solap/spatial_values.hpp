#pragma once

// Bridges the cube model and the geometry layer: pulls WKT-typed attribute or
// measure values out of a member and groups them per predicate into
// GeometrySets (one set per spatial attribute, multi-part when a predicate has
// several geometry objects).

#include <set>
#include <string>
#include <vector>

#include "solap/cube.hpp"
#include "solap/geometry.hpp"
#include "solap/vocab.hpp"

namespace solap {

struct SpatialValueOptions {
  std::set<std::string> datatype_allowlist{vocab::kGeoSpatialLiteral,
                                           vocab::kGeoWktLiteral};
  bool strict = false;
  // counts literals that carried a spatial datatype but failed to parse
  std::size_t* skipped = nullptr;
};

// One GeometrySet per attribute predicate whose values are spatial literals.
// The owner is the member IRI; the attribute predicate rides along so callers
// can report which pairing produced a relation.
struct SpatialAttribute {
  std::string predicate;
  GeometrySet values;
};

inline std::vector<SpatialAttribute> get_spatial_values(
    const std::string& owner_iri,
    const std::map<std::string, std::vector<Term>>& attributes,
    const SpatialValueOptions& opts = {}) {
  std::vector<SpatialAttribute> out;
  for (const auto& [predicate, terms] : attributes) {
    GeometrySet set;
    set.owner = owner_iri;
    for (const Term& t : terms) {
      if (!t.is_literal()) continue;
      if (!opts.datatype_allowlist.count(t.datatype)) continue;
      try {
        Geometry g = parse_wkt(t.value);
        if (!set.parts.empty() && set.parts.front().kind != g.kind) {
          if (opts.strict)
            throw MalformedWkt("mixed geometry kinds under <" + predicate + "> of <" +
                               owner_iri + ">");
          if (opts.skipped) ++*opts.skipped;
          continue;
        }
        set.parts.push_back(std::move(g));
      } catch (const MalformedWkt&) {
        if (opts.strict) throw;
        if (opts.skipped) ++*opts.skipped;
      } catch (const UnsupportedGeometry&) {
        if (opts.strict) throw;
        if (opts.skipped) ++*opts.skipped;
      }
    }
    if (!set.parts.empty()) out.push_back(SpatialAttribute{predicate, std::move(set)});
  }
  return out;
}

inline std::vector<SpatialAttribute> get_spatial_values(
    const LevelMember& m, const SpatialValueOptions& opts = {}) {
  return get_spatial_values(m.iri, m.attributes, opts);
}

// For facts the candidate geometry carriers are the measures.
inline std::vector<SpatialAttribute> get_spatial_values(
    const FactMember& f, const SpatialValueOptions& opts = {}) {
  return get_spatial_values(f.iri, f.measures, opts);
}

}  // namespace solap
