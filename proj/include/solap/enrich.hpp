#pragma once

// The four enrichment passes (explicit/discovered hierarchy-step relations,
// explicit/discovered fact-level relations), schema annotation, and the
// fact-DSD redefinition. All passes work on precomputed spatial caches so the
// inner loop is pure geometry; pair evaluation fans out across a worker pool
// and merges into a set, which keeps the output independent of scheduling.

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "solap/cube.hpp"
#include "solap/geometry.hpp"
#include "solap/rtree.hpp"
#include "solap/spatial_values.hpp"

namespace solap {

struct UnknownLevelComponent : std::runtime_error {
  explicit UnknownLevelComponent(const std::string& msg) : std::runtime_error(msg) {}
};

struct RelationTriple {
  std::string subject;
  TopoRelation rel = TopoRelation::Within;
  std::string object;

  friend bool operator<(const RelationTriple& a, const RelationTriple& b) {
    if (a.subject != b.subject) return a.subject < b.subject;
    if (a.object != b.object) return a.object < b.object;
    return a.rel < b.rel;
  }
  friend bool operator==(const RelationTriple& a, const RelationTriple& b) {
    return a.subject == b.subject && a.rel == b.rel && a.object == b.object;
  }
};

struct EnrichStats {
  std::atomic<std::uint64_t> predicate_calls{0};
  std::size_t skipped_geometries = 0;
};

struct EnrichOptions {
  GeoMode mode = GeoMode::Exact;
  DispatchMode dispatch = DispatchMode::Algorithm2;
  bool use_index = false;  // discover passes only
  std::size_t jobs = 1;
  bool strict = false;
  std::set<std::string> datatype_allowlist{vocab::kGeoSpatialLiteral,
                                           vocab::kGeoWktLiteral};
  EnrichStats* stats = nullptr;
};

// Per-member parsed geometry, grouped by attribute predicate.
struct SpatialCache {
  std::map<std::string, std::vector<SpatialAttribute>> level_members;  // iri -> attrs
  std::map<std::string, std::string> member_level;                     // iri -> level
  std::map<std::string, std::vector<SpatialAttribute>> fact_measures;  // iri -> attrs
};

inline SpatialCache build_spatial_cache(const Graph& instance, const EnrichOptions& opts) {
  SpatialCache cache;
  SpatialValueOptions svo;
  svo.datatype_allowlist = opts.datatype_allowlist;
  svo.strict = opts.strict;
  std::size_t skipped = 0;
  svo.skipped = &skipped;

  for (auto& [level, members] : all_level_members(instance)) {
    for (const LevelMember& m : members) {
      cache.member_level[m.iri] = level;
      auto attrs = get_spatial_values(m, svo);
      if (!attrs.empty()) cache.level_members.emplace(m.iri, std::move(attrs));
    }
  }
  for (const FactMember& f : fact_members(instance)) {
    auto attrs = get_spatial_values(f, svo);
    if (!attrs.empty()) cache.fact_measures.emplace(f.iri, std::move(attrs));
  }
  if (opts.stats) opts.stats->skipped_geometries += skipped;
  return cache;
}

namespace enrich_detail {

inline std::optional<TopoRelation> relate_counted(const GeometrySet& child,
                                                  const GeometrySet& parent,
                                                  const EnrichOptions& opts) {
  if (opts.stats)
    opts.stats->predicate_calls.fetch_add(1, std::memory_order_relaxed);
  return relate_spatial_values(child, parent, opts.mode, opts.dispatch);
}

// Relations between one child member and one parent member across every
// spatial-attribute pairing.
inline void relate_members(const std::string& child_iri,
                           const std::vector<SpatialAttribute>& child_attrs,
                           const std::string& parent_iri,
                           const std::vector<SpatialAttribute>& parent_attrs,
                           const EnrichOptions& opts,
                           std::vector<RelationTriple>& out) {
  for (const SpatialAttribute& ca : child_attrs)
    for (const SpatialAttribute& pa : parent_attrs)
      if (auto rel = relate_counted(ca.values, pa.values, opts))
        out.push_back(RelationTriple{child_iri, *rel, parent_iri});
}

// Runs fn(i, local) for i in [0, n) across opts.jobs workers and merges the
// local result vectors into one set.
inline std::set<RelationTriple> parallel_pairs(
    std::size_t n, const EnrichOptions& opts,
    const std::function<void(std::size_t, std::vector<RelationTriple>&)>& fn) {
  std::size_t jobs = std::max<std::size_t>(1, opts.jobs);
  jobs = std::min(jobs, std::max<std::size_t>(1, n));
  if (jobs == 1) {
    std::vector<RelationTriple> local;
    for (std::size_t i = 0; i < n; ++i) fn(i, local);
    return std::set<RelationTriple>(local.begin(), local.end());
  }
  std::vector<std::vector<RelationTriple>> locals(jobs);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += jobs) fn(i, locals[w]);
    });
  }
  for (auto& t : workers) t.join();
  std::set<RelationTriple> out;
  for (auto& local : locals) out.insert(local.begin(), local.end());
  return out;
}

// Union bounding box over every spatial attribute of a member.
inline BBox member_bbox(const std::vector<SpatialAttribute>& attrs) {
  BBox b = bbox_of(attrs.front().values);
  for (std::size_t i = 1; i < attrs.size(); ++i) b.expand(bbox_of(attrs[i].values));
  return b;
}

}  // namespace enrich_detail

// Explicit hierarchy-step relations: evaluates every skos:broader pair whose
// two ends both carry spatial values. Pairs yielding no relation keep their
// skos:broader triple in the output graph (the caller never removes it).
inline std::set<RelationTriple> detect_spatial_hs(const Graph& instance,
                                                  const SpatialCache& cache,
                                                  const EnrichOptions& opts = {}) {
  auto rollup_set = explicit_rollups(instance);
  std::vector<std::pair<std::string, std::string>> rollups(rollup_set.begin(),
                                                           rollup_set.end());
  return enrich_detail::parallel_pairs(
      rollups.size(), opts, [&](std::size_t i, std::vector<RelationTriple>& out) {
        const auto& [child, parent] = rollups[i];
        auto c = cache.level_members.find(child);
        auto p = cache.level_members.find(parent);
        if (c == cache.level_members.end() || p == cache.level_members.end()) return;
        enrich_detail::relate_members(child, c->second, parent, p->second, opts, out);
      });
}

// Discovered hierarchy-step relations: every ordered pair of distinct levels
// within one hierarchy, every cross pair of their members. No skos:broader
// required or consulted.
inline std::set<RelationTriple> discover_spatial_hs(const CubeSchema& schema,
                                                    const SpatialCache& cache,
                                                    const EnrichOptions& opts = {}) {
  // spatial members per level, sorted for determinism
  std::map<std::string, std::vector<const std::pair<const std::string,
                                                    std::vector<SpatialAttribute>>*>>
      by_level;
  for (const auto& entry : cache.level_members) {
    auto lvl = cache.member_level.find(entry.first);
    if (lvl != cache.member_level.end()) by_level[lvl->second].push_back(&entry);
  }

  std::set<RelationTriple> result;
  for (const auto& [_, h] : schema.hierarchies) {
    for (const std::string& child_level : h.levels) {
      auto children = by_level.find(child_level);
      if (children == by_level.end()) continue;
      for (const std::string& parent_level : h.levels) {
        if (child_level == parent_level) continue;
        auto parents = by_level.find(parent_level);
        if (parents == by_level.end()) continue;

        std::optional<BBoxIndex> index;
        std::map<std::string, const std::vector<SpatialAttribute>*> parent_attrs;
        if (opts.use_index) {
          std::vector<BBoxIndex::Entry> entries;
          for (const auto* p : parents->second) {
            entries.push_back(
                BBoxIndex::Entry{p->first, enrich_detail::member_bbox(p->second)});
            parent_attrs[p->first] = &p->second;
          }
          index = BBoxIndex::build(std::move(entries));
        }

        auto pass = enrich_detail::parallel_pairs(
            children->second.size(), opts,
            [&](std::size_t i, std::vector<RelationTriple>& out) {
              const auto* c = children->second[i];
              if (index) {
                BBox probe = enrich_detail::member_bbox(c->second);
                for (const BBoxIndex::Entry* e : index->candidates(probe)) {
                  if (e->iri == c->first) continue;
                  enrich_detail::relate_members(c->first, c->second, e->iri,
                                                *parent_attrs.at(e->iri), opts, out);
                }
              } else {
                for (const auto* p : parents->second) {
                  if (p->first == c->first) continue;
                  enrich_detail::relate_members(c->first, c->second, p->first,
                                                p->second, opts, out);
                }
              }
            });
        result.insert(pass.begin(), pass.end());
      }
    }
  }
  return result;
}

// Explicit fact-level relations: each fact's spatial measures against the
// spatial attributes of its explicitly linked members, measure as child side.
inline std::set<RelationTriple> detect_fact_level(const Graph& instance,
                                                  const SpatialCache& cache,
                                                  const EnrichOptions& opts = {}) {
  std::vector<FactMember> facts(fact_members(instance).begin(),
                                fact_members(instance).end());
  return enrich_detail::parallel_pairs(
      facts.size(), opts, [&](std::size_t i, std::vector<RelationTriple>& out) {
        const FactMember& f = facts[i];
        auto measures = cache.fact_measures.find(f.iri);
        if (measures == cache.fact_measures.end()) return;
        for (const auto& [_, member_iri] : f.level_links) {
          auto m = cache.level_members.find(member_iri);
          if (m == cache.level_members.end()) continue;
          enrich_detail::relate_members(f.iri, measures->second, member_iri,
                                        m->second, opts, out);
        }
      });
}

// Discovered fact-level relations: every fact against every spatial member of
// the target levels (base levels plus N:M parent levels).
inline std::set<RelationTriple> discover_fact_level(const CubeSchema& schema,
                                                    const Graph& instance,
                                                    const SpatialCache& cache,
                                                    const EnrichOptions& opts = {}) {
  std::set<std::string> targets = base_levels(schema);
  for (const std::string& l : nm_parent_levels(schema)) targets.insert(l);

  std::vector<std::pair<std::string, const std::vector<SpatialAttribute>*>> members;
  for (const auto& [iri, attrs] : cache.level_members) {
    auto lvl = cache.member_level.find(iri);
    if (lvl != cache.member_level.end() && targets.count(lvl->second))
      members.emplace_back(iri, &attrs);
  }

  std::optional<BBoxIndex> index;
  std::map<std::string, const std::vector<SpatialAttribute>*> member_attrs;
  if (opts.use_index) {
    std::vector<BBoxIndex::Entry> entries;
    for (const auto& [iri, attrs] : members) {
      entries.push_back(BBoxIndex::Entry{iri, enrich_detail::member_bbox(*attrs)});
      member_attrs[iri] = attrs;
    }
    index = BBoxIndex::build(std::move(entries));
  }

  std::vector<std::pair<std::string, const std::vector<SpatialAttribute>*>> facts;
  for (const auto& [iri, attrs] : cache.fact_measures) facts.emplace_back(iri, &attrs);

  return enrich_detail::parallel_pairs(
      facts.size(), opts, [&](std::size_t i, std::vector<RelationTriple>& out) {
        const auto& [fact_iri, measures] = facts[i];
        if (index) {
          BBox probe = enrich_detail::member_bbox(*measures);
          for (const BBoxIndex::Entry* e : index->candidates(probe))
            enrich_detail::relate_members(fact_iri, *measures, e->iri,
                                          *member_attrs.at(e->iri), opts, out);
        } else {
          for (const auto& [member_iri, attrs] : members)
            enrich_detail::relate_members(fact_iri, *measures, member_iri, *attrs,
                                          opts, out);
        }
      });
}

// Adds the distinct relations observed between a step's child- and
// parent-level members to that step's qb4so:pcTopoRel set.
inline CubeSchema annotate_hierarchy_steps(CubeSchema schema,
                                           const std::set<RelationTriple>& relations,
                                           const SpatialCache& cache) {
  // (child level, parent level) -> relations seen
  std::map<std::pair<std::string, std::string>, std::set<TopoRelation>> seen;
  for (const RelationTriple& r : relations) {
    auto cl = cache.member_level.find(r.subject);
    auto pl = cache.member_level.find(r.object);
    if (cl == cache.member_level.end() || pl == cache.member_level.end()) continue;
    seen[{cl->second, pl->second}].insert(r.rel);
  }
  for (auto& [_, h] : schema.hierarchies)
    for (auto& step : h.steps) {
      auto it = seen.find({step.child_level, step.parent_level});
      if (it != seen.end())
        step.topo_rels.insert(it->second.begin(), it->second.end());
    }
  return schema;
}

enum class PolygonAgg { Union, Centroid, MBR };

inline const char* polygon_agg_iri(PolygonAgg a) {
  switch (a) {
    case PolygonAgg::Union: return vocab::kQb4soUnion;
    case PolygonAgg::Centroid: return vocab::kQb4soCentroid;
    case PolygonAgg::MBR: return vocab::kQb4soMBR;
  }
  return "";
}

// Redefines the fact schema: level components gain one
// qb4so:topologicalRelation per distinct relation observed through an explicit
// level link, and spatial measures gain an aggregate function chosen by
// geometry kind (Point -> ConvexHull, Line -> Union, Polygon -> configurable,
// Union by default).
inline FactSchemaDef define_spatial_fact_dsd(
    const std::set<FactMember>& facts, const std::set<RelationTriple>& fact_relations,
    const SpatialCache& cache, FactSchemaDef dsd,
    PolygonAgg polygon_agg = PolygonAgg::Union) {
  std::map<std::string, std::set<std::pair<TopoRelation, std::string>>> by_fact;
  for (const RelationTriple& r : fact_relations)
    by_fact[r.subject].emplace(r.rel, r.object);

  for (const FactMember& f : facts) {
    std::set<std::pair<TopoRelation, std::string>> links = f.topo_links;
    if (auto it = by_fact.find(f.iri); it != by_fact.end())
      links.insert(it->second.begin(), it->second.end());
    for (const auto& [rel, member] : links) {
      for (const auto& [level_pred, linked] : f.level_links) {
        if (linked != member) continue;
        ComponentDef* comp = dsd.find(level_pred);
        if (!comp)
          throw UnknownLevelComponent("no DSD component for level <" + level_pred +
                                      ">");
        comp->topo_rels.insert(rel);
      }
    }
    auto measures = cache.fact_measures.find(f.iri);
    if (measures == cache.fact_measures.end()) continue;
    for (const SpatialAttribute& sa : measures->second) {
      ComponentDef* comp = dsd.find(sa.predicate);
      if (!comp || comp->kind != ComponentDef::Kind::Measure) continue;
      if (comp->aggregate_function) continue;
      switch (sa.values.kind()) {
        case GeomKind::Point: comp->aggregate_function = vocab::kQb4soConvexHull; break;
        case GeomKind::Line: comp->aggregate_function = vocab::kQb4soUnion; break;
        case GeomKind::Polygon:
          comp->aggregate_function = polygon_agg_iri(polygon_agg);
          break;
      }
    }
  }
  return dsd;
}

}  // namespace solap
