#pragma once

// End-to-end orchestration: split input triples into schema and instance
// views, run the four enrichment passes, annotate the schema, and produce the
// two output graphs plus a run report. Everything here is deterministic for a
// fixed configuration and input.

#include <chrono>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "solap/cube.hpp"
#include "solap/enrich.hpp"
#include "solap/rdf.hpp"

namespace solap {

namespace pipeline_detail {

inline const std::set<std::string>& schema_predicates() {
  static const std::set<std::string> preds{
      vocab::kQb4oHasHierarchy, vocab::kQb4oInDimension, vocab::kQb4oHasLevel,
      vocab::kQb4oInHierarchy,  vocab::kQb4oChildLevel,  vocab::kQb4oParentLevel,
      vocab::kQb4oPcCardinality, vocab::kQb4soPcTopoRel, vocab::kQbComponent,
      vocab::kQb4oLevel,        vocab::kQbMeasure,       vocab::kQb4oCardinality,
      vocab::kQb4oAggregateFunction, vocab::kQb4soTopologicalRelation};
  return preds;
}

inline const std::set<std::string>& schema_classes() {
  static const std::set<std::string> classes{
      vocab::kQb4oHierarchy, vocab::kQb4oHierarchyStep, vocab::kQb4oLevelProperty,
      vocab::kQbDsd, vocab::kQbDimensionProperty};
  return classes;
}

inline bool is_schema_triple(const Triple& t) {
  if (schema_predicates().count(t.p.value)) return true;
  return t.p.value == vocab::kRdfType && t.o.is_iri() &&
         schema_classes().count(t.o.value);
}

inline std::string local_name(const std::string& iri) {
  auto pos = iri.find_last_of("#/");
  std::string local = pos == std::string::npos ? iri : iri.substr(pos + 1);
  std::string out;
  for (char c : local)
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') out += c;
  return out.empty() ? "n" : out;
}

}  // namespace pipeline_detail

// Splits a merged input graph into its schema and instance views. The split
// is by vocabulary: structural predicates and class assertions go to the
// schema graph, everything else (members, rollups, observations) to the
// instance graph. Both keep the full prefix map.
inline std::pair<Graph, Graph> split_schema_instance(const Graph& merged) {
  Graph schema, instance;
  for (const auto& [pfx, base] : merged.prefixes()) {
    schema.add_prefix(pfx, base);
    instance.add_prefix(pfx, base);
  }
  for (const Triple& t : merged)
    (pipeline_detail::is_schema_triple(t) ? schema : instance).insert(t);
  return {std::move(schema), std::move(instance)};
}

// Serializes an annotated CubeSchema back to triples. Hierarchy-step and
// component blank nodes get labels derived from the IRIs they connect, so
// repeated runs produce byte-identical documents.
inline Graph schema_to_graph(const CubeSchema& schema, const Graph& prefix_source) {
  using pipeline_detail::local_name;
  Graph g;
  for (const auto& [pfx, base] : prefix_source.prefixes()) g.add_prefix(pfx, base);
  g.add_prefix("rdf", vocab::kRdf);
  g.add_prefix("qb", vocab::kQb);
  g.add_prefix("qb4o", vocab::kQb4o);
  g.add_prefix("qb4so", vocab::kQb4so);

  auto I = [](const std::string& v) { return Term::iri(v); };
  for (const auto& [_, d] : schema.dimensions)
    for (const std::string& h : d.hierarchies)
      g.insert(I(d.iri), I(vocab::kQb4oHasHierarchy), I(h));
  for (const auto& [_, h] : schema.hierarchies) {
    g.insert(I(h.iri), I(vocab::kRdfType), I(vocab::kQb4oHierarchy));
    for (const std::string& level : h.levels) {
      g.insert(I(h.iri), I(vocab::kQb4oHasLevel), I(level));
      g.insert(I(level), I(vocab::kRdfType), I(vocab::kQb4oLevelProperty));
    }
    for (const auto& step : h.steps) {
      Term node = Term::blank("hs_" + local_name(step.hierarchy) + "_" +
                              local_name(step.child_level) + "_" +
                              local_name(step.parent_level));
      g.insert(node, I(vocab::kRdfType), I(vocab::kQb4oHierarchyStep));
      g.insert(node, I(vocab::kQb4oInHierarchy), I(step.hierarchy));
      g.insert(node, I(vocab::kQb4oChildLevel), I(step.child_level));
      g.insert(node, I(vocab::kQb4oParentLevel), I(step.parent_level));
      g.insert(node, I(vocab::kQb4oPcCardinality), I(cardinality_iri(step.cardinality)));
      for (TopoRelation r : step.topo_rels)
        g.insert(node, I(vocab::kQb4soPcTopoRel), I(relation_class_iri(r)));
    }
  }
  if (!schema.dsd.dsd_iri.empty() || !schema.dsd.components.empty()) {
    std::string dsd = schema.dsd.dsd_iri;
    Term dsd_term = dsd.empty() ? Term::blank("dsd") : Term::iri(dsd);
    g.insert(dsd_term, I(vocab::kRdfType), I(vocab::kQbDsd));
    for (const auto& comp : schema.dsd.components) {
      Term node = Term::blank("comp_" + local_name(comp.property));
      g.insert(dsd_term, I(vocab::kQbComponent), node);
      if (comp.kind == ComponentDef::Kind::Level)
        g.insert(node, I(vocab::kQb4oLevel), I(comp.property));
      else
        g.insert(node, I(vocab::kQbMeasure), I(comp.property));
      if (comp.cardinality)
        g.insert(node, I(vocab::kQb4oCardinality), I(cardinality_iri(*comp.cardinality)));
      if (comp.aggregate_function)
        g.insert(node, I(vocab::kQb4oAggregateFunction), I(*comp.aggregate_function));
      for (TopoRelation r : comp.topo_rels)
        g.insert(node, I(vocab::kQb4soTopologicalRelation), I(relation_class_iri(r)));
    }
  }
  return g;
}

struct EnrichmentReport {
  // phase -> relation name -> count
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  std::map<std::string, double> timings_s;
  std::size_t skipped = 0;
  std::size_t new_triples = 0;  // instance-graph growth
  std::uint64_t predicate_calls = 0;
};

struct PipelineResult {
  Graph enriched_instance;
  Graph enriched_schema;
  EnrichmentReport report;
  std::set<RelationTriple> relations;  // union across phases
};

struct PipelineOptions {
  EnrichOptions enrich;
  PolygonAgg polygon_agg = PolygonAgg::Union;
  bool run_discover = true;
};

inline PipelineResult run_pipeline(const Graph& merged, PipelineOptions opts = {}) {
  auto [schema_graph, instance] = split_schema_instance(merged);
  CubeSchema schema = extract_schema(schema_graph);

  EnrichStats stats;
  opts.enrich.stats = &stats;

  PipelineResult result;
  SpatialCache cache;
  auto timed = [&](const char* phase, auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    auto out = fn();
    auto t1 = std::chrono::steady_clock::now();
    result.report.timings_s[phase] = std::chrono::duration<double>(t1 - t0).count();
    return out;
  };
  auto record = [&](const char* phase, const std::set<RelationTriple>& rels) {
    auto& bucket = result.report.counts[phase];
    for (const RelationTriple& r : rels) bucket[relation_name(r.rel)]++;
    result.relations.insert(rels.begin(), rels.end());
  };

  cache = timed("extract", [&] { return build_spatial_cache(instance, opts.enrich); });

  EnrichOptions detect_opts = opts.enrich;
  detect_opts.use_index = false;  // detect passes follow explicit links only

  std::set<RelationTriple> hs_relations;
  {
    auto detect = timed("detect_spatial_hs",
                        [&] { return detect_spatial_hs(instance, cache, detect_opts); });
    record("detect_spatial_hs", detect);
    hs_relations.insert(detect.begin(), detect.end());
  }
  if (opts.run_discover) {
    auto discover = timed("discover_spatial_hs", [&] {
      return discover_spatial_hs(schema, cache, opts.enrich);
    });
    record("discover_spatial_hs", discover);
    hs_relations.insert(discover.begin(), discover.end());
  }

  std::set<RelationTriple> fact_relations;
  {
    auto detect = timed("detect_fact_level",
                        [&] { return detect_fact_level(instance, cache, detect_opts); });
    record("detect_fact_level", detect);
    fact_relations.insert(detect.begin(), detect.end());
  }
  if (opts.run_discover) {
    auto discover = timed("discover_fact_level", [&] {
      return discover_fact_level(schema, instance, cache, opts.enrich);
    });
    record("discover_fact_level", discover);
    fact_relations.insert(discover.begin(), discover.end());
  }

  schema = annotate_hierarchy_steps(std::move(schema), hs_relations, cache);
  schema.dsd = define_spatial_fact_dsd(fact_members(instance), fact_relations, cache,
                                       schema.dsd, opts.polygon_agg);

  // enriched instance = input instance plus all relation triples; nothing is
  // removed (skos:broader stays even where a relation was found)
  result.enriched_instance = instance;
  result.enriched_instance.add_prefix("rdf", vocab::kRdf);
  result.enriched_instance.add_prefix("qb", vocab::kQb);
  result.enriched_instance.add_prefix("qb4o", vocab::kQb4o);
  result.enriched_instance.add_prefix("qb4so", vocab::kQb4so);
  std::size_t before = result.enriched_instance.size();
  for (const RelationTriple& r : result.relations)
    result.enriched_instance.insert(Term::iri(r.subject), Term::iri(relation_iri(r.rel)),
                                    Term::iri(r.object));
  result.report.new_triples = result.enriched_instance.size() - before;
  result.enriched_schema = schema_to_graph(schema, schema_graph);
  result.report.skipped = stats.skipped_geometries;
  result.report.predicate_calls = stats.predicate_calls.load();
  return result;
}

inline std::string report_to_json(const EnrichmentReport& report,
                                  const PipelineOptions& opts) {
  std::ostringstream out;
  out << "{\n";
  for (const auto& [phase, rels] : report.counts) {
    out << "  \"" << phase << "\": {";
    bool first = true;
    for (const auto& [rel, count] : rels) {
      out << (first ? "" : ", ") << "\"" << rel << "\": " << count;
      first = false;
    }
    out << "},\n";
  }
  out << "  \"timings_s\": {";
  bool first = true;
  for (const auto& [phase, t] : report.timings_s) {
    out << (first ? "" : ", ") << "\"" << phase << "\": " << t;
    first = false;
  }
  out << "},\n";
  out << "  \"skipped\": " << report.skipped << ",\n";
  out << "  \"new_triples\": " << report.new_triples << ",\n";
  out << "  \"predicate_calls\": " << report.predicate_calls << ",\n";
  out << "  \"mode\": {\"geometry\": \""
      << (opts.enrich.mode == GeoMode::Bbox ? "bbox" : "exact") << "\", \"dispatch\": \""
      << (opts.enrich.dispatch == DispatchMode::Listing8 ? "listing8" : "algorithm2")
      << "\", \"index\": \"" << (opts.enrich.use_index ? "rtree" : "none")
      << "\", \"jobs\": " << opts.enrich.jobs << "}\n";
  out << "}\n";
  return out.str();
}

}  // namespace solap
