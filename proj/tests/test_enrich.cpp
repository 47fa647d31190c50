#include <catch2/catch_amalgamated.hpp>

#include "solap/enrich.hpp"
#include "solap/rdf.hpp"

using namespace solap;

namespace {

// Two child squares inside one parent square, a third child straddling the
// parent's edge, one fact point per child.
const char* kSchemaDoc = R"ttl(
@prefix qb: <http://purl.org/linked-data/cube#> .
@prefix qb4o: <http://purl.org/qb4olap/cubes#> .
@prefix ex: <http://e/> .
ex:dim qb4o:hasHierarchy ex:h .
ex:h qb4o:hasLevel ex:child , ex:parent .
_:hs qb4o:inHierarchy ex:h ; qb4o:childLevel ex:child ; qb4o:parentLevel ex:parent ;
     qb4o:pcCardinality qb4o:ManyToMany .
ex:dsd a qb:DataStructureDefinition ; qb:component _:c1 , _:c2 , _:c3 .
_:c1 qb4o:level ex:child .
_:c2 qb:measure ex:amount .
_:c3 qb:measure ex:location .
)ttl";

const char* kInstanceDoc = R"ttl(
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix qb: <http://purl.org/linked-data/cube#> .
@prefix qb4o: <http://purl.org/qb4olap/cubes#> .
@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
@prefix geo: <http://www.opengis.net/ont/geosparql#> .
@prefix ex: <http://e/> .
@prefix i: <http://e/i/> .

i:p1 a qb4o:LevelMember ; qb4o:memberOf ex:parent ;
    ex:geom "POLYGON((0 0,10 0,10 10,0 10,0 0))"^^geo:spatialLiteral .

i:c1 a qb4o:LevelMember ; qb4o:memberOf ex:child ; skos:broader i:p1 ;
    ex:geom "POLYGON((1 1,3 1,3 3,1 3,1 1))"^^geo:spatialLiteral .
i:c2 a qb4o:LevelMember ; qb4o:memberOf ex:child ; skos:broader i:p1 ;
    ex:geom "POLYGON((5 5,7 5,7 7,5 7,5 5))"^^geo:spatialLiteral .
i:c3 a qb4o:LevelMember ; qb4o:memberOf ex:child ; skos:broader i:p1 ;
    ex:geom "POLYGON((8 4,12 4,12 6,8 6,8 4))"^^geo:spatialLiteral .

i:o1 a qb:Observation ; ex:child i:c1 ; ex:amount 5 ;
    ex:location "POINT(2 2)"^^geo:spatialLiteral .
i:o2 a qb:Observation ; ex:child i:c2 ; ex:amount 7 ;
    ex:location "POINT(6 6)"^^geo:spatialLiteral .
i:o3 a qb:Observation ; ex:child i:c3 ; ex:amount 9 ;
    ex:location "POINT(8.5 5)"^^geo:spatialLiteral .
)ttl";

struct Fixture {
  Graph schema_graph = parse_rdf(kSchemaDoc);
  Graph instance = parse_rdf(kInstanceDoc);
  CubeSchema schema = extract_schema(schema_graph);
  EnrichOptions opts;
  SpatialCache cache = build_spatial_cache(instance, opts);
};

RelationTriple rt(const char* s, TopoRelation r, const char* o) {
  return RelationTriple{std::string("http://e/i/") + s, r, std::string("http://e/i/") + o};
}

}  // namespace

TEST_CASE("detect_spatial_hs follows explicit rollups") {
  Fixture f;
  auto rels = detect_spatial_hs(f.instance, f.cache, f.opts);
  CHECK(rels == std::set<RelationTriple>{rt("c1", TopoRelation::Within, "p1"),
                                         rt("c2", TopoRelation::Within, "p1"),
                                         rt("c3", TopoRelation::Intersects, "p1")});
}

TEST_CASE("detect_spatial_hs on a graph without rollups is empty") {
  Fixture f;
  Graph no_rollups;
  for (const Triple& t : f.instance)
    if (t.p.value != vocab::kSkosBroader) no_rollups.insert(t);
  auto cache = build_spatial_cache(no_rollups, f.opts);
  CHECK(detect_spatial_hs(no_rollups, cache, f.opts).empty());
}

TEST_CASE("discover_spatial_hs tests all cross-level pairs both ways") {
  Fixture f;
  auto rels = discover_spatial_hs(f.schema, f.cache, f.opts);
  // forward: children against the parent
  CHECK(rels.count(rt("c1", TopoRelation::Within, "p1")) == 1);
  CHECK(rels.count(rt("c2", TopoRelation::Within, "p1")) == 1);
  CHECK(rels.count(rt("c3", TopoRelation::Intersects, "p1")) == 1);
  // reverse: the parent polygon intersects each child (containment or crossing)
  CHECK(rels.count(rt("p1", TopoRelation::Intersects, "c1")) == 1);
  CHECK(rels.count(rt("p1", TopoRelation::Intersects, "c2")) == 1);
  CHECK(rels.count(rt("p1", TopoRelation::Intersects, "c3")) == 1);
  CHECK(rels.size() == 6);

  // subset law: detect output is a subset of discover output
  for (const auto& r : detect_spatial_hs(f.instance, f.cache, f.opts))
    CHECK(rels.count(r) == 1);
}

TEST_CASE("discover with index matches discover without") {
  Fixture f;
  EnrichOptions indexed = f.opts;
  indexed.use_index = true;
  CHECK(discover_spatial_hs(f.schema, f.cache, indexed) ==
        discover_spatial_hs(f.schema, f.cache, f.opts));
  CHECK(discover_fact_level(f.schema, f.instance, f.cache, indexed) ==
        discover_fact_level(f.schema, f.instance, f.cache, f.opts));
}

TEST_CASE("parallel evaluation matches sequential") {
  Fixture f;
  EnrichOptions parallel = f.opts;
  parallel.jobs = 4;
  CHECK(discover_spatial_hs(f.schema, f.cache, parallel) ==
        discover_spatial_hs(f.schema, f.cache, f.opts));
  CHECK(detect_fact_level(f.instance, f.cache, parallel) ==
        detect_fact_level(f.instance, f.cache, f.opts));
}

TEST_CASE("detect_fact_level relates measures to linked members") {
  Fixture f;
  auto rels = detect_fact_level(f.instance, f.cache, f.opts);
  CHECK(rels == std::set<RelationTriple>{rt("o1", TopoRelation::Within, "c1"),
                                         rt("o2", TopoRelation::Within, "c2"),
                                         rt("o3", TopoRelation::Within, "c3")});
}

TEST_CASE("discover_fact_level covers base and N:M parent levels") {
  Fixture f;
  auto rels = discover_fact_level(f.schema, f.instance, f.cache, f.opts);
  // facts hit their own cell plus the N:M parent polygon
  CHECK(rels.count(rt("o1", TopoRelation::Within, "c1")) == 1);
  CHECK(rels.count(rt("o1", TopoRelation::Within, "p1")) == 1);
  CHECK(rels.count(rt("o2", TopoRelation::Within, "p1")) == 1);
  CHECK(rels.count(rt("o3", TopoRelation::Within, "c3")) == 1);
  CHECK(rels.count(rt("o3", TopoRelation::Within, "p1")) == 1);
  // subset law for the fact side
  for (const auto& r : detect_fact_level(f.instance, f.cache, f.opts))
    CHECK(rels.count(r) == 1);
}

TEST_CASE("predicate call counting") {
  Fixture f;
  EnrichStats stats;
  EnrichOptions counted = f.opts;
  counted.stats = &stats;
  detect_spatial_hs(f.instance, f.cache, counted);
  CHECK(stats.predicate_calls.load() == 3);  // one per rollup pair
}

TEST_CASE("annotate_hierarchy_steps collects distinct relations per step") {
  Fixture f;
  auto detect = detect_spatial_hs(f.instance, f.cache, f.opts);
  CubeSchema annotated = annotate_hierarchy_steps(f.schema, detect, f.cache);
  const HierarchyDef* h = annotated.hierarchy("http://e/h");
  REQUIRE(h);
  REQUIRE(h->steps.size() == 1);
  CHECK(h->steps[0].topo_rels ==
        std::set<TopoRelation>{TopoRelation::Within, TopoRelation::Intersects});

  // no relations: step unchanged
  CubeSchema untouched = annotate_hierarchy_steps(f.schema, {}, f.cache);
  CHECK(untouched.hierarchy("http://e/h")->steps[0].topo_rels.empty());
}

TEST_CASE("define_spatial_fact_dsd annotates components and measures") {
  Fixture f;
  auto fact_rels = detect_fact_level(f.instance, f.cache, f.opts);
  FactSchemaDef dsd = define_spatial_fact_dsd(fact_members(f.instance), fact_rels,
                                              f.cache, f.schema.dsd);
  const ComponentDef* level = dsd.find("http://e/child");
  REQUIRE(level);
  CHECK(level->topo_rels == std::set<TopoRelation>{TopoRelation::Within});
  const ComponentDef* location = dsd.find("http://e/location");
  REQUIRE(location);
  REQUIRE(location->aggregate_function.has_value());
  CHECK(*location->aggregate_function == vocab::kQb4soConvexHull);  // point measure
  const ComponentDef* amount = dsd.find("http://e/amount");
  REQUIRE(amount);
  CHECK_FALSE(amount->aggregate_function.has_value());  // numeric measure untouched

  // no spatial relations and no spatial measures: unchanged
  FactSchemaDef plain = define_spatial_fact_dsd({}, {}, f.cache, f.schema.dsd);
  CHECK(plain.find("http://e/child")->topo_rels.empty());
}

TEST_CASE("relations through a level link missing from the DSD are an error") {
  Fixture f;
  FactSchemaDef dsd_without_level = f.schema.dsd;
  dsd_without_level.components.erase(dsd_without_level.components.begin(),
                                     dsd_without_level.components.begin() + 1);
  REQUIRE(dsd_without_level.find("http://e/child") == nullptr);
  auto fact_rels = detect_fact_level(f.instance, f.cache, f.opts);
  CHECK_THROWS_AS(define_spatial_fact_dsd(fact_members(f.instance), fact_rels, f.cache,
                                          dsd_without_level),
                  UnknownLevelComponent);
}

TEST_CASE("polygon measures honor the aggregate choice") {
  Graph inst = parse_rdf(R"ttl(
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix qb: <http://purl.org/linked-data/cube#> .
@prefix geo: <http://www.opengis.net/ont/geosparql#> .
@prefix ex: <http://e/> .
<http://e/i/o> a qb:Observation ;
    ex:footprint "POLYGON((0 0,1 0,1 1,0 1,0 0))"^^geo:spatialLiteral .
)ttl");
  EnrichOptions opts;
  SpatialCache cache = build_spatial_cache(inst, opts);
  FactSchemaDef dsd;
  ComponentDef comp;
  comp.kind = ComponentDef::Kind::Measure;
  comp.property = "http://e/footprint";
  dsd.components.push_back(comp);

  auto facts = fact_members(inst);
  CHECK(*define_spatial_fact_dsd(facts, {}, cache, dsd, PolygonAgg::Union)
             .find("http://e/footprint")
             ->aggregate_function == vocab::kQb4soUnion);
  CHECK(*define_spatial_fact_dsd(facts, {}, cache, dsd, PolygonAgg::Centroid)
             .find("http://e/footprint")
             ->aggregate_function == vocab::kQb4soCentroid);
  CHECK(*define_spatial_fact_dsd(facts, {}, cache, dsd, PolygonAgg::MBR)
             .find("http://e/footprint")
             ->aggregate_function == vocab::kQb4soMBR);
}
