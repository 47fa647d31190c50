#include <catch2/catch_amalgamated.hpp>

#include "solap/cube.hpp"
#include "solap/spatial_values.hpp"

using namespace solap;

namespace {

const char* kSchemaDoc = R"ttl(
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix qb: <http://purl.org/linked-data/cube#> .
@prefix qb4o: <http://purl.org/qb4olap/cubes#> .
@prefix gfs: <http://example.org/gfs#> .

gfs:geoDim qb4o:hasHierarchy gfs:geography .
gfs:geography rdf:type qb4o:Hierarchy ;
    qb4o:inDimension gfs:geoDim ;
    qb4o:hasLevel gfs:parish , gfs:drainageArea .
_:hs rdf:type qb4o:HierarchyStep ;
    qb4o:inHierarchy gfs:geography ;
    qb4o:childLevel gfs:parish ;
    qb4o:parentLevel gfs:drainageArea ;
    qb4o:pcCardinality qb4o:ManyToMany .
gfs:dsd rdf:type qb:DataStructureDefinition ;
    qb:component _:c1 , _:c2 .
_:c1 qb4o:level gfs:parish ; qb4o:cardinality qb4o:ManyToOne .
_:c2 qb:measure gfs:livestockUnit .
)ttl";

const char* kInstanceDoc = R"ttl(
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix qb: <http://purl.org/linked-data/cube#> .
@prefix qb4o: <http://purl.org/qb4olap/cubes#> .
@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
@prefix geo: <http://www.opengis.net/ont/geosparql#> .
@prefix gfs: <http://example.org/gfs#> .
@prefix gfsi: <http://example.org/gfsi#> .

gfsi:parish_8648 rdf:type qb4o:LevelMember ;
    qb4o:memberOf gfs:parish ;
    gfs:parishID 8648 ;
    gfs:parishName "Astrup" ;
    gfs:parishArea "7.9"^^<http://www.w3.org/2001/XMLSchema#double> ;
    gfs:parishPolygon "POLYGON((8.438 56.796, 8.445 56.773, 8.477 56.760, 8.505 56.762, 8.509 56.784, 8.487 56.797, 8.462 56.809, 8.438 56.796))"^^geo:spatialLiteral ;
    skos:broader gfsi:water_3710 , gfsi:water_159 .

gfsi:water_3710 rdf:type qb4o:LevelMember ;
    qb4o:memberOf gfs:drainageArea ;
    gfs:waterPolygon "POLYGON((8.0 56.0, 9.0 56.0, 9.0 57.0, 8.0 57.0, 8.0 56.0))"^^geo:spatialLiteral ,
        "POLYGON((9.0 56.0, 9.5 56.0, 9.5 56.5, 9.0 56.5, 9.0 56.0))"^^geo:spatialLiteral .

gfsi:obs_1 rdf:type qb:Observation ;
    gfs:parish gfsi:parish_8648 ;
    gfs:livestockUnit "92.07"^^<http://www.w3.org/2001/XMLSchema#double> ;
    gfs:farmLocation "POINT (8.46 56.78)"^^geo:spatialLiteral .
)ttl";

}  // namespace

TEST_CASE("extract_schema reads the full hierarchy") {
  CubeSchema schema = extract_schema(parse_rdf(kSchemaDoc));
  REQUIRE(schema.dimensions.count("http://example.org/gfs#geoDim"));
  const HierarchyDef* h = schema.hierarchy("http://example.org/gfs#geography");
  REQUIRE(h);
  CHECK(h->levels.size() == 2);
  REQUIRE(h->steps.size() == 1);
  const HierarchyStepDef& step = h->steps[0];
  CHECK(step.child_level == "http://example.org/gfs#parish");
  CHECK(step.parent_level == "http://example.org/gfs#drainageArea");
  CHECK(step.cardinality == Cardinality::ManyToMany);
  CHECK(step.topo_rels.empty());

  CHECK(schema.dsd.dsd_iri == "http://example.org/gfs#dsd");
  REQUIRE(schema.dsd.components.size() == 2);
  const ComponentDef* level = schema.dsd.find("http://example.org/gfs#parish");
  REQUIRE(level);
  CHECK(level->kind == ComponentDef::Kind::Level);
  CHECK(level->cardinality == Cardinality::ManyToOne);
  const ComponentDef* measure = schema.dsd.find("http://example.org/gfs#livestockUnit");
  REQUIRE(measure);
  CHECK(measure->kind == ComponentDef::Kind::Measure);
}

TEST_CASE("extract_schema on a graph without qb4o produces an empty schema") {
  CubeSchema schema = extract_schema(parse_rdf(
      "<http://a> <http://p> <http://b> .\n", RdfFormat::NTriples));
  CHECK(schema.dimensions.empty());
  CHECK(schema.hierarchies.empty());
}

TEST_CASE("two dimensions can share one hierarchy") {
  Graph g = parse_rdf(R"ttl(
@prefix qb4o: <http://purl.org/qb4olap/cubes#> .
@prefix ex: <http://e/> .
ex:dimA qb4o:hasHierarchy ex:h .
ex:dimB qb4o:hasHierarchy ex:h .
ex:h qb4o:hasLevel ex:l1 , ex:l2 .
)ttl");
  CubeSchema schema = extract_schema(g);
  CHECK(schema.dimensions.size() == 2);
  for (const auto& [_, d] : schema.dimensions)
    CHECK(d.hierarchies.count("http://e/h") == 1);
}

TEST_CASE("hierarchy step without child or parent level is an error") {
  Graph g = parse_rdf(R"ttl(
@prefix qb4o: <http://purl.org/qb4olap/cubes#> .
@prefix ex: <http://e/> .
_:hs qb4o:inHierarchy ex:h ; qb4o:childLevel ex:l1 .
)ttl");
  CHECK_THROWS_AS(extract_schema(g), MissingSchemaElement);
}

TEST_CASE("level_members collects attribute maps") {
  Graph g = parse_rdf(kInstanceDoc);
  auto members = level_members(g, "http://example.org/gfs#parish");
  REQUIRE(members.size() == 1);
  const LevelMember& m = *members.begin();
  CHECK(m.iri == "http://example.org/gfsi#parish_8648");
  // ID, name, area, polygon; rdf:type / memberOf / skos:broader excluded
  CHECK(m.attributes.size() == 4);
  CHECK(m.attributes.count("http://example.org/gfs#parishPolygon") == 1);
  CHECK(m.attributes.count("http://www.w3.org/2004/02/skos/core#broader") == 0);

  CHECK(level_members(g, "http://example.org/gfs#nothere").empty());

  auto water = level_members(g, "http://example.org/gfs#drainageArea");
  REQUIRE(water.size() == 1);
  CHECK(water.begin()
            ->attributes.at("http://example.org/gfs#waterPolygon")
            .size() == 2);
}

TEST_CASE("explicit_rollups lists skos:broader pairs without closure") {
  Graph g = parse_rdf(kInstanceDoc);
  auto rollups = explicit_rollups(g);
  CHECK(rollups.size() == 2);
  CHECK(rollups.count({"http://example.org/gfsi#parish_8648",
                       "http://example.org/gfsi#water_3710"}) == 1);

  Graph chain = parse_rdf(
      "@prefix skos: <http://www.w3.org/2004/02/skos/core#> .\n"
      "@prefix e: <http://e/> .\n"
      "e:a skos:broader e:b . e:b skos:broader e:c .\n");
  CHECK(explicit_rollups(chain).size() == 2);
  CHECK(explicit_rollups(Graph{}).empty());
}

TEST_CASE("fact_members separates level links from measures") {
  Graph g = parse_rdf(kInstanceDoc);
  auto facts = fact_members(g);
  REQUIRE(facts.size() == 1);
  const FactMember& f = *facts.begin();
  CHECK(f.iri == "http://example.org/gfsi#obs_1");
  REQUIRE(f.level_links.size() == 1);
  CHECK(f.level_links.at("http://example.org/gfs#parish") ==
        "http://example.org/gfsi#parish_8648");
  CHECK(f.measures.size() == 2);
  CHECK(f.measures.count("http://example.org/gfs#livestockUnit") == 1);
  CHECK(f.measures.count("http://example.org/gfs#farmLocation") == 1);

  // degenerate observation
  Graph bare = parse_rdf(
      "@prefix qb: <http://purl.org/linked-data/cube#> .\n"
      "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
      "<http://e/o> rdf:type qb:Observation .\n");
  auto bare_facts = fact_members(bare);
  REQUIRE(bare_facts.size() == 1);
  CHECK(bare_facts.begin()->level_links.empty());
  CHECK(bare_facts.begin()->measures.empty());
}

TEST_CASE("prior enrichment output parses back as topo links, not measures") {
  Graph g = parse_rdf(R"ttl(
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix qb: <http://purl.org/linked-data/cube#> .
@prefix qb4so: <https://w3id.org/qb4solap#> .
@prefix e: <http://e/> .
e:o rdf:type qb:Observation ; qb4so:within e:member .
)ttl");
  auto facts = fact_members(g);
  REQUIRE(facts.size() == 1);
  CHECK(facts.begin()->measures.empty());
  CHECK(facts.begin()->level_links.empty());
  CHECK(facts.begin()->topo_links.count({TopoRelation::Within, "http://e/member"}) == 1);
}

TEST_CASE("base and N:M parent levels") {
  CubeSchema schema = extract_schema(parse_rdf(kSchemaDoc));
  auto bases = base_levels(schema);
  CHECK(bases == std::set<std::string>{"http://example.org/gfs#parish"});
  auto nm = nm_parent_levels(schema);
  CHECK(nm == std::set<std::string>{"http://example.org/gfs#drainageArea"});
  // within one hierarchy the two sets are disjoint
  for (const auto& b : bases) CHECK(nm.count(b) == 0);
}

TEST_CASE("three-level chain has a single base level") {
  Graph g = parse_rdf(R"ttl(
@prefix qb4o: <http://purl.org/qb4olap/cubes#> .
@prefix ex: <http://e/> .
ex:h qb4o:hasLevel ex:a , ex:b , ex:c .
_:s1 qb4o:inHierarchy ex:h ; qb4o:childLevel ex:a ; qb4o:parentLevel ex:b ;
     qb4o:pcCardinality qb4o:ManyToOne .
_:s2 qb4o:inHierarchy ex:h ; qb4o:childLevel ex:b ; qb4o:parentLevel ex:c ;
     qb4o:pcCardinality qb4o:ManyToOne .
)ttl");
  CubeSchema schema = extract_schema(g);
  CHECK(base_levels(schema) == std::set<std::string>{"http://e/a"});
  CHECK(nm_parent_levels(schema).empty());
}

TEST_CASE("get_spatial_values groups by predicate and skips non-spatial") {
  Graph g = parse_rdf(kInstanceDoc);
  auto parish = *level_members(g, "http://example.org/gfs#parish").begin();
  auto sets = get_spatial_values(parish);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].predicate == "http://example.org/gfs#parishPolygon");
  CHECK(sets[0].values.kind() == GeomKind::Polygon);
  CHECK(sets[0].values.parts.size() == 1);

  auto water = *level_members(g, "http://example.org/gfs#drainageArea").begin();
  auto water_sets = get_spatial_values(water);
  REQUIRE(water_sets.size() == 1);
  CHECK(water_sets[0].values.parts.size() == 2);

  // facts: spatial measures only
  auto fact = *fact_members(g).begin();
  auto fact_sets = get_spatial_values(fact);
  REQUIRE(fact_sets.size() == 1);
  CHECK(fact_sets[0].predicate == "http://example.org/gfs#farmLocation");
  CHECK(fact_sets[0].values.kind() == GeomKind::Point);
}

TEST_CASE("lenient mode counts malformed spatial literals, strict mode throws") {
  Graph g = parse_rdf(R"ttl(
@prefix qb4o: <http://purl.org/qb4olap/cubes#> .
@prefix geo: <http://www.opengis.net/ont/geosparql#> .
@prefix e: <http://e/> .
e:m qb4o:memberOf e:level ;
    e:geom "POLYGON((broken"^^geo:spatialLiteral ,
           "POLYGON((0 0,1 0,1 1,0 1,0 0))"^^geo:spatialLiteral .
)ttl");
  auto member = *level_members(g, "http://e/level").begin();

  SpatialValueOptions lenient;
  std::size_t skipped = 0;
  lenient.skipped = &skipped;
  auto sets = get_spatial_values(member, lenient);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].values.parts.size() == 1);
  CHECK(skipped == 1);

  SpatialValueOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(get_spatial_values(member, strict), MalformedWkt);
}
