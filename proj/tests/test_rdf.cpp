#include <catch2/catch_amalgamated.hpp>

#include "solap/rdf.hpp"

using namespace solap;

namespace {

const char* kParishDoc = R"ttl(
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix qb4o: <http://purl.org/qb4olap/cubes#> .
@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
@prefix geo: <http://www.opengis.net/ont/geosparql#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix gfs: <http://example.org/gfs#> .
@prefix gfsi: <http://example.org/gfsi#> .

gfsi:parish_8648 rdf:type qb4o:LevelMember ;
    qb4o:memberOf gfs:parish ;
    gfs:parishID 8648 ;
    gfs:parishName "Astrup" ;
    gfs:parishArea "7.9"^^xsd:double ;
    gfs:parishPolygon "POLYGON((8.438 56.796, 8.445 56.773, 8.477 56.760, 8.505 56.762, 8.509 56.784, 8.487 56.797, 8.462 56.809, 8.438 56.796))"^^geo:spatialLiteral ;
    skos:broader gfsi:water_3710 , gfsi:water_159 .
)ttl";

}  // namespace

TEST_CASE("turtle parsing handles prefixes, lists, and typed literals") {
  Graph g = parse_rdf(kParishDoc);
  // one rdf:type, one memberOf, ID, name, area, polygon, two skos:broader
  CHECK(g.size() == 8);

  auto member_of = g.match(std::nullopt,
                           Term::iri("http://purl.org/qb4olap/cubes#memberOf"),
                           Term::iri("http://example.org/gfs#parish"));
  REQUIRE(member_of.size() == 1);
  CHECK(member_of[0].s == Term::iri("http://example.org/gfsi#parish_8648"));

  auto broader = g.match(std::nullopt,
                         Term::iri("http://www.w3.org/2004/02/skos/core#broader"),
                         std::nullopt);
  CHECK(broader.size() == 2);

  auto id = g.match(std::nullopt, Term::iri("http://example.org/gfs#parishID"),
                    std::nullopt);
  REQUIRE(id.size() == 1);
  CHECK(id[0].o == Term::literal("8648", vocab::kXsdInteger));
}

TEST_CASE("empty document parses to empty graph") {
  CHECK(parse_rdf("").empty());
  CHECK(parse_rdf("# only a comment\n").empty());
}

TEST_CASE("duplicate triples collapse to one") {
  Graph g = parse_rdf("<http://a> <http://p> <http://b> .\n"
                      "<http://a> <http://p> <http://b> .\n",
                      RdfFormat::NTriples);
  CHECK(g.size() == 1);
}

TEST_CASE("match with all positions bound returns exactly that triple") {
  Graph g = parse_rdf(kParishDoc);
  auto rs = g.match(Term::iri("http://example.org/gfsi#parish_8648"),
                    Term::iri(vocab::kRdfType),
                    Term::iri("http://purl.org/qb4olap/cubes#LevelMember"));
  CHECK(rs.size() == 1);
  CHECK(g.match(std::nullopt, std::nullopt, std::nullopt).size() == g.size());
  CHECK(Graph{}.match(std::nullopt, std::nullopt, std::nullopt).empty());
}

TEST_CASE("round trip is isomorphic in both formats") {
  Graph g = parse_rdf(kParishDoc);
  for (RdfFormat fmt : {RdfFormat::Turtle, RdfFormat::NTriples}) {
    Graph back = parse_rdf(serialize_rdf(g, fmt), fmt);
    CHECK(graphs_isomorphic(g, back));
    CHECK(back.triples() == g.triples());
  }
}

TEST_CASE("serialization is deterministic") {
  Graph g = parse_rdf(kParishDoc);
  CHECK(serialize_rdf(g) == serialize_rdf(g));
  // re-parsing and re-serializing is a fixed point
  Graph back = parse_rdf(serialize_rdf(g));
  CHECK(serialize_rdf(back) == serialize_rdf(g));
}

TEST_CASE("empty graph serializes to prefix declarations only") {
  Graph g;
  g.add_prefix("ex", "http://example.org/");
  std::string out = serialize_rdf(g);
  CHECK(out == "@prefix ex: <http://example.org/> .\n");
}

TEST_CASE("blank node subjects round-trip isomorphically") {
  Graph g;
  g.insert(Term::blank("b0"), Term::iri("http://p"), Term::literal("x"));
  g.insert(Term::blank("b0"), Term::iri("http://q"), Term::blank("b1"));
  for (RdfFormat fmt : {RdfFormat::Turtle, RdfFormat::NTriples}) {
    Graph back = parse_rdf(serialize_rdf(g, fmt), fmt);
    CHECK(graphs_isomorphic(g, back));
  }
}

TEST_CASE("isomorphism requires a consistent blank-node bijection") {
  Graph a, b, c;
  a.insert(Term::blank("x"), Term::iri("http://p"), Term::literal("1"));
  a.insert(Term::blank("y"), Term::iri("http://p"), Term::literal("2"));
  b.insert(Term::blank("n1"), Term::iri("http://p"), Term::literal("1"));
  b.insert(Term::blank("n2"), Term::iri("http://p"), Term::literal("2"));
  c.insert(Term::blank("n1"), Term::iri("http://p"), Term::literal("1"));
  c.insert(Term::blank("n1"), Term::iri("http://p"), Term::literal("2"));
  CHECK(graphs_isomorphic(a, b));
  CHECK_FALSE(graphs_isomorphic(a, c));
  CHECK_FALSE(graphs_isomorphic(b, c));
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_rdf("<http://a> <http://p>\n<http://b>", RdfFormat::Turtle);
    FAIL("expected parse error");
  } catch (const RdfParseError& e) {
    CHECK(e.line >= 2);
  }
}

TEST_CASE("unknown prefix is an error") {
  CHECK_THROWS_AS(parse_rdf("nope:a nope:b nope:c .\n"), RdfParseError);
}

TEST_CASE("language tags and escapes survive round trips") {
  Graph g;
  g.insert(Term::iri("http://s"), Term::iri("http://p"),
           Term::literal("hej \"der\"\nny linje", vocab::kXsdString, "da"));
  Graph back = parse_rdf(serialize_rdf(g));
  CHECK(back.triples() == g.triples());
  Graph back_nt = parse_rdf(serialize_rdf(g, RdfFormat::NTriples), RdfFormat::NTriples);
  CHECK(back_nt.triples() == g.triples());
}

TEST_CASE("turtle shorthand object and predicate lists expand") {
  Graph g = parse_rdf("@prefix ex: <http://e/> .\n"
                      "ex:s a ex:T ; ex:p ex:a , ex:b ; ex:q true .\n");
  CHECK(g.size() == 4);
  CHECK(g.contains(Triple{Term::iri("http://e/s"), Term::iri(vocab::kRdfType),
                          Term::iri("http://e/T")}));
  CHECK(g.contains(Triple{Term::iri("http://e/s"), Term::iri("http://e/q"),
                          Term::literal("true", vocab::kXsdBoolean)}));
}

TEST_CASE("bare numeric literals get the right datatypes") {
  Graph g = parse_rdf("@prefix ex: <http://e/> .\n"
                      "ex:s ex:i 42 ; ex:d 3.25 ; ex:e 1.5e3 ; ex:n -7 .\n");
  auto has = [&](const char* p, const char* lex, const char* dt) {
    return g.contains(Triple{Term::iri("http://e/s"), Term::iri(std::string("http://e/") + p),
                             Term::literal(lex, dt)});
  };
  CHECK(has("i", "42", vocab::kXsdInteger));
  CHECK(has("d", "3.25", vocab::kXsdDecimal));
  CHECK(has("e", "1.5e3", vocab::kXsdDouble));
  CHECK(has("n", "-7", vocab::kXsdInteger));
}
