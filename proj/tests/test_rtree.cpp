#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "solap/rtree.hpp"

using namespace solap;

namespace {

GeometrySet square(double x, double y, double side = 1.0) {
  GeometrySet s;
  s.owner = "sq";
  Geometry g;
  g.kind = GeomKind::Polygon;
  g.pts = {{x, y}, {x + side, y}, {x + side, y + side}, {x, y + side}, {x, y}};
  s.parts.push_back(g);
  return s;
}

}  // namespace

TEST_CASE("empty index returns no candidates") {
  BBoxIndex idx = build_index({});
  CHECK(idx.empty());
  CHECK(idx.candidates(square(0, 0)).empty());
}

TEST_CASE("single-entry index") {
  BBoxIndex idx = build_index({{"a", square(0, 0)}});
  CHECK(idx.size() == 1);
  REQUIRE(idx.candidates(square(0.4, 0.4, 0.1)).size() == 1);
  CHECK(idx.candidates(square(0.4, 0.4, 0.1))[0]->iri == "a");
  CHECK(idx.candidates(square(5, 5)).empty());
}

TEST_CASE("grid probe returns exactly the overlapped cells") {
  std::vector<std::pair<std::string, GeometrySet>> cells;
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 10; ++c)
      cells.emplace_back("cell_" + std::to_string(r) + "_" + std::to_string(c),
                         square(c, r));
  BBoxIndex idx = build_index(cells);
  CHECK(idx.size() == 100);

  // probe strictly interior to the 2x2 neighborhood around (3.5, 3.5)..(4.5, 4.5)
  auto hits = idx.candidates(square(3.4, 3.4, 1.2));
  std::set<std::string> names;
  for (const auto* e : hits) names.insert(e->iri);
  CHECK(names ==
        std::set<std::string>{"cell_3_3", "cell_3_4", "cell_4_3", "cell_4_4"});

  // a probe that only touches cell boundaries still reports them (inclusive)
  auto touch = idx.candidates(square(2.2, 2.2, 0.5));
  std::set<std::string> touch_names;
  for (const auto* e : touch) touch_names.insert(e->iri);
  CHECK(touch_names.count("cell_2_2") == 1);
}

TEST_CASE("index results match a linear scan on random squares") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  std::vector<std::pair<std::string, GeometrySet>> members;
  for (int i = 0; i < 1000; ++i)
    members.emplace_back("m" + std::to_string(i), square(coord(rng), coord(rng)));
  BBoxIndex idx = build_index(members);
  CHECK(idx.size() == 1000);

  for (int probe_i = 0; probe_i < 50; ++probe_i) {
    GeometrySet probe = square(coord(rng), coord(rng), 3.0);
    BBox pb = bbox_of(probe);
    std::set<std::string> expected;
    for (const auto& [iri, s] : members)
      if (bbox_of(s).overlaps(pb)) expected.insert(iri);
    std::set<std::string> got;
    for (const auto* e : idx.candidates(probe)) got.insert(e->iri);
    CHECK(got == expected);
  }
}

TEST_CASE("no false negatives for contained geometry") {
  // every indexed member's geometry is inside its box, so any geometric
  // relation implies a box overlap with the probe's box
  std::vector<std::pair<std::string, GeometrySet>> members;
  for (int i = 0; i < 20; ++i) members.emplace_back("m" + std::to_string(i), square(i, 0));
  BBoxIndex idx = build_index(members);
  for (int i = 0; i < 20; ++i) {
    GeometrySet probe = square(i + 0.25, 0.25, 0.5);
    std::set<std::string> got;
    for (const auto* e : idx.candidates(probe)) got.insert(e->iri);
    CHECK(got.count("m" + std::to_string(i)) == 1);
  }
}

TEST_CASE("deterministic construction") {
  std::vector<std::pair<std::string, GeometrySet>> fwd, rev;
  for (int i = 0; i < 100; ++i) fwd.emplace_back("m" + std::to_string(i), square(i, i));
  rev.assign(fwd.rbegin(), fwd.rend());
  BBoxIndex a = build_index(fwd);
  BBoxIndex b = build_index(rev);
  for (int i = 0; i < 100; i += 7) {
    auto ca = a.candidates(square(i, i, 2.5));
    auto cb = b.candidates(square(i, i, 2.5));
    std::vector<std::string> na, nb;
    for (const auto* e : ca) na.push_back(e->iri);
    for (const auto* e : cb) nb.push_back(e->iri);
    CHECK(na == nb);
  }
}
