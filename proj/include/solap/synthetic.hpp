#pragma once

// Deterministic synthetic cube generator. Builds a two-level spatial
// hierarchy (grid cells rolling up to partitions) with facts placed strictly
// inside cell cores, plus a constructive ground-truth relation set computed
// from the layout arithmetic alone — no geometry code involved.
//
// Layout: cells are 100x100 squares. When the partition count is a perfect
// square s^2 with s dividing both grid dimensions, partitions are rectangular
// s x s blocks (bounding box == union). Otherwise cells are split row-major
// into contiguous bands, which are ragged, so a partition's bounding box
// strictly contains its union — the shape that separates bbox mode from
// exact mode.
//
// A straddler cell's square is replaced by a slim rectangle reaching 25 units
// past the nearest partition boundary (along its row or column), so it
// properly crosses into exactly one foreign partition while still containing
// its fact core. Fact points are jittered inside [30,70]^2 of their cell, 5+
// units away from every geometry edge involved.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "solap/enrich.hpp"
#include "solap/rdf.hpp"

namespace solap {

struct InvalidSpec : std::runtime_error {
  explicit InvalidSpec(const std::string& msg) : std::runtime_error(msg) {}
};

struct SyntheticCubeSpec {
  int rows = 10;
  int cols = 10;
  int partitions = 4;
  int facts = 0;
  double overlap = 0.0;       // fraction of cells that straddle a boundary
  double link_fraction = 1.0; // fraction of cells with explicit skos:broader
  std::uint64_t seed = 1;
};

struct GroundTruth {
  std::set<RelationTriple> detect_hs;
  std::set<RelationTriple> discover_hs;
  std::set<RelationTriple> detect_fact;
  std::set<RelationTriple> discover_fact;

  std::set<RelationTriple> all() const {
    std::set<RelationTriple> out = detect_hs;
    out.insert(discover_hs.begin(), discover_hs.end());
    out.insert(detect_fact.begin(), detect_fact.end());
    out.insert(discover_fact.begin(), discover_fact.end());
    return out;
  }
};

struct SyntheticCube {
  Graph schema;
  Graph instance;
  GroundTruth truth;
};

namespace synth {

inline constexpr const char* kEx = "http://example.org/cube#";
inline constexpr const char* kExi = "http://example.org/instance#";

struct Rect {
  long x0, y0, x1, y1;  // integer coordinates, 100 units per cell
  bool contains(long x, long y) const { return x > x0 && x < x1 && y > y0 && y < y1; }
};

inline std::string poly_wkt(const Rect& r) {
  auto n = [](long v) { return std::to_string(v); };
  return "POLYGON((" + n(r.x0) + " " + n(r.y0) + ", " + n(r.x1) + " " + n(r.y0) +
         ", " + n(r.x1) + " " + n(r.y1) + ", " + n(r.x0) + " " + n(r.y1) + ", " +
         n(r.x0) + " " + n(r.y0) + "))";
}

}  // namespace synth

inline SyntheticCube generate_synthetic_cube(const SyntheticCubeSpec& spec) {
  using synth::Rect;
  const int rows = spec.rows, cols = spec.cols, parts = spec.partitions;
  if (rows < 1 || cols < 1) throw InvalidSpec("grid dimensions must be >= 1");
  if (parts < 1 || parts > rows * cols)
    throw InvalidSpec("partition count out of range");
  if (spec.facts < 0) throw InvalidSpec("fact count must be >= 0");
  if (spec.overlap < 0 || spec.overlap > 1) throw InvalidSpec("overlap not in [0,1]");
  if (spec.link_fraction < 0 || spec.link_fraction > 1)
    throw InvalidSpec("link fraction not in [0,1]");
  if (spec.overlap > 0 && parts < 2)
    throw InvalidSpec("straddlers require >= 2 partitions");

  const int ncells = rows * cols;
  const int s = int(std::lround(std::sqrt(double(parts))));
  const bool blocks = (s * s == parts) && rows % s == 0 && cols % s == 0;

  auto partition_of = [&](int r, int c) {
    if (blocks) return (r / (rows / s)) * s + (c / (cols / s));
    // contiguous row-major bands
    long idx = long(r) * cols + c;
    for (int k = parts - 1; k >= 0; --k)
      if (idx >= long(k) * ncells / parts) return k;
    return 0;
  };

  std::mt19937_64 rng(spec.seed);

  // --- straddler selection --------------------------------------------------
  const int straddler_count = int(std::lround(spec.overlap * ncells));
  std::vector<int> order(static_cast<std::size_t>(ncells), 0);
  for (int i = 0; i < ncells; ++i) order[std::size_t(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);

  // cell id -> (stretched rect, crossed partition); absent = plain square
  std::map<int, std::pair<Rect, int>> straddlers;
  for (int idx : order) {
    if (int(straddlers.size()) >= straddler_count) break;
    int r = idx / cols, c = idx % cols;
    int own = partition_of(r, c);
    // nearest different-partition cell along the four axis directions
    int best_dist = -1;
    Rect rect{};
    int crossed = -1;
    auto consider = [&](int dist, const Rect& candidate, int part) {
      if (dist < 0) return;
      if (best_dist < 0 || dist < best_dist) {
        best_dist = dist;
        rect = candidate;
        crossed = part;
      }
    };
    for (int cc = c + 1; cc < cols; ++cc)
      if (partition_of(r, cc) != own) {
        consider(cc - c, Rect{100L * c + 25, 100L * r + 10, 100L * cc + 25,
                              100L * r + 90},
                 partition_of(r, cc));
        break;
      }
    for (int cc = c - 1; cc >= 0; --cc)
      if (partition_of(r, cc) != own) {
        consider(c - cc, Rect{100L * (cc + 1) - 25, 100L * r + 10, 100L * c + 75,
                              100L * r + 90},
                 partition_of(r, cc));
        break;
      }
    for (int rr = r + 1; rr < rows; ++rr)
      if (partition_of(rr, c) != own) {
        consider(rr - r, Rect{100L * c + 10, 100L * r + 25, 100L * c + 90,
                              100L * rr + 25},
                 partition_of(rr, c));
        break;
      }
    for (int rr = r - 1; rr >= 0; --rr)
      if (partition_of(rr, c) != own) {
        consider(r - rr, Rect{100L * c + 10, 100L * (rr + 1) - 25, 100L * c + 90,
                              100L * r + 75},
                 partition_of(rr, c));
        break;
      }
    if (best_dist >= 0) straddlers.emplace(idx, std::make_pair(rect, crossed));
  }
  if (int(straddlers.size()) < straddler_count)
    throw InvalidSpec("not enough boundary-reachable cells for requested overlap");

  auto cell_rect = [&](int idx) {
    if (auto it = straddlers.find(idx); it != straddlers.end()) return it->second.first;
    int r = idx / cols, c = idx % cols;
    return Rect{100L * c, 100L * r, 100L * c + 100, 100L * r + 100};
  };

  // --- rollup links ---------------------------------------------------------
  std::set<int> linked;
  {
    int want = int(std::lround(spec.link_fraction * ncells));
    std::vector<int> order2(static_cast<std::size_t>(ncells), 0);
    for (int i = 0; i < ncells; ++i) order2[std::size_t(i)] = i;
    std::shuffle(order2.begin(), order2.end(), rng);
    for (int i = 0; i < want; ++i) linked.insert(order2[std::size_t(i)]);
  }

  // --- fact placement -------------------------------------------------------
  std::uniform_int_distribution<int> jitter(30, 70);
  struct Fact {
    int cell;
    long x, y;
  };
  std::vector<Fact> facts;
  facts.reserve(std::size_t(spec.facts));
  for (int i = 0; i < spec.facts; ++i) {
    int cell = i % ncells;  // even coverage; jitter is the random part
    int r = cell / cols, c = cell % cols;
    facts.push_back(Fact{cell, 100L * c + jitter(rng), 100L * r + jitter(rng)});
  }

  // --- IRIs -----------------------------------------------------------------
  auto cell_iri = [&](int idx) {
    return std::string(synth::kExi) + "cell_" + std::to_string(idx / cols) + "_" +
           std::to_string(idx % cols);
  };
  auto part_iri = [&](int k) {
    return std::string(synth::kExi) + "part_" + std::to_string(k);
  };
  auto fact_iri = [&](int i) {
    return std::string(synth::kExi) + "obs_" + std::to_string(i);
  };
  const std::string lvl_cell = std::string(synth::kEx) + "cell";
  const std::string lvl_part = std::string(synth::kEx) + "partition";
  const std::string attr_cell_geom = std::string(synth::kEx) + "cellGeom";
  const std::string attr_part_geom = std::string(synth::kEx) + "partGeom";
  const std::string measure_value = std::string(synth::kEx) + "value";
  const std::string measure_pos = std::string(synth::kEx) + "position";
  const std::string hier = std::string(synth::kEx) + "geoHier";
  const std::string dim = std::string(synth::kEx) + "geoDim";
  const std::string dsd = std::string(synth::kEx) + "dsd";

  const bool many_to_many = spec.overlap > 0;

  // --- schema graph ---------------------------------------------------------
  Graph schema;
  schema.add_prefix("rdf", vocab::kRdf);
  schema.add_prefix("qb", vocab::kQb);
  schema.add_prefix("qb4o", vocab::kQb4o);
  schema.add_prefix("qb4so", vocab::kQb4so);
  schema.add_prefix("ex", synth::kEx);
  auto I = [](const std::string& v) { return Term::iri(v); };
  schema.insert(I(dim), I(vocab::kQb4oHasHierarchy), I(hier));
  schema.insert(I(hier), I(vocab::kRdfType), I(vocab::kQb4oHierarchy));
  schema.insert(I(hier), I(vocab::kQb4oInDimension), I(dim));
  schema.insert(I(hier), I(vocab::kQb4oHasLevel), I(lvl_cell));
  schema.insert(I(hier), I(vocab::kQb4oHasLevel), I(lvl_part));
  schema.insert(I(lvl_cell), I(vocab::kRdfType), I(vocab::kQb4oLevelProperty));
  schema.insert(I(lvl_part), I(vocab::kRdfType), I(vocab::kQb4oLevelProperty));
  Term step = Term::blank("hs_cell_partition");
  schema.insert(step, I(vocab::kRdfType), I(vocab::kQb4oHierarchyStep));
  schema.insert(step, I(vocab::kQb4oInHierarchy), I(hier));
  schema.insert(step, I(vocab::kQb4oChildLevel), I(lvl_cell));
  schema.insert(step, I(vocab::kQb4oParentLevel), I(lvl_part));
  schema.insert(step, I(vocab::kQb4oPcCardinality),
                I(many_to_many ? vocab::kQb4oManyToMany : vocab::kQb4oManyToOne));
  schema.insert(I(dsd), I(vocab::kRdfType), I(vocab::kQbDsd));
  Term comp_cell = Term::blank("comp_cell");
  Term comp_value = Term::blank("comp_value");
  Term comp_pos = Term::blank("comp_position");
  schema.insert(I(dsd), I(vocab::kQbComponent), comp_cell);
  schema.insert(comp_cell, I(vocab::kQb4oLevel), I(lvl_cell));
  schema.insert(comp_cell, I(vocab::kQb4oCardinality), I(vocab::kQb4oManyToOne));
  schema.insert(I(dsd), I(vocab::kQbComponent), comp_value);
  schema.insert(comp_value, I(vocab::kQbMeasure), I(measure_value));
  schema.insert(I(dsd), I(vocab::kQbComponent), comp_pos);
  schema.insert(comp_pos, I(vocab::kQbMeasure), I(measure_pos));

  // --- instance graph -------------------------------------------------------
  Graph inst;
  inst.add_prefix("rdf", vocab::kRdf);
  inst.add_prefix("qb", vocab::kQb);
  inst.add_prefix("qb4o", vocab::kQb4o);
  inst.add_prefix("skos", vocab::kSkos);
  inst.add_prefix("geo", vocab::kGeo);
  inst.add_prefix("ex", synth::kEx);
  inst.add_prefix("exi", synth::kExi);
  auto wkt = [](const std::string& text) {
    return Term::literal(text, vocab::kGeoSpatialLiteral);
  };

  for (int idx = 0; idx < ncells; ++idx) {
    Term cell = I(cell_iri(idx));
    inst.insert(cell, I(vocab::kRdfType), I(vocab::kQb4oLevelMember));
    inst.insert(cell, I(vocab::kQb4oMemberOf), I(lvl_cell));
    inst.insert(cell, I(attr_cell_geom), wkt(synth::poly_wkt(cell_rect(idx))));
    if (linked.count(idx)) {
      inst.insert(cell, I(vocab::kSkosBroader),
                  I(part_iri(partition_of(idx / cols, idx % cols))));
      if (auto it = straddlers.find(idx); it != straddlers.end())
        inst.insert(cell, I(vocab::kSkosBroader), I(part_iri(it->second.second)));
    }
  }

  for (int k = 0; k < parts; ++k) {
    Term part = I(part_iri(k));
    inst.insert(part, I(vocab::kRdfType), I(vocab::kQb4oLevelMember));
    inst.insert(part, I(vocab::kQb4oMemberOf), I(lvl_part));
    // one polygon part per row-run of cells
    for (int r = 0; r < rows; ++r) {
      int run_start = -1;
      for (int c = 0; c <= cols; ++c) {
        bool mine = c < cols && partition_of(r, c) == k;
        if (mine && run_start < 0) run_start = c;
        if (!mine && run_start >= 0) {
          inst.insert(part, I(attr_part_geom),
                      wkt(synth::poly_wkt(Rect{100L * run_start, 100L * r, 100L * c,
                                               100L * r + 100})));
          run_start = -1;
        }
      }
    }
  }

  for (int i = 0; i < int(facts.size()); ++i) {
    const Fact& f = facts[std::size_t(i)];
    Term obs = I(fact_iri(i));
    inst.insert(obs, I(vocab::kRdfType), I(vocab::kQbObservation));
    inst.insert(obs, I(lvl_cell), I(cell_iri(f.cell)));
    inst.insert(obs, I(measure_value),
                Term::literal(std::to_string(f.cell % 97), vocab::kXsdInteger));
    inst.insert(obs, I(measure_pos),
                wkt("POINT (" + std::to_string(f.x) + " " + std::to_string(f.y) + ")"));
  }

  // --- constructive ground truth -------------------------------------------
  GroundTruth truth;
  for (int idx = 0; idx < ncells; ++idx) {
    int own = partition_of(idx / cols, idx % cols);
    auto str = straddlers.find(idx);
    std::vector<std::pair<int, TopoRelation>> touched;
    if (str == straddlers.end()) {
      touched.emplace_back(own, TopoRelation::Within);
    } else {
      touched.emplace_back(own, TopoRelation::Intersects);
      touched.emplace_back(str->second.second, TopoRelation::Intersects);
    }
    for (const auto& [part, rel] : touched) {
      if (linked.count(idx))
        truth.detect_hs.insert(RelationTriple{cell_iri(idx), rel, part_iri(part)});
      truth.discover_hs.insert(RelationTriple{cell_iri(idx), rel, part_iri(part)});
      truth.discover_hs.insert(
          RelationTriple{part_iri(part), TopoRelation::Intersects, cell_iri(idx)});
    }
  }
  for (int i = 0; i < int(facts.size()); ++i) {
    const Fact& f = facts[std::size_t(i)];
    truth.detect_fact.insert(
        RelationTriple{fact_iri(i), TopoRelation::Within, cell_iri(f.cell)});
    // facts fall inside their own cell and inside any straddler rectangle
    // passing over it
    truth.discover_fact.insert(
        RelationTriple{fact_iri(i), TopoRelation::Within, cell_iri(f.cell)});
    for (const auto& [idx, sc] : straddlers)
      if (idx != f.cell && sc.first.contains(f.x, f.y))
        truth.discover_fact.insert(
            RelationTriple{fact_iri(i), TopoRelation::Within, cell_iri(idx)});
    if (many_to_many)
      truth.discover_fact.insert(
          RelationTriple{fact_iri(i), TopoRelation::Within,
                         part_iri(partition_of(f.cell / cols, f.cell % cols))});
  }

  return SyntheticCube{std::move(schema), std::move(inst), std::move(truth)};
}

}  // namespace solap
