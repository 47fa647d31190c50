#pragma once

// WKT parsing and the simplified topological predicate set over planar
// point/line/polygon geometries. Multi-part shapes (several WKT literals on
// one subject) are grouped into a GeometrySet and evaluated with the
// quantifier rules described on evaluate_predicate.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "solap/vocab.hpp"

namespace solap {

inline constexpr double kEpsilon = 1e-9;

struct MalformedWkt : std::runtime_error {
  explicit MalformedWkt(const std::string& msg) : std::runtime_error(msg) {}
};
struct UnsupportedGeometry : std::runtime_error {
  explicit UnsupportedGeometry(const std::string& msg) : std::runtime_error(msg) {}
};
struct UnsupportedCombination : std::runtime_error {
  explicit UnsupportedCombination(const std::string& msg) : std::runtime_error(msg) {}
};

enum class GeomKind { Point, Line, Polygon };

inline int dimension(GeomKind k) {
  switch (k) {
    case GeomKind::Point: return 0;
    case GeomKind::Line: return 1;
    case GeomKind::Polygon: return 2;
  }
  return -1;
}

inline const char* kind_name(GeomKind k) {
  switch (k) {
    case GeomKind::Point: return "Point";
    case GeomKind::Line: return "Line";
    case GeomKind::Polygon: return "Polygon";
  }
  return "?";
}

struct XY {
  double x = 0, y = 0;
  friend bool operator==(const XY& a, const XY& b) {
    return std::abs(a.x - b.x) <= kEpsilon && std::abs(a.y - b.y) <= kEpsilon;
  }
};

struct Geometry {
  GeomKind kind = GeomKind::Point;
  std::vector<XY> pts;   // Point: 1; Line: >=2; Polygon: closed ring >=4
  bool autoclosed = false;  // polygon ring was closed by the parser
};

struct GeometrySet {
  std::string owner;            // member IRI
  std::vector<Geometry> parts;  // homogeneous kind, non-empty

  GeomKind kind() const { return parts.front().kind; }
};

enum class TopoRelation { Equals, Within, Intersects, Overlaps, Crosses };

inline const char* relation_iri(TopoRelation r) {
  switch (r) {
    case TopoRelation::Equals: return vocab::kQb4soEquals;
    case TopoRelation::Within: return vocab::kQb4soWithin;
    case TopoRelation::Intersects: return vocab::kQb4soIntersects;
    case TopoRelation::Overlaps: return vocab::kQb4soOverlaps;
    case TopoRelation::Crosses: return vocab::kQb4soCrosses;
  }
  return "";
}

inline const char* relation_class_iri(TopoRelation r) {
  switch (r) {
    case TopoRelation::Equals: return vocab::kQb4soEqualsClass;
    case TopoRelation::Within: return vocab::kQb4soWithinClass;
    case TopoRelation::Intersects: return vocab::kQb4soIntersectsClass;
    case TopoRelation::Overlaps: return vocab::kQb4soOverlapsClass;
    case TopoRelation::Crosses: return vocab::kQb4soCrossesClass;
  }
  return "";
}

inline const char* relation_name(TopoRelation r) {
  switch (r) {
    case TopoRelation::Equals: return "equals";
    case TopoRelation::Within: return "within";
    case TopoRelation::Intersects: return "intersects";
    case TopoRelation::Overlaps: return "overlaps";
    case TopoRelation::Crosses: return "crosses";
  }
  return "?";
}

inline std::optional<TopoRelation> relation_from_iri(std::string_view iri) {
  if (iri == vocab::kQb4soEquals) return TopoRelation::Equals;
  if (iri == vocab::kQb4soWithin) return TopoRelation::Within;
  if (iri == vocab::kQb4soIntersects) return TopoRelation::Intersects;
  if (iri == vocab::kQb4soOverlaps) return TopoRelation::Overlaps;
  if (iri == vocab::kQb4soCrosses) return TopoRelation::Crosses;
  return std::nullopt;
}

inline std::optional<TopoRelation> relation_from_class_iri(std::string_view iri) {
  if (iri == vocab::kQb4soEqualsClass) return TopoRelation::Equals;
  if (iri == vocab::kQb4soWithinClass) return TopoRelation::Within;
  if (iri == vocab::kQb4soIntersectsClass) return TopoRelation::Intersects;
  if (iri == vocab::kQb4soOverlapsClass) return TopoRelation::Overlaps;
  if (iri == vocab::kQb4soCrossesClass) return TopoRelation::Crosses;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// WKT parsing

namespace wkt_detail {

inline void skip_spaces(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline double parse_coord(std::string_view s, std::size_t& i) {
  skip_spaces(s, i);
  const char* begin = s.data() + i;
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin) throw MalformedWkt("expected coordinate in WKT");
  if (!std::isfinite(v)) throw MalformedWkt("non-finite coordinate in WKT");
  i += std::size_t(end - begin);
  return v;
}

inline std::vector<XY> parse_coord_list(std::string_view s, std::size_t& i) {
  std::vector<XY> pts;
  while (true) {
    XY p;
    p.x = parse_coord(s, i);
    p.y = parse_coord(s, i);
    pts.push_back(p);
    skip_spaces(s, i);
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    break;
  }
  return pts;
}

}  // namespace wkt_detail

inline Geometry parse_wkt(std::string_view text) {
  std::size_t i = 0;
  wkt_detail::skip_spaces(text, i);
  std::string tag;
  while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i])))
    tag += char(std::toupper(static_cast<unsigned char>(text[i++])));
  if (tag == "MULTIPOLYGON" || tag == "MULTILINESTRING" || tag == "MULTIPOINT" ||
      tag == "GEOMETRYCOLLECTION")
    throw UnsupportedGeometry("unsupported WKT geometry: " + tag);

  GeomKind kind;
  if (tag == "POINT") kind = GeomKind::Point;
  else if (tag == "LINESTRING" || tag == "LINE") kind = GeomKind::Line;
  else if (tag == "POLYGON") kind = GeomKind::Polygon;
  else throw MalformedWkt("unrecognized WKT tag: '" + tag + "'");

  wkt_detail::skip_spaces(text, i);
  if (i >= text.size() || text[i] != '(') throw MalformedWkt("expected '(' in WKT");
  ++i;
  int extra_paren = 0;
  wkt_detail::skip_spaces(text, i);
  if (kind == GeomKind::Polygon) {
    if (i >= text.size() || text[i] != '(') throw MalformedWkt("expected ring '((' in POLYGON");
    ++i;
    extra_paren = 1;
  }

  Geometry g;
  g.kind = kind;
  g.pts = wkt_detail::parse_coord_list(text, i);

  for (int n = 0; n <= extra_paren; ++n) {
    wkt_detail::skip_spaces(text, i);
    if (i >= text.size() || text[i] != ')') throw MalformedWkt("expected ')' in WKT");
    ++i;
  }
  wkt_detail::skip_spaces(text, i);
  if (i < text.size()) {
    if (text[i] == ',') throw UnsupportedGeometry("multiple rings/parts not supported");
    throw MalformedWkt("trailing content after WKT geometry");
  }

  switch (kind) {
    case GeomKind::Point:
      if (g.pts.size() != 1) throw MalformedWkt("POINT requires exactly one coordinate pair");
      break;
    case GeomKind::Line:
      if (g.pts.size() < 2) throw MalformedWkt("LINESTRING requires >= 2 points");
      break;
    case GeomKind::Polygon:
      if (g.pts.size() < 3) throw MalformedWkt("POLYGON ring requires >= 3 distinct points");
      if (!(g.pts.front() == g.pts.back())) {
        g.pts.push_back(g.pts.front());
        g.autoclosed = true;
      }
      if (g.pts.size() < 4) throw MalformedWkt("POLYGON ring too short");
      break;
  }
  return g;
}

inline std::string format_wkt(const Geometry& g) {
  std::ostringstream out;
  out.precision(17);
  auto coords = [&] {
    for (std::size_t i = 0; i < g.pts.size(); ++i) {
      if (i) out << ", ";
      out << g.pts[i].x << " " << g.pts[i].y;
    }
  };
  switch (g.kind) {
    case GeomKind::Point: out << "POINT ("; coords(); out << ")"; break;
    case GeomKind::Line: out << "LINESTRING ("; coords(); out << ")"; break;
    case GeomKind::Polygon: out << "POLYGON (("; coords(); out << "))"; break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Primitive tests

namespace geom_detail {

inline double cross(const XY& o, const XY& a, const XY& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline bool on_segment(const XY& p, const XY& a, const XY& b) {
  if (std::abs(cross(a, b, p)) > kEpsilon * (1.0 + std::abs(p.x) + std::abs(p.y)))
    return false;
  return p.x >= std::min(a.x, b.x) - kEpsilon && p.x <= std::max(a.x, b.x) + kEpsilon &&
         p.y >= std::min(a.y, b.y) - kEpsilon && p.y <= std::max(a.y, b.y) + kEpsilon;
}

// Strict interior crossing: the open segments intersect at a single point that
// is not an endpoint of either.
inline bool proper_crossing(const XY& a, const XY& b, const XY& c, const XY& d) {
  double d1 = cross(c, d, a);
  double d2 = cross(c, d, b);
  double d3 = cross(a, b, c);
  double d4 = cross(a, b, d);
  return ((d1 > kEpsilon && d2 < -kEpsilon) || (d1 < -kEpsilon && d2 > kEpsilon)) &&
         ((d3 > kEpsilon && d4 < -kEpsilon) || (d3 < -kEpsilon && d4 > kEpsilon));
}

// Any contact between closed segments, including endpoint touches and
// collinear overlap.
inline bool segments_touch(const XY& a, const XY& b, const XY& c, const XY& d) {
  if (proper_crossing(a, b, c, d)) return true;
  return on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) ||
         on_segment(d, a, b);
}

// Boundary-inclusive point-in-polygon via ray casting; ring is closed.
inline bool point_in_ring(const XY& p, const std::vector<XY>& ring) {
  for (std::size_t i = 0; i + 1 < ring.size(); ++i)
    if (on_segment(p, ring[i], ring[i + 1])) return true;
  bool inside = false;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    const XY& a = ring[i];
    const XY& b = ring[i + 1];
    if ((a.y > p.y) != (b.y > p.y)) {
      double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (x > p.x) inside = !inside;
    }
  }
  return inside;
}

// Point strictly interior to the ring (not on the boundary).
inline bool point_strictly_in_ring(const XY& p, const std::vector<XY>& ring) {
  for (std::size_t i = 0; i + 1 < ring.size(); ++i)
    if (on_segment(p, ring[i], ring[i + 1])) return false;
  return point_in_ring(p, ring);
}

inline bool rings_properly_cross(const std::vector<XY>& r1, const std::vector<XY>& r2) {
  for (std::size_t i = 0; i + 1 < r1.size(); ++i)
    for (std::size_t j = 0; j + 1 < r2.size(); ++j)
      if (proper_crossing(r1[i], r1[i + 1], r2[j], r2[j + 1])) return true;
  return false;
}

inline bool line_crosses_ring(const std::vector<XY>& line, const std::vector<XY>& ring) {
  for (std::size_t i = 0; i + 1 < line.size(); ++i)
    for (std::size_t j = 0; j + 1 < ring.size(); ++j)
      if (proper_crossing(line[i], line[i + 1], ring[j], ring[j + 1])) return true;
  return false;
}

// Ring equality up to rotation and direction.
inline bool rings_equal(const std::vector<XY>& a, const std::vector<XY>& b) {
  if (a.size() != b.size()) return false;
  std::size_t n = a.size() - 1;  // drop duplicated closing vertex
  if (n != b.size() - 1) return false;
  for (std::size_t off = 0; off < n; ++off) {
    bool fwd = true, rev = true;
    for (std::size_t i = 0; i < n && (fwd || rev); ++i) {
      if (!(a[i] == b[(off + i) % n])) fwd = false;
      if (!(a[i] == b[(off + n - i) % n])) rev = false;
    }
    if (fwd || rev) return true;
  }
  return false;
}

inline bool lines_equal(const Geometry& a, const Geometry& b) {
  if (a.pts.size() != b.pts.size()) return false;
  bool fwd = true, rev = true;
  std::size_t n = a.pts.size();
  for (std::size_t i = 0; i < n && (fwd || rev); ++i) {
    if (!(a.pts[i] == b.pts[i])) fwd = false;
    if (!(a.pts[i] == b.pts[n - 1 - i])) rev = false;
  }
  return fwd || rev;
}

inline bool collinear_overlap(const XY& a, const XY& b, const XY& c, const XY& d) {
  double scale = 1.0 + std::abs(a.x) + std::abs(a.y) + std::abs(b.x) + std::abs(b.y);
  if (std::abs(cross(a, b, c)) > kEpsilon * scale) return false;
  if (std::abs(cross(a, b, d)) > kEpsilon * scale) return false;
  // project onto the dominant axis and check for positive-length overlap
  bool use_x = std::abs(b.x - a.x) >= std::abs(b.y - a.y);
  auto coord = [&](const XY& p) { return use_x ? p.x : p.y; };
  double lo1 = std::min(coord(a), coord(b)), hi1 = std::max(coord(a), coord(b));
  double lo2 = std::min(coord(c), coord(d)), hi2 = std::max(coord(c), coord(d));
  return std::min(hi1, hi2) - std::max(lo1, lo2) > kEpsilon;
}

// --- part-level predicates -------------------------------------------------

inline bool part_equals(const Geometry& a, const Geometry& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case GeomKind::Point: return a.pts[0] == b.pts[0];
    case GeomKind::Line: return lines_equal(a, b);
    case GeomKind::Polygon: return rings_equal(a.pts, b.pts);
  }
  return false;
}

inline bool point_on_line(const XY& p, const Geometry& line) {
  for (std::size_t i = 0; i + 1 < line.pts.size(); ++i)
    if (on_segment(p, line.pts[i], line.pts[i + 1])) return true;
  return false;
}

inline bool lines_intersect(const Geometry& a, const Geometry& b) {
  for (std::size_t i = 0; i + 1 < a.pts.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.pts.size(); ++j)
      if (segments_touch(a.pts[i], a.pts[i + 1], b.pts[j], b.pts[j + 1])) return true;
  return false;
}

inline bool lines_properly_cross(const Geometry& a, const Geometry& b) {
  for (std::size_t i = 0; i + 1 < a.pts.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.pts.size(); ++j)
      if (proper_crossing(a.pts[i], a.pts[i + 1], b.pts[j], b.pts[j + 1])) return true;
  return false;
}

inline bool lines_overlap(const Geometry& a, const Geometry& b) {
  if (lines_equal(a, b)) return false;
  for (std::size_t i = 0; i + 1 < a.pts.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.pts.size(); ++j)
      if (collinear_overlap(a.pts[i], a.pts[i + 1], b.pts[j], b.pts[j + 1])) return true;
  return false;
}

// Every vertex in-or-on, no proper boundary crossing, and segment midpoints
// in-or-on (guards against a chord hopping outside a non-convex ring between
// two boundary vertices).
inline bool line_within_polygon(const Geometry& line, const Geometry& poly) {
  for (const XY& p : line.pts)
    if (!point_in_ring(p, poly.pts)) return false;
  if (line_crosses_ring(line.pts, poly.pts)) return false;
  for (std::size_t i = 0; i + 1 < line.pts.size(); ++i) {
    XY mid{(line.pts[i].x + line.pts[i + 1].x) / 2,
           (line.pts[i].y + line.pts[i + 1].y) / 2};
    if (!point_in_ring(mid, poly.pts)) return false;
  }
  return true;
}

inline bool line_touches_polygon(const Geometry& line, const Geometry& poly) {
  for (const XY& p : line.pts)
    if (point_in_ring(p, poly.pts)) return true;
  for (std::size_t i = 0; i + 1 < line.pts.size(); ++i)
    for (std::size_t j = 0; j + 1 < poly.pts.size(); ++j)
      if (segments_touch(line.pts[i], line.pts[i + 1], poly.pts[j], poly.pts[j + 1]))
        return true;
  return false;
}

// Boundary-inclusive containment: every vertex of inner in-or-on outer and no
// proper edge crossing between boundaries.
inline bool polygon_within_polygon(const Geometry& inner, const Geometry& outer) {
  for (const XY& p : inner.pts)
    if (!point_in_ring(p, outer.pts)) return false;
  return !rings_properly_cross(inner.pts, outer.pts);
}

// Any proper boundary crossing, or either containment direction. Pure edge
// adjacency (touching without shared interior) does not qualify.
inline bool polygons_intersect(const Geometry& a, const Geometry& b) {
  if (rings_properly_cross(a.pts, b.pts)) return true;
  return polygon_within_polygon(a, b) || polygon_within_polygon(b, a);
}

inline bool polygons_overlap(const Geometry& a, const Geometry& b) {
  if (part_equals(a, b)) return false;
  if (polygon_within_polygon(a, b) || polygon_within_polygon(b, a)) return false;
  return rings_properly_cross(a.pts, b.pts);
}

inline bool line_crosses_line(const Geometry& a, const Geometry& b) {
  return lines_properly_cross(a, b);
}

inline bool line_crosses_polygon(const Geometry& line, const Geometry& poly) {
  if (line_crosses_ring(line.pts, poly.pts)) return true;
  // sampled vertices/midpoints strictly on both sides of the boundary
  bool strictly_in = false, strictly_out = false;
  auto classify = [&](const XY& p) {
    for (std::size_t j = 0; j + 1 < poly.pts.size(); ++j)
      if (on_segment(p, poly.pts[j], poly.pts[j + 1])) return;
    (point_in_ring(p, poly.pts) ? strictly_in : strictly_out) = true;
  };
  for (const XY& p : line.pts) classify(p);
  for (std::size_t i = 0; i + 1 < line.pts.size(); ++i)
    classify(XY{(line.pts[i].x + line.pts[i + 1].x) / 2,
                (line.pts[i].y + line.pts[i + 1].y) / 2});
  return strictly_in && strictly_out;
}

}  // namespace geom_detail

// ---------------------------------------------------------------------------
// GeometrySet-level evaluation

enum class GeoMode { Exact, Bbox };

inline Geometry bounding_box(const GeometrySet& s) {
  double minx = std::numeric_limits<double>::infinity(), miny = minx;
  double maxx = -minx, maxy = -minx;
  for (const Geometry& g : s.parts)
    for (const XY& p : g.pts) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
  Geometry box;
  box.kind = GeomKind::Polygon;
  box.pts = {{minx, miny}, {maxx, miny}, {maxx, maxy}, {minx, maxy}, {minx, miny}};
  return box;
}

inline GeomKind geo_type(const GeometrySet& s) { return s.kind(); }

namespace geom_detail {

inline bool part_predicate(TopoRelation rel, const Geometry& a, const Geometry& b) {
  GeomKind ka = a.kind, kb = b.kind;
  switch (rel) {
    case TopoRelation::Equals:
      if (ka != kb) break;
      return part_equals(a, b);
    case TopoRelation::Within:
      if (ka == GeomKind::Point && kb == GeomKind::Polygon)
        return point_in_ring(a.pts[0], b.pts);
      if (ka == GeomKind::Line && kb == GeomKind::Polygon)
        return line_within_polygon(a, b);
      if (ka == GeomKind::Polygon && kb == GeomKind::Polygon)
        return polygon_within_polygon(a, b);
      break;
    case TopoRelation::Intersects:
      if (ka == GeomKind::Point && kb == GeomKind::Line) return point_on_line(a.pts[0], b);
      if (ka == GeomKind::Line && kb == GeomKind::Line) return lines_intersect(a, b);
      if (ka == GeomKind::Line && kb == GeomKind::Polygon)
        return line_touches_polygon(a, b);
      if (ka == GeomKind::Polygon && kb == GeomKind::Polygon)
        return polygons_intersect(a, b);
      break;
    case TopoRelation::Overlaps:
      if (ka == GeomKind::Line && kb == GeomKind::Line) return lines_overlap(a, b);
      if (ka == GeomKind::Polygon && kb == GeomKind::Polygon)
        return polygons_overlap(a, b);
      break;
    case TopoRelation::Crosses:
      if (ka == GeomKind::Line && kb == GeomKind::Line) return line_crosses_line(a, b);
      if (ka == GeomKind::Line && kb == GeomKind::Polygon)
        return line_crosses_polygon(a, b);
      break;
  }
  throw UnsupportedCombination(std::string(relation_name(rel)) + " on (" +
                               kind_name(ka) + ", " + kind_name(kb) + ")");
}

inline bool supported_combination(TopoRelation rel, GeomKind a, GeomKind b) {
  switch (rel) {
    case TopoRelation::Equals:
      return a == b;
    case TopoRelation::Within:
      return b == GeomKind::Polygon &&
             (a == GeomKind::Point || a == GeomKind::Line || a == GeomKind::Polygon);
    case TopoRelation::Intersects:
      return (a == GeomKind::Point && b == GeomKind::Line) ||
             (a == GeomKind::Line && b == GeomKind::Line) ||
             (a == GeomKind::Line && b == GeomKind::Polygon) ||
             (a == GeomKind::Polygon && b == GeomKind::Polygon);
    case TopoRelation::Overlaps:
      return (a == GeomKind::Line && b == GeomKind::Line) ||
             (a == GeomKind::Polygon && b == GeomKind::Polygon);
    case TopoRelation::Crosses:
      return (a == GeomKind::Line && b == GeomKind::Line) ||
             (a == GeomKind::Line && b == GeomKind::Polygon);
  }
  return false;
}

}  // namespace geom_detail

// Quantifier contract: Equals and Within require EVERY part of `a` to satisfy
// the part predicate (Equals against every part of b pairwise when both are
// single-part; multi-part Equals requires part-for-part matching); Intersects,
// Overlaps, and Crosses require SOME part of a against SOME part of b. In
// bbox mode a multi-part polygon parent is replaced by the bounding box of all
// its parts before Within tests.
inline bool evaluate_predicate(TopoRelation rel, const GeometrySet& a,
                               const GeometrySet& b, GeoMode mode = GeoMode::Exact) {
  if (!geom_detail::supported_combination(rel, a.kind(), b.kind()))
    throw UnsupportedCombination(std::string(relation_name(rel)) + " on (" +
                                 kind_name(a.kind()) + ", " + kind_name(b.kind()) + ")");
  switch (rel) {
    case TopoRelation::Equals: {
      // every part of a equal to some part of b, and vice versa
      auto covered = [](const GeometrySet& x, const GeometrySet& y) {
        for (const Geometry& gx : x.parts) {
          bool hit = false;
          for (const Geometry& gy : y.parts)
            if (geom_detail::part_equals(gx, gy)) { hit = true; break; }
          if (!hit) return false;
        }
        return true;
      };
      return covered(a, b) && covered(b, a);
    }
    case TopoRelation::Within: {
      if (mode == GeoMode::Bbox && b.kind() == GeomKind::Polygon && b.parts.size() > 1) {
        GeometrySet boxed{b.owner, {bounding_box(b)}};
        for (const Geometry& ga : a.parts)
          if (!geom_detail::part_predicate(rel, ga, boxed.parts[0])) return false;
        return true;
      }
      for (const Geometry& ga : a.parts) {
        bool hit = false;
        for (const Geometry& gb : b.parts)
          if (geom_detail::part_predicate(rel, ga, gb)) { hit = true; break; }
        if (!hit) return false;
      }
      return true;
    }
    case TopoRelation::Intersects:
    case TopoRelation::Overlaps:
    case TopoRelation::Crosses: {
      for (const Geometry& ga : a.parts)
        for (const Geometry& gb : b.parts)
          if (geom_detail::part_predicate(rel, ga, gb)) return true;
      return false;
    }
  }
  return false;
}

enum class DispatchMode { Algorithm2, Listing8 };

// Case-ladder dispatch between a child geometry and a parent geometry. The
// child's dimensionality must not exceed the parent's; otherwise no relation
// is applicable and none is returned without evaluating predicates.
inline std::optional<TopoRelation> relate_spatial_values(
    const GeometrySet& child, const GeometrySet& parent, GeoMode mode = GeoMode::Exact,
    DispatchMode dispatch = DispatchMode::Algorithm2) {
  GeomKind kc = child.kind(), kp = parent.kind();
  if (dimension(kc) > dimension(kp)) return std::nullopt;

  auto test = [&](TopoRelation r) { return evaluate_predicate(r, child, parent, mode); };

  if (kc == GeomKind::Point && kp == GeomKind::Point) {
    if (test(TopoRelation::Equals)) return TopoRelation::Equals;
    return std::nullopt;
  }
  if (kc == GeomKind::Point && kp == GeomKind::Line) {
    if (test(TopoRelation::Intersects)) return TopoRelation::Intersects;
    return std::nullopt;
  }
  if (kc == GeomKind::Point && kp == GeomKind::Polygon) {
    if (test(TopoRelation::Within)) return TopoRelation::Within;
    // The Intersects fallback of the ladder: a point meets a polygon exactly
    // when it is in or on it, which inclusive Within already covers, so any
    // point reaching this step has no relation.
    return std::nullopt;
  }
  if (kc == GeomKind::Line && kp == GeomKind::Line) {
    if (test(TopoRelation::Intersects)) return TopoRelation::Intersects;
    if (test(TopoRelation::Overlaps)) return TopoRelation::Overlaps;
    return std::nullopt;
  }
  if (kc == GeomKind::Line && kp == GeomKind::Polygon) {
    if (test(TopoRelation::Within)) return TopoRelation::Within;
    if (test(TopoRelation::Intersects))
      return dispatch == DispatchMode::Listing8 ? TopoRelation::Overlaps
                                                : TopoRelation::Intersects;
    return std::nullopt;
  }
  if (kc == GeomKind::Polygon && kp == GeomKind::Polygon) {
    if (test(TopoRelation::Within)) return TopoRelation::Within;
    if (test(TopoRelation::Intersects))
      return dispatch == DispatchMode::Listing8 ? TopoRelation::Overlaps
                                                : TopoRelation::Intersects;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace solap
