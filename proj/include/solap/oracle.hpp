#pragma once

// Brute-force geometric oracle. Deliberately avoids the analytic predicate
// code path: containment is decided by winding numbers plus dense sampling
// (512x512 grid over the joint bounding box), contact by exhaustive
// segment-pair distance checks. Samples that land in an epsilon band around a
// boundary make the verdict "boundary-ambiguous" instead of wrong.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "solap/geometry.hpp"

namespace solap {

struct OracleResult {
  std::optional<TopoRelation> rel;
  bool ambiguous = false;
};

namespace oracle_detail {

inline constexpr int kGridResolution = 512;

inline double dist2_point_segment(const XY& p, const XY& a, const XY& b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  double t = 0;
  if (len2 > 0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  double px = a.x + t * dx - p.x, py = a.y + t * dy - p.y;
  return px * px + py * py;
}

inline double dist_to_boundary(const XY& p, const std::vector<Geometry>& parts) {
  double best = std::numeric_limits<double>::infinity();
  for (const Geometry& g : parts) {
    if (g.kind == GeomKind::Point) {
      double dx = g.pts[0].x - p.x, dy = g.pts[0].y - p.y;
      best = std::min(best, dx * dx + dy * dy);
      continue;
    }
    for (std::size_t i = 0; i + 1 < g.pts.size(); ++i)
      best = std::min(best, dist2_point_segment(p, g.pts[i], g.pts[i + 1]));
  }
  return std::sqrt(best);
}

// Nonzero winding rule — a different containment method than the analytic
// module's ray casting.
inline int winding_number(const XY& p, const std::vector<XY>& ring) {
  int wn = 0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    const XY& a = ring[i];
    const XY& b = ring[i + 1];
    if (a.y <= p.y) {
      if (b.y > p.y && geom_detail::cross(a, b, p) > 0) ++wn;
    } else {
      if (b.y <= p.y && geom_detail::cross(a, b, p) < 0) --wn;
    }
  }
  return wn;
}

inline bool in_polygon_union(const XY& p, const std::vector<Geometry>& parts) {
  for (const Geometry& g : parts)
    if (winding_number(p, g.pts) != 0) return true;
  return false;
}

struct JointFrame {
  double minx, miny, maxx, maxy;
  double band;  // half a grid cell — the ambiguity margin

  static JointFrame of(const GeometrySet& a, const GeometrySet& b) {
    JointFrame f{std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity(), 0};
    auto grow = [&](const GeometrySet& s) {
      for (const Geometry& g : s.parts)
        for (const XY& p : g.pts) {
          f.minx = std::min(f.minx, p.x);
          f.maxx = std::max(f.maxx, p.x);
          f.miny = std::min(f.miny, p.y);
          f.maxy = std::max(f.maxy, p.y);
        }
    };
    grow(a);
    grow(b);
    double span = std::max(f.maxx - f.minx, f.maxy - f.miny);
    if (span <= 0) span = 1.0;
    f.band = span / kGridResolution;
    return f;
  }
};

enum class Side { Out, In, Band };

inline Side classify_against_polygons(const XY& p, const std::vector<Geometry>& parts,
                                      double band) {
  if (dist_to_boundary(p, parts) <= band) return Side::Band;
  return in_polygon_union(p, parts) ? Side::In : Side::Out;
}

// Dense sample points along every segment of every line part.
inline std::vector<XY> line_samples(const GeometrySet& lines) {
  std::vector<XY> out;
  for (const Geometry& g : lines.parts)
    for (std::size_t i = 0; i + 1 < g.pts.size(); ++i) {
      const XY& a = g.pts[i];
      const XY& b = g.pts[i + 1];
      for (int k = 0; k <= kGridResolution; ++k) {
        double t = double(k) / kGridResolution;
        out.push_back(XY{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      }
    }
  return out;
}

inline double min_segment_gap(const GeometrySet& a, const GeometrySet& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Geometry& ga : a.parts)
    for (const XY& p : line_samples(GeometrySet{"", {ga}}))
      best = std::min(best, dist_to_boundary(p, b.parts));
  return best;
}

inline const std::vector<Geometry>& parent_parts_for_within(
    const GeometrySet& parent, GeoMode mode, std::vector<Geometry>& scratch) {
  if (mode == GeoMode::Bbox && parent.kind() == GeomKind::Polygon &&
      parent.parts.size() > 1) {
    scratch = {bounding_box(parent)};
    return scratch;
  }
  return parent.parts;
}

}  // namespace oracle_detail

inline OracleResult oracle_relate(const GeometrySet& child, const GeometrySet& parent,
                                  GeoMode mode = GeoMode::Exact) {
  using namespace oracle_detail;
  GeomKind kc = child.kind(), kp = parent.kind();
  if (dimension(kc) > dimension(kp)) return {};

  JointFrame frame = JointFrame::of(child, parent);
  double band = frame.band;

  if (kc == GeomKind::Point && kp == GeomKind::Point) {
    // Equals with set semantics: mutual coverage within epsilon.
    bool ambiguous = false;
    auto covered = [&](const GeometrySet& x, const GeometrySet& y) {
      for (const Geometry& gx : x.parts) {
        double d = dist_to_boundary(gx.pts[0], y.parts);
        if (d > kEpsilon && d <= band) ambiguous = true;
        if (d > kEpsilon) return false;
      }
      return true;
    };
    bool eq = covered(child, parent) && covered(parent, child);
    if (eq) return {TopoRelation::Equals, false};
    return {std::nullopt, ambiguous};
  }

  if (kc == GeomKind::Point && kp == GeomKind::Line) {
    bool ambiguous = false;
    for (const Geometry& g : child.parts) {
      double d = dist_to_boundary(g.pts[0], parent.parts);
      if (d <= kEpsilon) return {TopoRelation::Intersects, false};
      if (d <= band) ambiguous = true;
    }
    return {std::nullopt, ambiguous};
  }

  if (kc == GeomKind::Point && kp == GeomKind::Polygon) {
    std::vector<Geometry> scratch;
    const auto& pparts = parent_parts_for_within(parent, mode, scratch);
    bool all_in = true, ambiguous = false;
    for (const Geometry& g : child.parts) {
      Side s = classify_against_polygons(g.pts[0], pparts, band);
      if (s == Side::Band) {
        // on or near the boundary: inclusive within, but flag closeness when
        // the point is not exactly on it
        if (dist_to_boundary(g.pts[0], pparts) > kEpsilon &&
            !in_polygon_union(g.pts[0], pparts))
          ambiguous = true;
        continue;
      }
      if (s == Side::Out) all_in = false;
    }
    if (all_in && !ambiguous) return {TopoRelation::Within, false};
    return {std::nullopt, ambiguous};
  }

  if (kc == GeomKind::Line && kp == GeomKind::Line) {
    double gap = min_segment_gap(child, parent);
    if (gap <= kEpsilon) return {TopoRelation::Intersects, false};
    if (gap <= band) return {std::nullopt, true};
    return {};
  }

  if (kc == GeomKind::Line && kp == GeomKind::Polygon) {
    std::vector<Geometry> scratch;
    const auto& within_parts = parent_parts_for_within(parent, mode, scratch);
    bool all_in = true, any_contact = false, ambiguous = false;
    for (const XY& p : line_samples(child)) {
      Side s = classify_against_polygons(p, within_parts, band);
      if (s == Side::Out) all_in = false;
      Side exact_side = classify_against_polygons(p, parent.parts, band);
      if (exact_side == Side::In) any_contact = true;
      if (exact_side == Side::Band) {
        any_contact = true;  // grazing contact: verdict depends on epsilon
        if (dist_to_boundary(p, parent.parts) > kEpsilon &&
            !in_polygon_union(p, parent.parts))
          ambiguous = true;
      }
    }
    if (all_in) return {TopoRelation::Within, ambiguous};
    if (any_contact) return {TopoRelation::Intersects, ambiguous};
    return {std::nullopt, ambiguous};
  }

  // Polygon vs Polygon: grid sampling over the joint frame.
  std::vector<Geometry> scratch;
  const auto& within_parts = parent_parts_for_within(parent, mode, scratch);
  bool child_out_of_parent = false;   // strictly inside child, strictly outside parent
  bool shared_interior = false;       // strictly inside both
  bool parent_out_of_child = false;
  bool saw_child_interior = false;
  bool ambiguous = false;
  for (int iy = 0; iy <= kGridResolution; ++iy) {
    double y = frame.miny + (frame.maxy - frame.miny) * double(iy) / kGridResolution;
    for (int ix = 0; ix <= kGridResolution; ++ix) {
      double x = frame.minx + (frame.maxx - frame.minx) * double(ix) / kGridResolution;
      XY p{x, y};
      Side sc = classify_against_polygons(p, child.parts, band);
      if (sc == Side::Band) continue;
      Side sp = classify_against_polygons(p, parent.parts, band);
      Side sw = (&within_parts == &parent.parts)
                    ? sp
                    : classify_against_polygons(p, within_parts, band);
      if (sc == Side::In) {
        saw_child_interior = true;
        if (sw == Side::Out) child_out_of_parent = true;
        if (sp == Side::In) shared_interior = true;
      } else if (sp == Side::In) {
        parent_out_of_child = true;
      }
    }
  }
  if (!saw_child_interior) ambiguous = true;  // child thinner than the grid
  if (!child_out_of_parent && saw_child_interior)
    return {TopoRelation::Within, ambiguous};
  if (shared_interior) return {TopoRelation::Intersects, ambiguous};
  (void)parent_out_of_child;
  return {std::nullopt, ambiguous};
}

}  // namespace solap
