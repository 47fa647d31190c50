#pragma once

// Static bounding-box R-tree, bulk-loaded with Sort-Tile-Recursive packing so
// the tree shape (and therefore benchmark numbers) is deterministic. Indexes
// the parent side of a discover pass; probes with the child's box.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "solap/geometry.hpp"

namespace solap {

struct BBox {
  double minx = 0, miny = 0, maxx = 0, maxy = 0;

  bool overlaps(const BBox& o) const {
    return minx <= o.maxx + kEpsilon && o.minx <= maxx + kEpsilon &&
           miny <= o.maxy + kEpsilon && o.miny <= maxy + kEpsilon;
  }
  void expand(const BBox& o) {
    minx = std::min(minx, o.minx);
    miny = std::min(miny, o.miny);
    maxx = std::max(maxx, o.maxx);
    maxy = std::max(maxy, o.maxy);
  }
  double cx() const { return (minx + maxx) / 2; }
  double cy() const { return (miny + maxy) / 2; }
};

inline BBox bbox_of(const GeometrySet& s) {
  Geometry box = bounding_box(s);
  return BBox{box.pts[0].x, box.pts[0].y, box.pts[2].x, box.pts[2].y};
}

class BBoxIndex {
 public:
  static constexpr std::size_t kNodeCapacity = 16;

  struct Entry {
    std::string iri;
    BBox box;
  };

  static BBoxIndex build(std::vector<Entry> entries) {
    BBoxIndex idx;
    if (entries.empty()) return idx;
    // deterministic input order regardless of caller
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.iri < b.iri; });
    idx.leaves_ = std::move(entries);
    std::vector<int> slots(idx.leaves_.size());
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = int(i);
    idx.root_ = idx.pack(slots);
    return idx;
  }

  bool empty() const { return leaves_.empty(); }
  std::size_t size() const { return leaves_.size(); }

  // All indexed members whose box overlaps the probe box (inclusive bounds).
  std::vector<const Entry*> candidates(const BBox& probe) const {
    std::vector<const Entry*> out;
    if (!leaves_.empty()) collect(root_, probe, out);
    return out;
  }
  std::vector<const Entry*> candidates(const GeometrySet& probe) const {
    return candidates(bbox_of(probe));
  }

 private:
  struct Node {
    BBox box;
    bool leaf = false;
    std::vector<int> children;  // node ids, or leaf entry ids
  };

  std::vector<Entry> leaves_;
  std::vector<Node> nodes_;
  int root_ = -1;

  BBox box_for(const std::vector<int>& slots, bool leaf) const {
    BBox b = leaf ? leaves_[std::size_t(slots[0])].box : nodes_[std::size_t(slots[0])].box;
    for (std::size_t i = 1; i < slots.size(); ++i)
      b.expand(leaf ? leaves_[std::size_t(slots[i])].box
                    : nodes_[std::size_t(slots[i])].box);
    return b;
  }

  // STR packing of one tree level; `slots` index into leaves_ at the bottom
  // level and nodes_ above it.
  int pack(std::vector<int> slots) {
    bool leaf_level = true;
    while (true) {
      if (slots.size() <= kNodeCapacity) {
        Node n;
        n.leaf = leaf_level;
        n.children = slots;
        n.box = box_for(slots, leaf_level);
        nodes_.push_back(std::move(n));
        return int(nodes_.size() - 1);
      }
      auto center_x = [&](int s) {
        return leaf_level ? leaves_[std::size_t(s)].box.cx() : nodes_[std::size_t(s)].box.cx();
      };
      auto center_y = [&](int s) {
        return leaf_level ? leaves_[std::size_t(s)].box.cy() : nodes_[std::size_t(s)].box.cy();
      };
      std::size_t node_count =
          (slots.size() + kNodeCapacity - 1) / kNodeCapacity;
      std::size_t slice_count =
          std::size_t(std::ceil(std::sqrt(double(node_count))));
      std::size_t slice_size =
          ((slots.size() + slice_count - 1) / slice_count + kNodeCapacity - 1) /
          kNodeCapacity * kNodeCapacity;

      std::stable_sort(slots.begin(), slots.end(),
                       [&](int a, int b) { return center_x(a) < center_x(b); });
      std::vector<int> next;
      for (std::size_t start = 0; start < slots.size(); start += slice_size) {
        std::size_t end = std::min(start + slice_size, slots.size());
        std::stable_sort(slots.begin() + long(start), slots.begin() + long(end),
                         [&](int a, int b) { return center_y(a) < center_y(b); });
        for (std::size_t i = start; i < end; i += kNodeCapacity) {
          std::vector<int> group(slots.begin() + long(i),
                                 slots.begin() + long(std::min(i + kNodeCapacity, end)));
          Node n;
          n.leaf = leaf_level;
          n.box = box_for(group, leaf_level);
          n.children = std::move(group);
          nodes_.push_back(std::move(n));
          next.push_back(int(nodes_.size() - 1));
        }
      }
      slots = std::move(next);
      leaf_level = false;
    }
  }

  void collect(int node_id, const BBox& probe, std::vector<const Entry*>& out) const {
    const Node& n = nodes_[std::size_t(node_id)];
    if (!n.box.overlaps(probe)) return;
    if (n.leaf) {
      for (int id : n.children)
        if (leaves_[std::size_t(id)].box.overlaps(probe))
          out.push_back(&leaves_[std::size_t(id)]);
    } else {
      for (int id : n.children) collect(id, probe, out);
    }
  }
};

inline BBoxIndex build_index(const std::vector<std::pair<std::string, GeometrySet>>& members) {
  std::vector<BBoxIndex::Entry> entries;
  entries.reserve(members.size());
  for (const auto& [iri, set] : members)
    entries.push_back(BBoxIndex::Entry{iri, bbox_of(set)});
  return BBoxIndex::build(std::move(entries));
}

}  // namespace solap
