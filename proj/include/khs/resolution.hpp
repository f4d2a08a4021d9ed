#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <numeric>
#include <vector>

#include "khs/link.hpp"

namespace khs {

namespace detail {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Circles of the complete resolution at cube vertex v: bit k of v selects the
/// 1-smoothing at crossing k (pairs (a,d),(b,c)); otherwise the 0-smoothing
/// (pairs (a,b),(c,d)). Circles are numbered by their smallest arc label.
struct Smoothing {
  std::vector<int> circle_of_arc;  // by dense arc index
  int circle_count = 0;
};

/// Dense arc indices of each crossing, cached for repeated smoothing.
struct CrossingArcs {
  std::vector<std::array<int, 4>> idx;
  int arcs = 0;

  explicit CrossingArcs(const OrientedLinkDiagram& d) : arcs(d.arc_count()) {
    for (const auto& q : d.crossings()) idx.push_back({d.arc_index(q[0]), d.arc_index(q[1]), d.arc_index(q[2]), d.arc_index(q[3])});
  }
};

inline Smoothing smooth(const CrossingArcs& ca, std::uint64_t v) {
  detail::Dsu dsu(ca.arcs);
  for (std::size_t k = 0; k < ca.idx.size(); ++k) {
    const auto& a = ca.idx[k];
    if ((v >> k) & 1U) {
      dsu.unite(a[0], a[3]);
      dsu.unite(a[1], a[2]);
    } else {
      dsu.unite(a[0], a[1]);
      dsu.unite(a[2], a[3]);
    }
  }
  Smoothing s;
  s.circle_of_arc.assign(ca.arcs, -1);
  std::vector<int> root_circle(ca.arcs, -1);
  for (int i = 0; i < ca.arcs; ++i) {
    int r = dsu.find(i);
    if (root_circle[r] < 0) root_circle[r] = s.circle_count++;
    s.circle_of_arc[i] = root_circle[r];
  }
  return s;
}

inline Smoothing smooth(const OrientedLinkDiagram& d, std::uint64_t v) { return smooth(CrossingArcs(d), v); }

/// Vertex of the orientation-respecting resolution: bit k set iff crossing k is negative.
inline std::uint64_t oriented_vertex(const OrientedLinkDiagram& d) {
  std::uint64_t v = 0;
  for (int k = 0; k < d.crossing_count(); ++k)
    if (d.sign(k) < 0) v |= std::uint64_t{1} << k;
  return v;
}

struct PlanarCircle {
  std::vector<int> arcs;  // labels, ascending
  int depth = 0;          // number of circles enclosing it
  int left_region = -1;
  int right_region = -1;
  /// 0 when the region on its left is at even distance from the outer region.
  int label = 0;
};

struct OrientedResolution {
  std::uint64_t vertex = 0;
  std::vector<PlanarCircle> circles;
  std::vector<int> nesting_depth;
  /// Circles meeting each crossing (two entries).
  std::vector<std::array<int, 2>> crossing_to_circles;
  int region_count = 0;
};

/// Seifert-type resolution with nesting data from face tracing of the PD code.
inline OrientedResolution oriented_resolution(const OrientedLinkDiagram& d) {
  if (d.empty()) throw std::invalid_argument("oriented_resolution: empty diagram");
  const int n = d.crossing_count();
  const int na = d.arc_count();
  CrossingArcs ca(d);

  // Arc endpoints.
  std::vector<std::vector<std::pair<int, int>>> ends(na);
  for (int k = 0; k < n; ++k)
    for (int s = 0; s < 4; ++s) ends[ca.idx[k][s]].emplace_back(k, s);
  auto other_end = [&](int k, int s) {
    const auto& e = ends[ca.idx[k][s]];
    return e[0] == std::make_pair(k, s) ? e[1] : e[0];
  };

  // Faces: the dart leaving slot s of crossing k continues, after the arc,
  // through slot t-1 of the crossing it reaches at slot t.
  std::vector<int> face(4 * n, -1);
  std::vector<int> face_size;
  for (int start = 0; start < 4 * n; ++start) {
    if (face[start] >= 0) continue;
    const int f = static_cast<int>(face_size.size());
    face_size.push_back(0);
    int dart = start;
    while (face[dart] < 0) {
      face[dart] = f;
      ++face_size[f];
      auto [k2, t] = other_end(dart / 4, dart % 4);
      dart = 4 * k2 + (t + 3) % 4;
    }
    if (dart != start) throw DiagramError("non-planar PD data: face tracing did not close");
  }
  const int nf = static_cast<int>(face_size.size());

  // Connected pieces and Euler check.
  detail::Dsu piece(std::max(n, 1));
  for (int a = 0; a < na; ++a)
    if (ends[a].size() == 2) piece.unite(ends[a][0].first, ends[a][1].first);
  std::vector<int> piece_crossings(n, 0), piece_faces(n, 0), outer(n, -1);
  for (int k = 0; k < n; ++k) ++piece_crossings[piece.find(k)];
  std::vector<int> face_piece(nf, -1);
  for (int dart = 0; dart < 4 * n; ++dart) face_piece[face[dart]] = piece.find(dart / 4);
  for (int f = 0; f < nf; ++f) {
    int p = face_piece[f];
    ++piece_faces[p];
    if (outer[p] < 0 || face_size[f] > face_size[outer[p]]) outer[p] = f;
  }
  for (int p = 0; p < n; ++p)
    if (piece_crossings[p] > 0 && piece_faces[p] != piece_crossings[p] + 2)
      throw DiagramError("non-planar PD data: " + std::to_string(piece_faces[p]) + " faces for " +
                         std::to_string(piece_crossings[p]) + " crossings");

  // Regions of the smoothing.
  OrientedResolution res;
  res.vertex = oriented_vertex(d);
  const int nloops = static_cast<int>(d.loops().size());
  detail::Dsu reg(nf + nloops + 1);
  const int root = nf + nloops;  // common outer region
  for (int k = 0; k < n; ++k) {
    if ((res.vertex >> k) & 1U) reg.unite(face[4 * k + 0], face[4 * k + 2]);
    else reg.unite(face[4 * k + 1], face[4 * k + 3]);
  }
  for (int p = 0; p < n; ++p)
    if (outer[p] >= 0) reg.unite(outer[p], root);
  std::vector<int> region_id(nf + nloops + 1, -1);
  auto region = [&](int node) {
    int r = reg.find(node);
    if (region_id[r] < 0) region_id[r] = res.region_count++;
    return region_id[r];
  };
  const int root_region = region(root);

  Smoothing sm = smooth(ca, res.vertex);
  res.circles.resize(sm.circle_count);
  for (int a = 0; a < na; ++a) res.circles[sm.circle_of_arc[a]].arcs.push_back(d.arcs()[a]);
  std::vector<bool> sided(sm.circle_count, false);
  for (int a = 0; a < na && true; ++a) {
    const int c = sm.circle_of_arc[a];
    if (sided[c] || ends[a].empty()) continue;
    // Tail of the arc = the endpoint that is not an entry slot.
    auto [k1, s1] = ends[a][0];
    auto [k2, s2] = ends[a][1];
    if (d.entry_slot(k1, role_of_slot(s1)) == s1) {
      std::swap(k1, k2);
      std::swap(s1, s2);
    }
    res.circles[c].left_region = region(face[4 * k1 + s1]);
    res.circles[c].right_region = region(face[4 * k2 + s2]);
    sided[c] = true;
  }
  for (int i = 0; i < nloops; ++i) {
    const int c = sm.circle_of_arc[d.arc_index(d.loops()[i])];
    const int inside = region(nf + i);
    res.circles[c].left_region = d.loop_reversed(i) ? root_region : inside;
    res.circles[c].right_region = d.loop_reversed(i) ? inside : root_region;
  }

  // Regions and circles form a tree; distances from the outer region.
  std::vector<std::vector<int>> adj(res.region_count);
  for (const auto& c : res.circles) {
    adj[c.left_region].push_back(c.right_region);
    adj[c.right_region].push_back(c.left_region);
  }
  if (res.region_count != sm.circle_count + 1) throw DiagramError("non-planar PD data: region count mismatch");
  std::vector<int> dist(res.region_count, -1);
  std::deque<int> queue{root_region};
  dist[root_region] = 0;
  while (!queue.empty()) {
    int r = queue.front();
    queue.pop_front();
    for (int s : adj[r])
      if (dist[s] < 0) {
        dist[s] = dist[r] + 1;
        queue.push_back(s);
      }
  }
  for (auto& c : res.circles) {
    if (dist[c.left_region] < 0 || dist[c.right_region] < 0) throw DiagramError("non-planar PD data: disconnected regions");
    c.depth = std::min(dist[c.left_region], dist[c.right_region]);
    c.label = dist[c.left_region] % 2;
    res.nesting_depth.push_back(c.depth);
  }
  for (int k = 0; k < n; ++k)
    res.crossing_to_circles.push_back({sm.circle_of_arc[ca.idx[k][0]], sm.circle_of_arc[ca.idx[k][2]]});
  return res;
}

}  // namespace khs
