#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypbil/billiard.hpp"

// Filling checks for trajectory families. Geodesics are straight chords in
// the Klein model, so the complement of a family inside the polygon is a
// plain Euclidean segment arrangement: split all chords at their crossings,
// walk the faces, and classify each face by the boundary material it carries.

namespace hypbil {

enum class FaceClass { pure_disc, edge_disc, corner_disc, invalid_face };

struct ArrangementEdge {
  int u = -1, v = -1;
  int tag = 0;  // 0 trajectory, otherwise the polygon side label
};

struct ArrangementFace {
  std::vector<int> vertices;  // cyclic
  std::vector<int> edges;     // edges[i] joins vertices[i] -> vertices[i+1]
};

struct Arrangement {
  std::vector<KleinPoint> vertices;
  std::vector<ArrangementEdge> edges;
  std::vector<ArrangementFace> faces;  // includes the outer face
  int outer_face = -1;
  std::vector<int> corner_vertex;          // arrangement id of table vertex i
  std::vector<double> side_chord_length;   // Euclidean chord length per side
  std::vector<std::string> warnings;
};

namespace detail {

constexpr double snap_tol = 1e-9;

struct RawSegment {
  KleinPoint a, b;
  int tag = 0;
};

inline double seglen(const RawSegment& s) {
  return std::hypot(s.b.x - s.a.x, s.b.y - s.a.y);
}

inline bool same_klein(const KleinPoint& p, const KleinPoint& q,
                       double tol = snap_tol) {
  return std::hypot(p.x - q.x, p.y - q.y) <= tol;
}

inline bool same_segment(const RawSegment& s, const RawSegment& t) {
  return (same_klein(s.a, t.a) && same_klein(s.b, t.b)) ||
         (same_klein(s.a, t.b) && same_klein(s.b, t.a));
}

// distance from x to the supporting line of s
inline double line_distance(const RawSegment& s, const KleinPoint& x) {
  double dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  double len = std::hypot(dx, dy);
  return std::fabs((x.x - s.a.x) * dy - (x.y - s.a.y) * dx) / len;
}

}  // namespace detail

// Splits every trajectory segment and polygon side at all pairwise crossings
// (snap tolerance merges nearby points, so grazing hits collapse into shared
// vertices) and assembles the planar subdivision. Retraced chords appear
// twice in the input and are kept once. Distinct segments overlapping along
// a common line cannot be walked as a subdivision and are rejected.
inline Arrangement build_arrangement(
    const Table& T, const std::vector<BilliardTrajectory>& family) {
  using detail::RawSegment;
  int m = T.side_count();

  std::vector<RawSegment> segs;
  Arrangement A;
  A.side_chord_length.assign(m + 1, 0.0);
  for (int i = 1; i <= m; ++i) {
    RawSegment s{to_klein(T.side(i).start), to_klein(T.side(i).end), i};
    A.side_chord_length[i] = detail::seglen(s);
    segs.push_back(s);
  }
  for (const BilliardTrajectory& traj : family) {
    size_t n = traj.bounce_points.size();
    for (size_t j = 0; j < n; ++j) {
      RawSegment s{to_klein(traj.bounce_points[j]),
                   to_klein(traj.bounce_points[(j + 1) % n]), 0};
      if (detail::seglen(s) <= detail::snap_tol) continue;  // corner tie
      bool dup = false;
      for (const RawSegment& t : segs)
        if (t.tag == 0 && detail::same_segment(s, t)) {
          dup = true;
          break;
        }
      if (!dup) segs.push_back(s);
    }
  }

  size_t ns = segs.size();
  std::vector<std::vector<KleinPoint>> cuts(ns);
  for (size_t i = 0; i < ns; ++i) {
    double li = detail::seglen(segs[i]);
    for (size_t j = i + 1; j < ns; ++j) {
      double lj = detail::seglen(segs[j]);
      double ax = segs[i].b.x - segs[i].a.x, ay = segs[i].b.y - segs[i].a.y;
      double bx = segs[j].b.x - segs[j].a.x, by = segs[j].b.y - segs[j].a.y;
      double den = ax * by - ay * bx;
      if (std::fabs(den) < 1e-12 * li * lj) {
        // parallel; reject overlap along a shared line, note a near miss
        if (detail::line_distance(segs[i], segs[j].a) < detail::snap_tol &&
            detail::line_distance(segs[i], segs[j].b) < detail::snap_tol)
          throw GeometryError(
              "degenerate arrangement: distinct segments share a line");
        continue;
      }
      double ex = segs[j].a.x - segs[i].a.x, ey = segs[j].a.y - segs[i].a.y;
      double s = (ex * by - ey * bx) / den;
      double t = (ex * ay - ey * ax) / den;
      double si = detail::snap_tol / li, sj = detail::snap_tol / lj;
      if (s < -si || s > 1.0 + si || t < -sj || t > 1.0 + sj) continue;
      KleinPoint x{segs[i].a.x + s * ax, segs[i].a.y + s * ay};
      cuts[i].push_back(x);
      cuts[j].push_back(x);
      // trajectory endpoints interior to a side are ordinary bounce points;
      // a crossing of two distinct chords right at an endpoint is suspect
      bool grazing_i = std::min(s, 1.0 - s) * li < detail::snap_tol;
      bool grazing_j = std::min(t, 1.0 - t) * lj < detail::snap_tol;
      if (segs[i].tag == 0 && segs[j].tag == 0 && grazing_i != grazing_j) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "grazing intersection near (%.12f, %.12f)", x.x, x.y);
        A.warnings.push_back(buf);
      }
    }
  }

  // snap: cluster every endpoint and crossing, first point wins
  std::vector<KleinPoint> pool;
  auto vertex_id = [&](const KleinPoint& p) {
    for (size_t v = 0; v < pool.size(); ++v)
      if (detail::same_klein(pool[v], p)) return static_cast<int>(v);
    pool.push_back(p);
    return static_cast<int>(pool.size() - 1);
  };

  std::map<std::pair<int, int>, int> edge_of;
  for (size_t i = 0; i < ns; ++i) {
    const RawSegment& s = segs[i];
    double ax = s.b.x - s.a.x, ay = s.b.y - s.a.y;
    double norm = ax * ax + ay * ay;
    std::vector<std::pair<double, int>> stops;
    stops.push_back({0.0, vertex_id(s.a)});
    stops.push_back({1.0, vertex_id(s.b)});
    for (const KleinPoint& x : cuts[i]) {
      double u = ((x.x - s.a.x) * ax + (x.y - s.a.y) * ay) / norm;
      stops.push_back({u, vertex_id(x)});
    }
    std::sort(stops.begin(), stops.end());
    for (size_t r = 1; r < stops.size(); ++r) {
      int u = stops[r - 1].second, v = stops[r].second;
      if (u == v) continue;
      auto key = std::minmax(u, v);
      auto it = edge_of.find({key.first, key.second});
      if (it != edge_of.end()) {
        if (A.edges[it->second].tag != s.tag)
          throw GeometryError(
              "degenerate arrangement: trajectory overlaps a side");
        continue;
      }
      edge_of[{key.first, key.second}] = static_cast<int>(A.edges.size());
      A.edges.push_back({u, v, s.tag});
    }
  }
  A.vertices = pool;
  for (const DiscPoint& v : T.vertices) A.corner_vertex.push_back(vertex_id(to_klein(v)));

  // face walk over half-edges, counterclockwise-sorted around each vertex
  int ne = static_cast<int>(A.edges.size());
  std::vector<std::vector<std::pair<double, int>>> out(A.vertices.size());
  auto half_from = [&](int h) { return h % 2 == 0 ? A.edges[h / 2].u : A.edges[h / 2].v; };
  auto half_to = [&](int h) { return h % 2 == 0 ? A.edges[h / 2].v : A.edges[h / 2].u; };
  for (int h = 0; h < 2 * ne; ++h) {
    const KleinPoint& p = A.vertices[half_from(h)];
    const KleinPoint& q = A.vertices[half_to(h)];
    out[half_from(h)].push_back({std::atan2(q.y - p.y, q.x - p.x), h});
  }
  for (auto& lst : out) std::sort(lst.begin(), lst.end());

  // successor of u->v: the clockwise-next outgoing half-edge after v->u
  std::vector<int> next(2 * ne, -1);
  for (int h = 0; h < 2 * ne; ++h) {
    int twin = h ^ 1;
    const auto& lst = out[half_to(h)];
    size_t pos = 0;
    while (lst[pos].second != twin) ++pos;
    next[h] = lst[(pos + lst.size() - 1) % lst.size()].second;
  }

  std::vector<char> seen(2 * ne, 0);
  for (int h0 = 0; h0 < 2 * ne; ++h0) {
    if (seen[h0]) continue;
    ArrangementFace f;
    int h = h0;
    do {
      seen[h] = 1;
      f.vertices.push_back(half_from(h));
      f.edges.push_back(h / 2);
      h = next[h];
    } while (h != h0);
    A.faces.push_back(std::move(f));
  }

  for (size_t fi = 0; fi < A.faces.size(); ++fi) {
    const auto& vs = A.faces[fi].vertices;
    double area2 = 0.0;
    for (size_t r = 0; r < vs.size(); ++r) {
      const KleinPoint& p = A.vertices[vs[r]];
      const KleinPoint& q = A.vertices[vs[(r + 1) % vs.size()]];
      area2 += p.x * q.y - p.y * q.x;
    }
    if (area2 < 0.0) {
      if (A.outer_face >= 0)
        throw GeometryError("arrangement face walk produced two outer faces");
      A.outer_face = static_cast<int>(fi);
    }
  }
  if (A.outer_face < 0)
    throw GeometryError("arrangement face walk found no outer face");
  return A;
}

// A face may keep a side either whole (both endpoints included) or only
// partially; completeness is read off the total length of the side's pieces
// on the face boundary.
inline FaceClass classify_face(const Arrangement& A, const ArrangementFace& f) {
  size_t m = A.corner_vertex.size();
  std::vector<double> side_len(m + 1, 0.0);
  bool any_side = false;
  for (int e : f.edges) {
    int tag = A.edges[e].tag;
    if (tag == 0) continue;
    any_side = true;
    const KleinPoint& p = A.vertices[A.edges[e].u];
    const KleinPoint& q = A.vertices[A.edges[e].v];
    side_len[tag] += std::hypot(p.x - q.x, p.y - q.y);
  }
  std::vector<int> corners;
  for (size_t i = 0; i < m; ++i)
    for (int v : f.vertices)
      if (v == A.corner_vertex[i]) {
        corners.push_back(static_cast<int>(i));
        break;
      }

  if (!any_side) return corners.empty() ? FaceClass::pure_disc : FaceClass::invalid_face;

  std::vector<int> touched, complete;
  for (size_t s = 1; s <= m; ++s) {
    if (side_len[s] <= 0.0) continue;
    touched.push_back(static_cast<int>(s));
    if (side_len[s] >= A.side_chord_length[s] - detail::snap_tol)
      complete.push_back(static_cast<int>(s));
  }

  // material from one side only: either the whole side with exactly its two
  // endpoints, or a vertex-free arc of it (the strip between two consecutive
  // bounce points, which doubles to a disc across the side)
  if (touched.size() == 1) {
    int s = touched[0];
    if (complete.empty()) return corners.empty() ? FaceClass::edge_disc : FaceClass::invalid_face;
    if (corners.size() == 2) {
      int lo = s - 1, hi = s % static_cast<int>(m);  // side s joins corners s-1, s
      std::vector<int> want{std::min(lo, hi), std::max(lo, hi)};
      std::sort(corners.begin(), corners.end());
      if (corners == want) return FaceClass::edge_disc;
    }
    return FaceClass::invalid_face;
  }
  // parts of two adjacent sides, with exactly the shared corner
  if (touched.size() == 2 && complete.empty() && corners.size() == 1) {
    int s1 = touched[0], s2 = touched[1];
    int shared = -1;
    if (s2 == s1 + 1) shared = s1;                                  // corner s1
    else if (s1 == 1 && s2 == static_cast<int>(m)) shared = 0;      // corner 0
    if (shared >= 0 && corners[0] == shared % static_cast<int>(m)) {
      // side labels s, s+1 meet at table vertex s (labels 1-based,
      // vertices 0-based); sides m and 1 meet at vertex 0
      return FaceClass::corner_disc;
    }
  }
  return FaceClass::invalid_face;
}

struct FillingVerdict {
  std::vector<FaceClass> classes;  // interior faces, in arrangement order
  bool filling = false;
};

inline FillingVerdict classify_faces(const Arrangement& A) {
  FillingVerdict out;
  out.filling = true;
  for (size_t fi = 0; fi < A.faces.size(); ++fi) {
    if (static_cast<int>(fi) == A.outer_face) continue;
    out.classes.push_back(classify_face(A, A.faces[fi]));
    if (out.classes.back() == FaceClass::invalid_face) out.filling = false;
  }
  if (out.classes.empty()) out.filling = false;
  return out;
}

// hyperbolic face area via the angle deficit: (n-2)*pi minus interior angles
inline double face_area(const Arrangement& A, const ArrangementFace& f) {
  size_t n = f.vertices.size();
  double angles = 0.0;
  for (size_t r = 0; r < n; ++r) {
    DiscPoint x = from_klein(A.vertices[f.vertices[r]]);
    DiscPoint p = from_klein(A.vertices[f.vertices[(r + n - 1) % n]]);
    DiscPoint q = from_klein(A.vertices[f.vertices[(r + 1) % n]]);
    double tp = direction_from(x, p), tq = direction_from(x, q);
    double d = std::fmod(tp - tq, 2.0 * pi);
    if (d < 0.0) d += 2.0 * pi;
    // faces are geodesically convex, so the interior angle is the one <= pi
    angles += std::min(d, 2.0 * pi - d);
  }
  return (static_cast<double>(n) - 2.0) * pi - angles;
}

struct FillingReport {
  Arrangement arrangement;
  FillingVerdict verdict;
  std::vector<double> areas;  // per interior face
  double total_area = 0.0;
};

inline FillingReport filling_report(
    const Table& T, const std::vector<BilliardTrajectory>& family) {
  FillingReport rep;
  rep.arrangement = build_arrangement(T, family);
  rep.verdict = classify_faces(rep.arrangement);
  for (size_t fi = 0; fi < rep.arrangement.faces.size(); ++fi) {
    if (static_cast<int>(fi) == rep.arrangement.outer_face) continue;
    rep.areas.push_back(face_area(rep.arrangement, rep.arrangement.faces[fi]));
    rep.total_area += rep.areas.back();
  }
  return rep;
}

inline bool is_filling(const Table& T,
                       const std::vector<BilliardTrajectory>& family) {
  return classify_faces(build_arrangement(T, family)).filling;
}

// the full label-rotation orbit of one sequence, as a family
inline std::vector<BilliardTrajectory> rotation_orbit(
    const Table& T, const BilliardSequence& a) {
  std::vector<BilliardTrajectory> fam;
  int m = T.side_count();
  for (int j = 0; j < m; ++j)
    fam.push_back(trajectory(T, rotate_sequence(a, j, m)));
  return fam;
}

}  // namespace hypbil
