#pragma once

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "hypbil/geometry.hpp"

// Billiard tables: right-angled 2k-gons and Lambert quadrilaterals, built by
// developing a turtle path (forward translation along a side, left turn by
// the exterior angle at each vertex) and closing the holonomy product with a
// Newton solve on the last three side lengths.
//
// Conventions fixed here and relied on everywhere else:
//   * sides carry 1-based labels, anticlockwise; odd labels are "blue", even
//     labels "red"
//   * vertices[i] is the start of side i+1, so side l runs from vertices[l-1]
//     to vertices[l % m]; the interior angle stored at index i sits at
//     vertices[i] between sides i and i+1
//   * canonical placement: the vertex barycenter (Frechet mean) sits at the
//     disc origin and the midpoint of side 1 on the positive x-axis

namespace hypbil {

struct Side {
  Geodesic line;
  DiscPoint start, end;
  double length;
};

struct Table {
  std::vector<Side> sides;
  std::vector<DiscPoint> vertices;
  std::vector<double> angles;  // interior, radians
  double holonomy_residual = 0.0;

  int side_count() const { return static_cast<int>(sides.size()); }
  const Side& side(int label) const { return sides.at(label - 1); }
  std::vector<double> side_lengths() const {
    std::vector<double> out;
    out.reserve(sides.size());
    for (const Side& s : sides) out.push_back(s.length);
    return out;
  }
};

inline bool side_is_blue(int label) { return label % 2 == 1; }

struct RightAngledPolygon : Table {
  int k = 0;  // 2k sides
};

struct LambertQuad : Table {
  int k = 0;                 // acute angle pi/k, between sides 3 and 4
  int acute_vertex_index = 3;
  double t = 0.0;            // length of side 1 (side "a")
  double side_a = 0.0, side_b = 0.0;  // sides 1 and 2
};

// ---------------------------------------------------------------------------
// development

namespace detail {

inline Isometry turn_left(double phi) { return rotation_about_origin(phi); }

// base geodesic of the turtle: through the frame point, along its forward
// direction (ideal endpoints -1 and +1 in the half-plane)
inline Geodesic base_line() {
  return Geodesic(pi / 2.0, 3.0 * pi / 2.0);
}

inline Isometry holonomy(const std::vector<double>& sides,
                         const std::vector<double>& turns) {
  Isometry H = Isometry::identity();
  for (size_t i = 0; i < sides.size(); ++i)
    H = H * forward_translation(sides[i]) * turn_left(turns[i]);
  return H;
}

// zero exactly when the closing product is +-identity
inline std::array<double, 3> closing_residual(const Isometry& H) {
  return {H.b(), H.c(), H.a() - H.d()};
}

inline double residual_norm(const std::array<double, 3>& r) {
  double n = std::max({std::fabs(r[0]), std::fabs(r[1]), std::fabs(r[2])});
  return std::isfinite(n) ? n : std::numeric_limits<double>::infinity();
}

// 3x3 linear solve, partial pivoting
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> A,
                                    std::array<double, 3> b) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    if (std::fabs(A[col][col]) < 1e-300)
      throw GeometryError("no closing solution near the seed: singular step");
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      double f = A[r][col] / A[col][col];
      for (int c = col; c < 3; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  return {b[0] / A[0][0], b[1] / A[1][1], b[2] / A[2][2]};
}

// Newton on the three side lengths at positions idx, driving the closing
// residual to zero; central-difference Jacobian, damped steps
inline void solve_closing(std::vector<double>& sides,
                          const std::vector<double>& turns,
                          const std::array<int, 3>& idx,
                          double tol = solve_tol) {
  const double fd_step = 1e-7;
  auto residual = [&](void) -> std::array<double, 3> {
    try {
      return closing_residual(holonomy(sides, turns));
    } catch (const GeometryError&) {
      double inf = std::numeric_limits<double>::infinity();
      return {inf, inf, inf};
    }
  };
  std::array<double, 3> r = residual();
  for (int iter = 0; iter < 100; ++iter) {
    if (residual_norm(r) < tol) return;
    std::array<std::array<double, 3>, 3> J{};
    for (int j = 0; j < 3; ++j) {
      double save = sides[idx[j]];
      sides[idx[j]] = save + fd_step;
      std::array<double, 3> rp = residual();
      sides[idx[j]] = save - fd_step;
      std::array<double, 3> rm = residual();
      sides[idx[j]] = save;
      for (int i = 0; i < 3; ++i) J[i][j] = (rp[i] - rm[i]) / (2.0 * fd_step);
    }
    std::array<double, 3> step = solve3(J, r);
    double cap = std::max({std::fabs(step[0]), std::fabs(step[1]),
                           std::fabs(step[2])});
    if (!std::isfinite(cap))
      throw GeometryError("no closing solution near the seed: step blew up");
    double damp = cap > 1.0 ? 1.0 / cap : 1.0;
    std::array<double, 3> saved = {sides[idx[0]], sides[idx[1]],
                                   sides[idx[2]]};
    for (int tries = 0; tries < 12; ++tries) {
      for (int j = 0; j < 3; ++j) sides[idx[j]] = saved[j] - damp * step[j];
      std::array<double, 3> rn = residual();
      if (residual_norm(rn) < residual_norm(r) || tries == 11) {
        r = rn;
        break;
      }
      damp /= 2.0;
    }
  }
  if (residual_norm(r) >= tol)
    throw GeometryError("no closing solution near the seed: Newton stagnated");
}

inline DiscPoint frechet_mean(const std::vector<DiscPoint>& pts) {
  double sx = 0.0, sy = 0.0;
  for (const DiscPoint& p : pts) {
    sx += p.x;
    sy += p.y;
  }
  DiscPoint m{sx / pts.size(), sy / pts.size()};
  for (int iter = 0; iter < 200; ++iter) {
    Isometry T = translate_to_origin(m);
    double wx = 0.0, wy = 0.0;
    for (const DiscPoint& p : pts) {
      DiscPoint u = T.apply(p);
      double r = std::sqrt(u.norm2());
      if (r < 1e-300) continue;
      double d = 2.0 * std::atanh(r);
      wx += u.x / r * d;
      wy += u.y / r * d;
    }
    wx /= pts.size();
    wy /= pts.size();
    double wn = std::hypot(wx, wy);
    if (wn < 1e-14) break;
    double rad = std::tanh(wn / 2.0);
    m = T.inverse().apply(DiscPoint{wx / wn * rad, wy / wn * rad});
  }
  return m;
}

// orientation-preserving isometry taking the polygon to canonical placement
inline Isometry canonical_placement(const std::vector<DiscPoint>& verts) {
  Isometry W1 = translate_to_origin(frechet_mean(verts));
  DiscPoint mid = geodesic_midpoint(W1.apply(verts[0]), W1.apply(verts[1]));
  double alpha = std::atan2(mid.y, mid.x);
  return rotation_about_origin(-alpha) * W1;
}

inline bool segments_cross(const Chord& A, const Chord& B) {
  auto cross = [](double ox, double oy, double ax, double ay, double bx,
                  double by) {
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
  };
  double d1 = cross(B.p.x, B.p.y, B.q.x, B.q.y, A.p.x, A.p.y);
  double d2 = cross(B.p.x, B.p.y, B.q.x, B.q.y, A.q.x, A.q.y);
  double d3 = cross(A.p.x, A.p.y, A.q.x, A.q.y, B.p.x, B.p.y);
  double d4 = cross(A.p.x, A.p.y, A.q.x, A.q.y, B.q.x, B.q.y);
  const double eps = 1e-12;
  return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
         ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

// assemble a Table from placed vertices and side geodesics, measuring angles
// and validating closure, orientation, and simplicity
inline Table assemble_table(std::vector<DiscPoint> verts,
                            std::vector<Geodesic> lines, double residual) {
  size_t m = verts.size();
  Table T;
  T.holonomy_residual = residual;
  T.vertices = std::move(verts);
  double shoelace = 0.0;
  std::vector<KleinPoint> kv;
  kv.reserve(m);
  for (const DiscPoint& v : T.vertices) kv.push_back(to_klein(v));
  for (size_t i = 0; i < m; ++i) {
    const KleinPoint& a = kv[i];
    const KleinPoint& b = kv[(i + 1) % m];
    shoelace += a.x * b.y - a.y * b.x;
  }
  if (shoelace <= 0.0)
    throw GeometryError("polygon orientation is not anticlockwise");
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // adjacent around the wrap
      if (segments_cross(Chord{kv[i], kv[(i + 1) % m]},
                         Chord{kv[j], kv[(j + 1) % m]}))
        throw GeometryError("degenerate polygon: self-intersection");
    }
  for (size_t i = 0; i < m; ++i) {
    DiscPoint a = T.vertices[i];
    DiscPoint b = T.vertices[(i + 1) % m];
    T.sides.push_back(Side{lines[i], a, b, dist(a, b)});
    T.angles.push_back(angle_at_vertex(T.vertices[i],
                                       T.vertices[(i + m - 1) % m],
                                       T.vertices[(i + 1) % m]));
  }
  return T;
}

// develop the closed turtle path and return the canonically placed table
inline Table develop(const std::vector<double>& sides,
                     const std::vector<double>& turns) {
  size_t m = sides.size();
  for (double s : sides)
    if (!(s > 0.0))
      throw GeometryError("degenerate polygon: nonpositive side length");
  Isometry H = holonomy(sides, turns);
  double res = residual_norm(closing_residual(H));
  if (res > 1e-9)
    throw GeometryError("polygon does not close: holonomy residual too large");

  std::vector<Isometry> frames;
  frames.reserve(m);
  Isometry F = Isometry::identity();
  for (size_t i = 0; i < m; ++i) {
    frames.push_back(F);
    F = F * forward_translation(sides[i]) * turn_left(turns[i]);
  }
  std::vector<DiscPoint> verts;
  verts.reserve(m);
  for (const Isometry& fr : frames) verts.push_back(fr.apply(DiscPoint{0, 0}));

  Isometry W = canonical_placement(verts);
  std::vector<Geodesic> lines;
  lines.reserve(m);
  for (size_t i = 0; i < m; ++i)
    lines.push_back((W * frames[i]).apply(base_line()));
  for (DiscPoint& v : verts) v = W.apply(v);
  return assemble_table(std::move(verts), std::move(lines), res);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// constructions

// side length of the regular right-angled 2k-gon: cosh(s/2) = sqrt(2) cos(pi/2k)
inline double regular_side_length(int k) {
  return 2.0 * std::acosh(std::sqrt(2.0) * std::cos(pi / (2.0 * k)));
}

inline RightAngledPolygon regular_polygon(int k) {
  if (k < 3) throw GeometryError("right-angled polygon needs k >= 3");
  std::vector<double> sides(2 * k, regular_side_length(k));
  std::vector<double> turns(2 * k, pi / 2.0);
  RightAngledPolygon P;
  static_cast<Table&>(P) = detail::develop(sides, turns);
  P.k = k;
  return P;
}

// Build the right-angled 2k-gon whose first 2k-3 sides are prescribed; the
// remaining three are solved from the closing condition, seeded at the
// regular value (or at an explicit seed).
inline RightAngledPolygon polygon_from_sides(
    int k, const std::vector<double>& free_sides,
    const std::vector<double>& seed = {}) {
  if (k < 3) throw GeometryError("right-angled polygon needs k >= 3");
  size_t m = 2 * static_cast<size_t>(k);
  if (free_sides.size() != m - 3)
    throw GeometryError("polygon_from_sides expects 2k-3 side lengths");
  for (double s : free_sides)
    if (!(s > 0.0))
      throw GeometryError("degenerate polygon: nonpositive side length");
  double reg = regular_side_length(k);
  std::vector<double> sides(free_sides);
  sides.resize(m, reg);
  if (!seed.empty()) {
    if (seed.size() != 3)
      throw GeometryError("seed must hold the three unknown side lengths");
    for (int j = 0; j < 3; ++j) sides[m - 3 + j] = seed[j];
  }
  std::vector<double> turns(m, pi / 2.0);
  const std::array<int, 3> idx = {static_cast<int>(m) - 3,
                                  static_cast<int>(m) - 2,
                                  static_cast<int>(m) - 1};
  try {
    detail::solve_closing(sides, turns, idx);
  } catch (const GeometryError&) {
    // continuation from the regular polygon toward the requested sides
    for (size_t i = 0; i < m; ++i) sides[i] = reg;
    const int steps = 32;
    for (int st = 1; st <= steps; ++st) {
      for (size_t i = 0; i < m - 3; ++i)
        sides[i] = reg + (free_sides[i] - reg) * st / steps;
      detail::solve_closing(sides, turns, idx);
    }
  }
  for (int j = 0; j < 3; ++j)
    if (!(sides[m - 3 + j] > 0.0))
      throw GeometryError("degenerate polygon: nonpositive solved side");
  RightAngledPolygon P;
  static_cast<Table&>(P) = detail::develop(sides, turns);
  P.k = k;
  return P;
}

// parameter of the symmetric Lambert quadrilateral: sinh(t)^2 = cos(pi/k)
inline double regular_lambert_parameter(int k) {
  return std::asinh(std::sqrt(std::cos(pi / k)));
}

// Lambert quadrilateral with three right angles and acute angle pi/k between
// sides 3 and 4; t prescribes side 1, the lower-labeled of the two sides
// meeting at the right-angled vertex opposite the acute one. Sides 2, 3, 4
// are solved from the closing condition.
inline LambertQuad lambert_quad(int k, double t) {
  if (k < 3) throw GeometryError("Lambert quadrilateral needs k >= 3");
  if (!(t > 0.0)) throw GeometryError("Lambert parameter must be positive");
  double phi = pi / k;
  std::vector<double> turns = {pi / 2.0, pi / 2.0, pi - phi, pi / 2.0};

  double tstar = regular_lambert_parameter(k);
  double ustar = std::acosh((std::sqrt(2.0) / 2.0) / std::sin(phi / 2.0));
  auto closed_sides = [&](double tv,
                          std::vector<double> guess) -> std::vector<double> {
    std::vector<double> sides = {tv, guess[0], guess[1], guess[2]};
    detail::solve_closing(sides, turns, {1, 2, 3});
    return sides;
  };

  std::vector<double> guess = {std::asinh(std::cos(phi) / std::sinh(t)), ustar,
                               ustar};
  std::vector<double> sides;
  try {
    sides = closed_sides(t, guess);
  } catch (const GeometryError&) {
    // continuation from the symmetric quadrilateral
    guess = {tstar, ustar, ustar};
    const int steps = 32;
    for (int i = 1; i <= steps; ++i) {
      double tv = tstar + (t - tstar) * i / steps;
      sides = closed_sides(tv, guess);
      guess = {sides[1], sides[2], sides[3]};
    }
  }
  for (double s : sides)
    if (!(s > 0.0))
      throw GeometryError("degenerate quadrilateral: nonpositive solved side");

  LambertQuad Q;
  static_cast<Table&>(Q) = detail::develop(sides, turns);
  Q.k = k;
  Q.t = t;
  Q.side_a = sides[0];
  Q.side_b = sides[1];
  for (int i = 0; i < 3; ++i)
    if (std::fabs(Q.angles[i] - pi / 2.0) > 1e-8)
      throw GeometryError("Lambert quadrilateral: right angle check failed");
  if (std::fabs(Q.angles[3] - phi) > 1e-8)
    throw GeometryError("Lambert quadrilateral: acute angle check failed");
  return Q;
}

inline LambertQuad regular_lambert(int k) {
  return lambert_quad(k, regular_lambert_parameter(k));
}

// ---------------------------------------------------------------------------
// gluing 2k alternately-reflected quadrilateral copies around the acute vertex

// Bookkeeping of the glued picture: copies are indexed 0..2k-1 anticlockwise
// around the acute vertex, copy 0 being Q itself. Sides 3 and 4 of each copy
// are interior spokes; sides 1 and 2 land on the outer boundary.
struct GlueLayout {
  int k = 0;
  std::vector<int> outer1, outer2;          // polygon label of sides 1 and 2
  std::vector<int> across3, across4;        // neighbor copy through sides 3, 4

  int copies() const { return 2 * k; }
  // polygon label hit when the quadrilateral trajectory bounces at a rim side
  int outer_label(int copy, int q_side) const {
    return q_side == 1 ? outer1[copy] : outer2[copy];
  }
  int neighbor(int copy, int q_side) const {
    return q_side == 3 ? across3[copy] : across4[copy];
  }
};

struct GluedPolygon {
  RightAngledPolygon polygon;
  GlueLayout layout;
  double side_a = 0.0, side_b = 0.0;  // quadrilateral rim sides
};

// Reflecting a copy across a spoke continues each rim side straight through
// the shared right-angled vertex (the rim sides are orthogonal to the spokes),
// so the outer boundary is a right-angled 2k-gon whose sides alternate twice
// the b-side and twice the a-side of the quadrilateral.
inline GluedPolygon glue_lambert(const LambertQuad& Q) {
  int k = Q.k;
  int n = 2 * k;
  std::vector<Isometry> g;
  g.reserve(n);
  g.push_back(Isometry::identity());
  Geodesic ray_prev = Q.side(4).line;  // spoke shared with copy 2k-1
  Geodesic ray_cur = Q.side(3).line;   // spoke shared with copy 1
  for (int j = 1; j < n; ++j) {
    Isometry refl = reflection_across(ray_cur);
    g.push_back(refl * g[j - 1]);
    Geodesic ray_next = refl.apply(ray_prev);
    ray_prev = ray_cur;
    ray_cur = ray_next;
  }

  DiscPoint corner = Q.vertices[1];  // right angle opposite the acute vertex
  std::vector<DiscPoint> verts;
  verts.reserve(n);
  for (int j = 0; j < n; ++j) verts.push_back(g[j].apply(corner));

  // side l of the polygon runs from verts[l-1] to verts[l]; odd sides carry
  // the b rim (side 2 images), even sides the a rim (side 1 images)
  std::vector<Geodesic> lines;
  lines.reserve(n);
  for (int j = 0; j < n; ++j) {
    int q_side = (j % 2 == 0) ? 2 : 1;
    lines.push_back(g[j].apply(Q.side(q_side).line));
  }

  Isometry W = detail::canonical_placement(verts);
  for (DiscPoint& v : verts) v = W.apply(v);
  for (Geodesic& L : lines) L = W.apply(L);

  GluedPolygon out;
  static_cast<Table&>(out.polygon) =
      detail::assemble_table(std::move(verts), std::move(lines),
                             Q.holonomy_residual);
  out.polygon.k = k;
  out.side_a = Q.side_a;
  out.side_b = Q.side_b;

  GlueLayout& lay = out.layout;
  lay.k = k;
  lay.outer1.resize(n);
  lay.outer2.resize(n);
  lay.across3.resize(n);
  lay.across4.resize(n);
  for (int j = 0; j < n; ++j) {
    lay.outer2[j] = 2 * (j / 2) + 1;
    lay.outer1[j] = (j % 2 == 1) ? j + 1 : (j == 0 ? n : j);
    lay.across4[j] = (j % 2 == 0) ? (j + n - 1) % n : (j + 1) % n;
    lay.across3[j] = (j % 2 == 0) ? (j + 1) % n : (j + n - 1) % n;
  }
  for (int j = 0; j < n; ++j) {
    double want = (j % 2 == 0) ? 2.0 * Q.side_b : 2.0 * Q.side_a;
    if (std::fabs(out.polygon.sides[j].length - want) > 1e-8)
      throw GeometryError("glued polygon side lengths are inconsistent");
  }
  return out;
}

// ---------------------------------------------------------------------------
// diagonals and relabeling

struct GreenArc {
  int target_label;  // side 5, 7, ..., 2k-3
  double length;
  DiscPoint foot_on_side1, foot_on_target;
  Geodesic line;
};

// common perpendiculars from side 1 to the odd sides 5, 7, ..., 2k-3 (empty
// for k = 3); feet must land inside the open side segments
inline std::vector<GreenArc> green_diagonals(const RightAngledPolygon& P) {
  std::vector<GreenArc> arcs;
  auto foot_on = [&](const Geodesic& perp, const Side& s) {
    auto p = intersect(perp, s.line);
    if (!p)
      throw GeometryError("green diagonal misses its side geodesic");
    double u = chord_param(to_klein(s.start), to_klein(s.end), to_klein(*p));
    if (!(u > 0.0 && u < 1.0) || dist(*p, s.start) <= geom_tol ||
        dist(*p, s.end) <= geom_tol)
      throw GeometryError("green diagonal foot outside the open side");
    return *p;
  };
  for (int label = 5; label <= 2 * P.k - 3; label += 2) {
    Perpendicular cp = common_perpendicular(P.side(1).line, P.side(label).line);
    GreenArc arc{label, cp.distance, foot_on(cp.line, P.side(1)),
                 foot_on(cp.line, P.side(label)), cp.line};
    arcs.push_back(arc);
  }
  return arcs;
}

// rotate labels so that old side r+1 becomes side 1; placement is untouched
template <typename TableLike>
inline TableLike rotate_labels(const TableLike& P, int r) {
  int m = P.side_count();
  r = ((r % m) + m) % m;
  TableLike out = P;
  for (int i = 0; i < m; ++i) {
    out.sides[i] = P.sides[(i + r) % m];
    out.vertices[i] = P.vertices[(i + r) % m];
    out.angles[i] = P.angles[(i + r) % m];
  }
  return out;
}

inline bool same_polygon(const Table& A, const Table& B, double tol = geom_tol) {
  if (A.side_count() != B.side_count()) return false;
  for (int i = 0; i < A.side_count(); ++i)
    if (!same_point(A.vertices[i], B.vertices[i], tol)) return false;
  return true;
}

}  // namespace hypbil
