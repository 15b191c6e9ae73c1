#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

// Plane hyperbolic geometry on the Poincare disc, with all matrix work done
// in the upper half-plane model through a fixed Cayley transform
//
//   z_half_plane -> (z - i) / (z + i) = w_disc,   i <-> disc origin.
//
// Lengths and angles are hyperbolic throughout; the Klein model appears only
// as a computational device (geodesics become straight chords).

namespace hypbil {

inline constexpr double pi = 3.14159265358979323846;

// Numerical policy: fixed defaults, overridable where a function takes an
// explicit tolerance.
inline constexpr double geom_tol = 1e-9;      // point/segment coincidence
inline constexpr double matrix_tol = 1e-10;   // identity/closure residuals
inline constexpr double solve_tol = 1e-12;    // root finding
inline constexpr double classify_tol = 1e-9;  // |trace| - 2 threshold

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// points

struct DiscPoint {
  double x = 0.0;
  double y = 0.0;
  double norm2() const { return x * x + y * y; }
};

struct KleinPoint {
  double x = 0.0;
  double y = 0.0;
  double norm2() const { return x * x + y * y; }
};

inline cplx disc_to_half_plane(DiscPoint p) {
  cplx w(p.x, p.y);
  return cplx(0.0, 1.0) * (1.0 + w) / (1.0 - w);
}

inline DiscPoint half_plane_to_disc(cplx z) {
  cplx w = (z - cplx(0.0, 1.0)) / (z + cplx(0.0, 1.0));
  return {w.real(), w.imag()};
}

inline double dist(DiscPoint p, DiscPoint q) {
  double dx = p.x - q.x;
  double dy = p.y - q.y;
  double den = (1.0 - p.norm2()) * (1.0 - q.norm2());
  return std::acosh(1.0 + 2.0 * (dx * dx + dy * dy) / den);
}

inline bool same_point(DiscPoint p, DiscPoint q, double tol = geom_tol) {
  return dist(p, q) < tol;
}

inline KleinPoint to_klein(DiscPoint p) {
  double s = 1.0 + p.norm2();
  return {2.0 * p.x / s, 2.0 * p.y / s};
}

inline DiscPoint from_klein(KleinPoint q) {
  double n = q.norm2();
  double s = 1.0 + std::sqrt(std::max(0.0, 1.0 - n));
  return {q.x / s, q.y / s};
}

// ---------------------------------------------------------------------------
// ideal points

// Ideal point as a projective pair on the half-plane boundary: t = x/w with
// infinity = (1 : 0). Projective form keeps the point at infinity out of the
// case analysis; matrices act linearly.
struct BoundaryPoint {
  double x = 0.0;
  double w = 0.0;
};

// Boundary correspondence under the Cayley transform: the disc boundary angle
// theta matches the half-plane boundary point -cot(theta/2), i.e. the
// projective pair (-cos(theta/2) : sin(theta/2)); theta = 0 is infinity.
inline BoundaryPoint boundary_from_angle(double theta) {
  return {-std::cos(theta / 2.0), std::sin(theta / 2.0)};
}

inline double boundary_to_angle(BoundaryPoint b) {
  double theta = std::atan2(-2.0 * b.x * b.w, b.x * b.x - b.w * b.w);
  if (theta < 0.0) theta += 2.0 * pi;
  return theta;
}

inline double angle_gap(double a, double b) {
  double d = std::fabs(std::fmod(a - b, 2.0 * pi));
  if (d > pi) d = 2.0 * pi - d;
  return d;
}

// wrap into (-pi, pi]
inline double wrap_pi(double a) {
  a = std::fmod(a, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  if (a > pi) a -= 2.0 * pi;
  return a;
}

// ---------------------------------------------------------------------------
// geodesics

// Complete geodesic, identified by its two ideal endpoints (disc boundary
// angles in [0, 2*pi), stored sorted).
class Geodesic {
 public:
  Geodesic(double a, double b) : t1_(norm_angle(a)), t2_(norm_angle(b)) {
    if (t1_ > t2_) std::swap(t1_, t2_);
    if (angle_gap(t1_, t2_) < 1e-13)
      throw GeometryError("degenerate geodesic: coincident ideal endpoints");
  }

  double theta1() const { return t1_; }
  double theta2() const { return t2_; }
  BoundaryPoint end1() const { return boundary_from_angle(t1_); }
  BoundaryPoint end2() const { return boundary_from_angle(t2_); }

 private:
  static double norm_angle(double t) {
    t = std::fmod(t, 2.0 * pi);
    if (t < 0.0) t += 2.0 * pi;
    return t;
  }

  double t1_, t2_;
};

inline bool same_geodesic(const Geodesic& g, const Geodesic& h,
                          double tol = geom_tol) {
  return (angle_gap(g.theta1(), h.theta1()) < tol &&
          angle_gap(g.theta2(), h.theta2()) < tol) ||
         (angle_gap(g.theta1(), h.theta2()) < tol &&
          angle_gap(g.theta2(), h.theta1()) < tol);
}

// ---------------------------------------------------------------------------
// isometries

// Isometry of the hyperbolic plane as a real 2x2 matrix with |det| = 1 acting
// on the upper half-plane:
//
//   det +1 (orientation-preserving):  z -> (a z + b) / (c z + d)
//   det -1 (orientation-reversing):   z -> (a conj(z) + b) / (c conj(z) + d)
//
// A reversing map must have det -1 to stay in the upper half-plane. With the
// sign carried by the determinant, composition is plain matrix product in all
// four orientation cases, and the orientation flag is just the cached sign.
// Matrices are projective: m and -m describe the same isometry.
class Isometry {
 public:
  static Isometry identity() { return Isometry({1.0, 0.0, 0.0, 1.0}, false); }

  static Isometry from_matrix(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (std::fabs(det) < 1e-14)
      throw GeometryError("isometry matrix is singular");
    double s = std::sqrt(std::fabs(det));
    return Isometry({a / s, b / s, c / s, d / s}, det < 0.0);
  }

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  bool orientation_reversing() const { return rev_; }
  double det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  double trace() const { return m_[0] + m_[3]; }

  Isometry inverse() const {
    double dt = det();
    return Isometry({m_[3] / dt, -m_[1] / dt, -m_[2] / dt, m_[0] / dt}, rev_);
  }

  friend Isometry operator*(const Isometry& g, const Isometry& h) {
    return from_matrix(g.m_[0] * h.m_[0] + g.m_[1] * h.m_[2],
                       g.m_[0] * h.m_[1] + g.m_[1] * h.m_[3],
                       g.m_[2] * h.m_[0] + g.m_[3] * h.m_[2],
                       g.m_[2] * h.m_[1] + g.m_[3] * h.m_[3]);
  }

  DiscPoint apply(DiscPoint p) const {
    cplx z = disc_to_half_plane(p);
    if (rev_) z = std::conj(z);
    cplx w = (m_[0] * z + m_[1]) / (m_[2] * z + m_[3]);
    return half_plane_to_disc(w);
  }

  // Boundary points are real, so preserving and reversing maps act alike.
  BoundaryPoint apply(BoundaryPoint b) const {
    return {m_[0] * b.x + m_[1] * b.w, m_[2] * b.x + m_[3] * b.w};
  }

  Geodesic apply(const Geodesic& L) const {
    return Geodesic(boundary_to_angle(apply(L.end1())),
                    boundary_to_angle(apply(L.end2())));
  }

 private:
  Isometry(std::array<double, 4> m, bool rev) : m_(m), rev_(rev) {}

  std::array<double, 4> m_;
  bool rev_;
};

// projective equality: matrices agree up to overall sign
inline bool same_isometry(const Isometry& g, const Isometry& h,
                          double tol = matrix_tol) {
  if (g.orientation_reversing() != h.orientation_reversing()) return false;
  double dplus = 0.0, dminus = 0.0;
  const double ge[4] = {g.a(), g.b(), g.c(), g.d()};
  const double he[4] = {h.a(), h.b(), h.c(), h.d()};
  for (int i = 0; i < 4; ++i) {
    dplus = std::max(dplus, std::fabs(ge[i] - he[i]));
    dminus = std::max(dminus, std::fabs(ge[i] + he[i]));
  }
  return dplus < tol || dminus < tol;
}

inline bool is_identity(const Isometry& g, double tol = matrix_tol) {
  return same_isometry(g, Isometry::identity(), tol);
}

// ---------------------------------------------------------------------------
// elementary isometries

// maps p to the disc origin, preserving orientation
inline Isometry translate_to_origin(DiscPoint p) {
  cplx z = disc_to_half_plane(p);
  return Isometry::from_matrix(1.0, -z.real(), 0.0, z.imag());
}

// anticlockwise rotation of the disc about its origin; the half-plane
// stabilizer of i rotates tangent vectors at twice the matrix angle
inline Isometry rotation_about_origin(double phi) {
  double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
  return Isometry::from_matrix(c, s, -s, c);
}

// translation by s along the geodesic through i tangent to the real direction
// (ideal endpoints -1 and +1), used as the "move forward" step of polygon
// development
inline Isometry forward_translation(double s) {
  double c = std::cosh(s / 2.0), sh = std::sinh(s / 2.0);
  return Isometry::from_matrix(c, sh, sh, c);
}

// The reflection across a geodesic is the involutive reversing map fixing its
// ideal endpoints u, v: conjugate z -> -conj(z) (matrix diag(1,-1), the
// reflection fixing 0 and infinity) by any matrix sending (0, inf) to (u, v).
// Expanding M diag(1,-1) adj(M) gives a traceless matrix directly.
inline Isometry reflection_across(const Geodesic& L) {
  BoundaryPoint u = L.end1(), v = L.end2();
  double a = u.x * v.w + v.x * u.w;
  double b = -2.0 * u.x * v.x;
  double c = 2.0 * u.w * v.w;
  return Isometry::from_matrix(a, b, c, -a);
}

// ---------------------------------------------------------------------------
// classification

enum class IsometryKind { hyperbolic, parabolic, elliptic };

struct TranslationInfo {
  IsometryKind kind;
  double length;  // 0 unless hyperbolic
};

inline TranslationInfo translation_length(const Isometry& g,
                                          double tol = classify_tol) {
  if (g.orientation_reversing())
    throw GeometryError(
        "translation length of an orientation-reversing isometry: use the "
        "glide length via g*g");
  double t = std::fabs(g.trace());
  if (t > 2.0 + tol)
    return {IsometryKind::hyperbolic, 2.0 * std::acosh(t / 2.0)};
  if (t > 2.0 - tol) return {IsometryKind::parabolic, 0.0};
  return {IsometryKind::elliptic, 0.0};
}

// Axis of a hyperbolic isometry: its fixed ideal points are the eigenvector
// directions of the matrix.
inline Geodesic axis(const Isometry& g, double tol = classify_tol) {
  if (g.orientation_reversing())
    throw GeometryError(
        "axis of an orientation-reversing isometry: use the axis of g*g");
  double tr = g.trace();
  if (std::fabs(tr) <= 2.0 + tol)
    throw GeometryError("axis requires a hyperbolic isometry");
  double s = std::sqrt(tr * tr - 4.0);
  double l1 = (tr + (tr > 0.0 ? s : -s)) / 2.0;
  double l2 = tr - l1;
  auto eigvec = [&g](double lam) {
    BoundaryPoint e1{g.b(), lam - g.a()};
    BoundaryPoint e2{lam - g.d(), g.c()};
    double n1 = e1.x * e1.x + e1.w * e1.w;
    double n2 = e2.x * e2.x + e2.w * e2.w;
    return n1 >= n2 ? e1 : e2;
  };
  return Geodesic(boundary_to_angle(eigvec(l1)), boundary_to_angle(eigvec(l2)));
}

// ---------------------------------------------------------------------------
// incidence

// Straight-chord image of a geodesic in the Klein model; ideal points keep
// their boundary angle across models.
struct Chord {
  KleinPoint p, q;
};

inline Chord to_klein_chord(const Geodesic& L) {
  return {{std::cos(L.theta1()), std::sin(L.theta1())},
          {std::cos(L.theta2()), std::sin(L.theta2())}};
}

inline Chord to_klein_chord(DiscPoint a, DiscPoint b) {
  return {to_klein(a), to_klein(b)};
}

// parameter of x along the chord a->b (0 at a, 1 at b); x is assumed near the
// supporting line
inline double chord_param(KleinPoint a, KleinPoint b, KleinPoint x) {
  double dx = b.x - a.x, dy = b.y - a.y;
  return ((x.x - a.x) * dx + (x.y - a.y) * dy) / (dx * dx + dy * dy);
}

// intersection of the supporting lines of two chords
inline std::optional<KleinPoint> intersect_lines(const Chord& A,
                                                 const Chord& B) {
  double ax = A.q.x - A.p.x, ay = A.q.y - A.p.y;
  double bx = B.q.x - B.p.x, by = B.q.y - B.p.y;
  double den = ax * by - ay * bx;
  if (std::fabs(den) < 1e-14) return std::nullopt;
  double t = ((B.p.x - A.p.x) * by - (B.p.y - A.p.y) * bx) / den;
  return KleinPoint{A.p.x + t * ax, A.p.y + t * ay};
}

// interior intersection point of two complete geodesics, if any
inline std::optional<DiscPoint> intersect(const Geodesic& L1,
                                          const Geodesic& L2) {
  auto k = intersect_lines(to_klein_chord(L1), to_klein_chord(L2));
  if (!k || k->norm2() >= 1.0 - 1e-12) return std::nullopt;
  return from_klein(*k);
}

inline Geodesic geodesic_through(DiscPoint p, DiscPoint q) {
  KleinPoint a = to_klein(p), b = to_klein(q);
  double dx = b.x - a.x, dy = b.y - a.y;
  double dd = dx * dx + dy * dy;
  if (dd < 1e-28) throw GeometryError("geodesic through coincident points");
  double pd = a.x * dx + a.y * dy;
  double disc = pd * pd - dd * (a.norm2() - 1.0);
  double r = std::sqrt(disc);
  double t1 = (-pd - r) / dd, t2 = (-pd + r) / dd;
  return Geodesic(std::atan2(a.y + t1 * dy, a.x + t1 * dx),
                  std::atan2(a.y + t2 * dy, a.x + t2 * dx));
}

inline double point_geodesic_distance(DiscPoint p, const Geodesic& L) {
  return 0.5 * dist(p, reflection_across(L).apply(p));
}

// ---------------------------------------------------------------------------
// angles

// disc-origin direction of the geodesic ray from p toward q, obtained by
// translating p to the origin where geodesics are Euclidean rays
inline double direction_from(DiscPoint p, DiscPoint q) {
  DiscPoint u = translate_to_origin(p).apply(q);
  return std::atan2(u.y, u.x);
}

// direction (mod pi) at p of a geodesic passing through p
inline double direction_at(DiscPoint p, const Geodesic& L) {
  Isometry T = translate_to_origin(p);
  return boundary_to_angle(T.apply(L.end1()));
}

// unoriented crossing angle of two geodesics at their intersection, in
// [0, pi/2]
inline double crossing_angle(const Geodesic& L1, const Geodesic& L2) {
  auto p = intersect(L1, L2);
  if (!p) throw GeometryError("crossing angle of disjoint geodesics");
  double a = direction_at(*p, L1) - direction_at(*p, L2);
  a = std::fabs(wrap_pi(a));
  if (a > pi / 2.0) a = pi - a;
  return a;
}

// interior angle at vertex v between the rays toward prev and next
inline double angle_at_vertex(DiscPoint v, DiscPoint prev, DiscPoint next) {
  double a = direction_from(v, prev) - direction_from(v, next);
  a = std::fmod(a, 2.0 * pi);
  if (a < 0.0) a += 2.0 * pi;
  return a;
}

struct Perpendicular {
  Geodesic line;
  double distance;
};

// Common perpendicular of two disjoint geodesics: the composition of their
// reflections is hyperbolic and translates along the perpendicular by twice
// the distance between them.
inline Perpendicular common_perpendicular(const Geodesic& L1,
                                          const Geodesic& L2) {
  Isometry g = reflection_across(L1) * reflection_across(L2);
  TranslationInfo info = translation_length(g);
  if (info.kind == IsometryKind::elliptic)
    throw GeometryError("no common perpendicular: geodesics intersect");
  if (info.kind == IsometryKind::parabolic)
    throw GeometryError("no common perpendicular: geodesics are asymptotic");
  return {axis(g), info.length / 2.0};
}

// midpoint of the geodesic segment from a to b
inline DiscPoint geodesic_midpoint(DiscPoint a, DiscPoint b) {
  Isometry T = translate_to_origin(a);
  DiscPoint u = T.apply(b);
  double d = dist(DiscPoint{0.0, 0.0}, u);
  double n = std::sqrt(u.norm2());
  if (n < 1e-300) return a;
  double r = std::tanh(d / 4.0);
  return T.inverse().apply(DiscPoint{u.x / n * r, u.y / n * r});
}

}  // namespace hypbil
