#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hypbil/polygon.hpp"

// Closed billiard trajectories from billiard sequences. A sequence is the
// cyclic word of side labels a trajectory hits; unfolding replaces bounces by
// reflections so the trajectory straightens into the axis of the composed
// reflection word, and the bounce points are pulled back into the table.

namespace hypbil {

using BilliardSequence = std::vector<int>;

inline void validate_sequence(const BilliardSequence& a, int m) {
  size_t n = a.size();
  if (n < 2) throw GeometryError("billiard sequence needs at least two labels");
  for (size_t i = 0; i < n; ++i) {
    if (a[i] < 1 || a[i] > m)
      throw GeometryError("billiard sequence label out of range");
    if (a[i] == a[(i + 1) % n])
      throw GeometryError(
          "billiard sequence has equal cyclically consecutive labels");
  }
}

// reflection word g = r(a_{n-1}) ... r(a_1) r(a_0)
inline Isometry unfold(const Table& T, const BilliardSequence& a) {
  validate_sequence(a, T.side_count());
  Isometry g = Isometry::identity();
  for (int label : a) g = reflection_across(T.side(label).line) * g;
  return g;
}

struct BilliardTrajectory {
  BilliardSequence sequence;
  std::vector<DiscPoint> bounce_points;
  std::vector<double> segment_lengths;  // segment i joins bounce i to i+1
  double total_length = 0.0;
  Isometry word = Isometry::identity();
  bool odd_parity = false;
  Geodesic invariant_line;  // axis of the (squared, if odd) word

  BilliardTrajectory() : invariant_line(0.0, pi) {}
};

namespace detail {

// strictly inside the polygon, tested against every side chord (convex table)
inline bool inside_table(const std::vector<KleinPoint>& kverts,
                         const KleinPoint& p, double slack = 1e-9) {
  size_t m = kverts.size();
  for (size_t i = 0; i < m; ++i) {
    const KleinPoint& a = kverts[i];
    const KleinPoint& b = kverts[(i + 1) % m];
    double cr = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cr < -slack) return false;
  }
  return true;
}

}  // namespace detail

inline BilliardTrajectory trajectory(const Table& T,
                                     const BilliardSequence& a) {
  validate_sequence(a, T.side_count());
  size_t n = a.size();

  Isometry g = unfold(T, a);
  bool odd = (n % 2 == 1);
  Isometry h = odd ? g * g : g;
  TranslationInfo info = translation_length(h);
  if (info.kind != IsometryKind::hyperbolic)
    throw GeometryError("non-hyperbolic word");
  double length = odd ? info.length / 2.0 : info.length;
  Geodesic A = axis(h);

  // Bounce i sits where the axis crosses the unfolded wall of side a_i.
  // Intersecting far along the unfolded axis is badly conditioned (errors
  // grow like e^distance), so instead fold the axis back into each copy's
  // frame and intersect with the actual side line there: every intersection
  // then happens inside the table. fold[i] undoes the first i reflections;
  // fold[n] fixes the axis, so the extra hit closes the period.
  std::vector<Isometry> fold;  // fold[i] = r(a_{i-1}) ... r(a_0)
  fold.reserve(n + 1);
  fold.push_back(Isometry::identity());
  for (size_t i = 0; i < n; ++i)
    fold.push_back(reflection_across(T.side(a[i]).line) * fold.back());

  // Geodesic stores its endpoints sorted, so the travel direction must be
  // carried separately: axis_chord[i] keeps the folded endpoints in the
  // order induced from A, giving a consistent orientation in every frame.
  std::vector<Geodesic> folded_axis;
  std::vector<Chord> axis_chord;
  std::vector<DiscPoint> hits;  // hits[i] = bounce i seen in copy frame i
  folded_axis.reserve(n + 1);
  axis_chord.reserve(n + 1);
  hits.reserve(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    double t1 = boundary_to_angle(fold[i].apply(A.end1()));
    double t2 = boundary_to_angle(fold[i].apply(A.end2()));
    folded_axis.push_back(Geodesic(t1, t2));
    axis_chord.push_back({{std::cos(t1), std::sin(t1)},
                          {std::cos(t2), std::sin(t2)}});
    auto x = intersect(folded_axis.back(), T.side(a[i % n]).line);
    if (!x) throw GeometryError("invalid sequence for this table");
    hits.push_back(*x);
  }

  BilliardTrajectory out;
  out.sequence = a;
  out.word = g;
  out.odd_parity = odd;
  out.invariant_line = A;
  out.total_length = length;
  for (size_t i = 0; i < n; ++i) out.bounce_points.push_back(hits[i]);

  // Bounce points must be interior to their sides, with one exception: a pair
  // of consecutive letters naming the two sides of a right-angled corner may
  // bounce together at that corner. The pair acts as one retro-reflection
  // (the two wall reflections compose to a half-turn about the vertex), so
  // the path retraces itself through the corner with a zero-length step.
  const double vertex_tol = 1e-8;
  std::vector<char> state(n, 0);  // 0 interior, 1 at a vertex, 2 paired
  for (size_t i = 0; i < n; ++i) {
    const Side& s = T.side(a[i]);
    const DiscPoint& x = out.bounce_points[i];
    double u = chord_param(to_klein(s.start), to_klein(s.end), to_klein(x));
    if ((u > 0.0 && u < 1.0) && dist(x, s.start) > geom_tol &&
        dist(x, s.end) > geom_tol)
      continue;
    state[i] = 1;
  }
  int m = static_cast<int>(T.vertices.size());
  std::vector<char> tie_after(n, 0);  // axis params tie across pair (i, i+1)
  for (size_t i = 0; i < n; ++i) {
    if (state[i] != 1) continue;
    size_t j = (i + 1) % n;
    if (state[j] != 1) continue;  // may still pair with its predecessor
    int p = a[i], q = a[j];
    int vi = -1;  // vertex shared by sides p and q
    if (q == p % m + 1)
      vi = p % m;
    else if (p == q % m + 1)
      vi = q % m;
    if (vi < 0) continue;
    const DiscPoint& v = T.vertices[vi];
    if (dist(out.bounce_points[i], v) > vertex_tol ||
        dist(out.bounce_points[j], v) > vertex_tol ||
        std::fabs(T.angles[vi] - pi / 2.0) > 1e-8)
      continue;
    state[i] = state[j] = 2;
    tie_after[i] = 1;
  }
  for (size_t i = 0; i < n; ++i)
    if (state[i] == 1) throw GeometryError("invalid sequence for this table");

  // The bounces must march monotonically along the axis; corner pairs sit at
  // a single axis point, everything else advances strictly. Bounce i+1 seen
  // from copy frame i is its reflection across side a_i, which lies on the
  // same folded axis, so each step is measured locally.
  std::vector<double> steps(n);
  double total_step = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Chord& ax = axis_chord[i];
    DiscPoint y = reflection_across(T.side(a[i]).line).apply(hits[i + 1]);
    steps[i] = chord_param(ax.p, ax.q, to_klein(y)) -
               chord_param(ax.p, ax.q, to_klein(hits[i]));
    total_step += steps[i];
  }
  double dir = (total_step > 0.0) ? 1.0 : -1.0;
  for (size_t i = 0; i < n; ++i) {
    double step = dir * steps[i];
    if (tie_after[i] ? std::fabs(step) > 1e-9 : !(step > 0.0))
      throw GeometryError("invalid sequence for this table");
  }

  std::vector<KleinPoint> kverts;
  kverts.reserve(T.vertices.size());
  for (const DiscPoint& v : T.vertices) kverts.push_back(to_klein(v));

  for (size_t i = 0; i < n; ++i) {
    const DiscPoint& x = out.bounce_points[i];
    const DiscPoint& y = out.bounce_points[(i + 1) % n];
    out.segment_lengths.push_back(dist(x, y));
    if (out.segment_lengths.back() <= 1e-12) continue;
    KleinPoint kx = to_klein(x), ky = to_klein(y);
    for (int t = 1; t < 32; ++t) {
      double u = t / 32.0;
      KleinPoint p{kx.x + u * (ky.x - kx.x), kx.y + u * (ky.y - kx.y)};
      if (!detail::inside_table(kverts, p))
        throw GeometryError("invalid sequence for this table");
    }
  }
  return out;
}

// incidence and reflection angles against side a_i at bounce i; the
// reflection law makes them equal
inline std::pair<double, double> bounce_angles(const Table& T,
                                               const BilliardTrajectory& traj,
                                               int i) {
  size_t n = traj.sequence.size();
  const DiscPoint& x = traj.bounce_points[i];
  const DiscPoint& xp = traj.bounce_points[(i + n - 1) % n];
  const DiscPoint& xn = traj.bounce_points[(i + 1) % n];
  const Side& s = T.side(traj.sequence[i]);
  if (dist(x, xp) <= 1e-9 || dist(x, xn) <= 1e-9) {
    // member of a corner double bounce: both letters see the retraced ray at
    // the same angle against their own side line
    const DiscPoint& far = dist(x, xp) <= 1e-9 ? xn : xp;
    double alpha = crossing_angle(geodesic_through(x, far), s.line);
    if (alpha > pi / 2.0) alpha = pi - alpha;
    return {alpha, alpha};
  }
  double psi = direction_from(x, s.end);
  auto wrap = [](double t) {
    t = std::fmod(t, 2.0 * pi);
    if (t < 0.0) t += 2.0 * pi;
    return t;
  };
  double theta_in = wrap(direction_from(x, xp) - psi);
  double theta_out = wrap(direction_from(x, xn) - psi);
  return {theta_in, pi - theta_out};
}

inline BilliardSequence rotate_sequence(const BilliardSequence& a, int j,
                                        int m) {
  BilliardSequence out;
  out.reserve(a.size());
  for (int label : a) out.push_back((label - 1 + j % m + m) % m + 1);
  return out;
}

inline BilliardSequence reverse_sequence(const BilliardSequence& a) {
  return BilliardSequence(a.rbegin(), a.rend());
}

struct CyclicFamily {
  BilliardSequence base;
  std::vector<BilliardTrajectory> members;  // one per label rotation
  double average_length = 0.0;
};

// all 2k label rotations, kept with multiplicity
inline CyclicFamily cyclic_family(const Table& P, const BilliardSequence& a) {
  int m = P.side_count();
  CyclicFamily fam;
  fam.base = a;
  double total = 0.0;
  for (int j = 0; j < m; ++j) {
    try {
      fam.members.push_back(trajectory(P, rotate_sequence(a, j, m)));
    } catch (const GeometryError&) {
      throw GeometryError("family invalid on this table");
    }
    total += fam.members.back().total_length;
  }
  fam.average_length = total / m;
  return fam;
}

// label involution swapping the quadrilateral across its mirror: (1 2)(3 4)
inline BilliardSequence reflect_sequence(const BilliardSequence& a) {
  static const int sigma[5] = {0, 2, 1, 4, 3};
  BilliardSequence out;
  out.reserve(a.size());
  for (int label : a) {
    if (label < 1 || label > 4)
      throw GeometryError("reflect_sequence needs labels in 1..4");
    out.push_back(sigma[label]);
  }
  return out;
}

struct ReflectivePair {
  BilliardTrajectory gamma, gamma_bar;
  double average = 0.0;
};

inline ReflectivePair reflective_pair(const LambertQuad& Q,
                                      const BilliardSequence& a) {
  ReflectivePair out;
  out.gamma = trajectory(Q, a);
  out.gamma_bar = trajectory(Q, reflect_sequence(a));
  out.average = (out.gamma.total_length + out.gamma_bar.total_length) / 2.0;
  return out;
}

// ---------------------------------------------------------------------------
// lifting quadrilateral sequences through the 2k-fold gluing

// the layout is purely combinatorial, so it can be built without gluing
inline GlueLayout make_glue_layout(int k) {
  int n = 2 * k;
  GlueLayout lay;
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
  return lay;
}

// Walk the quadrilateral sequence while tracking which glued copy the
// trajectory is in: spoke bounces (sides 3 and 4) switch copies silently,
// rim bounces (sides 1 and 2) emit the polygon label under the layout.
inline BilliardSequence lift_sequence_to_polygon(const GlueLayout& lay,
                                                 const BilliardSequence& a) {
  validate_sequence(a, 4);
  BilliardSequence b;
  int copy = 0;
  int passes = 0;
  do {
    for (int label : a) {
      if (label == 3 || label == 4)
        copy = lay.neighbor(copy, label);
      else
        b.push_back(lay.outer_label(copy, label));
    }
    ++passes;
    if (passes > 2 * lay.k)
      throw GeometryError("lifted sequence failed to close");
  } while (copy != 0);
  if (b.size() < 2)
    throw GeometryError("lifted sequence is too short to be a billiard word");
  return b;
}

inline BilliardSequence lift_sequence_to_polygon(const LambertQuad& Q,
                                                 const BilliardSequence& a) {
  return lift_sequence_to_polygon(make_glue_layout(Q.k), a);
}

}  // namespace hypbil
