#pragma once

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "hypbil/billiard.hpp"

// The billiard surface: four copies of the right-angled 2k-gon glued along
// blue (odd) sides by the permutation (12)(34) and red (even) sides by
// (13)(24), a closed surface of genus k-1. Everything here is combinatorial;
// lengths are pulled from polygon-level trajectories.

namespace hypbil {

// Klein four-group of deck transformations: J = (12)(34), K = (13)(24)
struct DeckElement {
  bool j = false, kk = false;

  static DeckElement one() { return {false, false}; }
  static DeckElement J() { return {true, false}; }
  static DeckElement K() { return {false, true}; }
  static DeckElement JK() { return {true, true}; }

  bool is_identity() const { return !j && !kk; }
  DeckElement operator*(const DeckElement& o) const {
    return {j != o.j, kk != o.kk};
  }
  bool operator==(const DeckElement& o) const = default;

  // action on copy indices 1..4
  int apply(int copy) const {
    static const int pj[5] = {0, 2, 1, 4, 3};
    static const int pk[5] = {0, 3, 4, 1, 2};
    if (j) copy = pj[copy];
    if (kk) copy = pk[copy];
    return copy;
  }
  const char* name() const {
    return j ? (kk ? "JK" : "J") : (kk ? "K" : "1");
  }
};

inline std::array<DeckElement, 4> deck_elements() {
  return {DeckElement::one(), DeckElement::J(), DeckElement::K(),
          DeckElement::JK()};
}

// blue (odd) labels glue by J, red (even) labels by K
inline DeckElement label_transition(int label) {
  return side_is_blue(label) ? DeckElement::J() : DeckElement::K();
}

inline DeckElement deck_word(const BilliardSequence& a) {
  DeckElement d = DeckElement::one();
  for (int label : a) d = d * label_transition(label);
  return d;
}

struct LiftItinerary {
  int passes = 1;                            // 1 if deck_word = 1, else 2
  std::vector<std::pair<int, int>> steps;    // (copy 1..4, side label)
};

inline LiftItinerary build_itinerary(const BilliardSequence& a) {
  LiftItinerary it;
  it.passes = deck_word(a).is_identity() ? 1 : 2;
  int copy = 1;
  for (int pass = 0; pass < it.passes; ++pass)
    for (int label : a) {
      it.steps.emplace_back(copy, label);
      copy = label_transition(label).apply(copy);
    }
  return it;
}

namespace detail {

// copy index, side label, and which bounce of the underlying trajectory the
// step lands on; the footprint disambiguates repeated labels, whose bounce
// points generally differ
struct ItineraryLetter {
  int copy, label, footprint;
  bool operator==(const ItineraryLetter&) const = default;
};

inline int primitive_period(const BilliardSequence& a) {
  int n = static_cast<int>(a.size());
  for (int p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (a[(i + p) % n] != a[i]) ok = false;
    if (ok) return p;
  }
  return n;
}

// Bounces that every realization of the word must place at the same point.
// Rotating by the primitive period reindexes the trajectory onto itself, and
// when the cyclic word is palindromic the time-reversed traversal realizes
// the same word, so by uniqueness of the closed trajectory the bounces paired
// by the reversal involution coincide (such orbits retrace themselves through
// perpendicular hits at the involution's fixed bounces). Footprints label the
// resulting equivalence classes.
inline std::vector<int> footprint_classes(const BilliardSequence& a) {
  int n = static_cast<int>(a.size());
  int p = primitive_period(a);
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = i % p;
  for (int r0 = 0; r0 < n; ++r0) {
    bool axis = true;
    for (int i = 0; i < n && axis; ++i)
      if (a[((r0 - i) % n + n) % n] != a[i]) axis = false;
    if (!axis) continue;
    for (int i = 0; i < n; ++i) {
      int j = ((r0 - i) % n + n) % n;
      int ci = cls[i], cj = cls[j];
      int lo = std::min(ci, cj);
      for (int s = 0; s < n; ++s)
        if (cls[s] == ci || cls[s] == cj) cls[s] = lo;
    }
    break;
  }
  return cls;
}

// itineraries are compared as unoriented cyclic words: any cyclic shift, or
// any cyclic shift of the reversed traversal
inline bool same_cyclic_word(const std::vector<ItineraryLetter>& u,
                             const std::vector<ItineraryLetter>& v) {
  size_t m = u.size();
  if (v.size() != m) return false;
  for (size_t shift = 0; shift < m; ++shift) {
    bool ok = true;
    for (size_t s = 0; s < m && ok; ++s)
      if (u[(s + shift) % m] != v[s]) ok = false;
    if (ok) return true;
  }
  return false;
}

inline std::vector<ItineraryLetter> lettered_itinerary(
    const LiftItinerary& it, const std::vector<int>& classes) {
  std::vector<ItineraryLetter> w;
  w.reserve(it.steps.size());
  for (size_t s = 0; s < it.steps.size(); ++s)
    w.push_back({it.steps[s].first, it.steps[s].second,
                 classes[s % classes.size()]});
  return w;
}

// reversed traversal: at reversed position s the walk sits in the copy
// reached after original step m-s and recrosses original step m-1-s
inline std::vector<ItineraryLetter> reversed_itinerary(
    const std::vector<ItineraryLetter>& w) {
  size_t m = w.size();
  std::vector<ItineraryLetter> rev(m);
  for (size_t s = 0; s < m; ++s)
    rev[s] = {w[(m - s) % m].copy, w[(m - 1 - s) % m].label,
              w[(m - 1 - s) % m].footprint};
  return rev;
}

}  // namespace detail

struct LiftCount {
  int count = 0;                 // 1, 2, or 4
  double per_lift_length = 0.0;
  DeckElement word;
  int stabilizer_size = 0;
};

inline LiftCount lift_count(const BilliardSequence& a, double length) {
  LiftItinerary it = build_itinerary(a);
  std::vector<detail::ItineraryLetter> word =
      detail::lettered_itinerary(it, detail::footprint_classes(a));
  std::vector<detail::ItineraryLetter> rev = detail::reversed_itinerary(word);
  int stab = 0;
  for (DeckElement g : deck_elements()) {
    std::vector<detail::ItineraryLetter> moved(word);
    for (detail::ItineraryLetter& l : moved) l.copy = g.apply(l.copy);
    if (detail::same_cyclic_word(word, moved) ||
        detail::same_cyclic_word(rev, moved))
      ++stab;
  }
  LiftCount out;
  out.word = deck_word(a);
  out.stabilizer_size = stab;
  out.count = 4 / stab;
  out.per_lift_length = stab * length;
  return out;
}

// Geometric cross-check of the stabilizer: each bounce of the lifted
// trajectory crosses a glued edge, recorded as the ordered copy transition
// together with the folded bounce point. A deck element stabilizes the lift
// exactly when it maps this cyclic crossing sequence to itself up to rotation
// or to the reversed traversal (crossings in reverse order with transitions
// flipped), since the lift is an unoriented closed curve.
inline int geometric_stabilizer_size(const BilliardSequence& a,
                                     const BilliardTrajectory& traj,
                                     double point_tol = 1e-8) {
  LiftItinerary it = build_itinerary(a);
  size_t n = a.size();
  struct Event {
    int from, to;
    DiscPoint x;
  };
  size_t m = it.steps.size();
  std::vector<Event> events;
  events.reserve(m);
  for (size_t s = 0; s < m; ++s)
    events.push_back(Event{it.steps[s].first, it.steps[(s + 1) % m].first,
                           traj.bounce_points[s % n]});
  std::vector<Event> rev(m, events[0]);
  for (size_t s = 0; s < m; ++s) {
    const Event& e = events[m - 1 - s];
    rev[s] = Event{e.to, e.from, e.x};
  }
  auto same_event = [&](const Event& e, const Event& f) {
    return e.from == f.from && e.to == f.to && same_point(e.x, f.x, point_tol);
  };
  auto cyclic_match = [&](const std::vector<Event>& u,
                          const std::vector<Event>& v) {
    for (size_t shift = 0; shift < m; ++shift) {
      bool ok = true;
      for (size_t s = 0; s < m && ok; ++s)
        if (!same_event(u[s], v[(shift + s) % m])) ok = false;
      if (ok) return true;
    }
    return false;
  };
  int stab = 0;
  for (DeckElement g : deck_elements()) {
    std::vector<Event> moved(events);
    for (Event& e : moved) {
      e.from = g.apply(e.from);
      e.to = g.apply(e.to);
    }
    if (cyclic_match(moved, events) || cyclic_match(moved, rev)) ++stab;
  }
  return stab;
}

// ---------------------------------------------------------------------------
// Fenchel-Nielsen coordinates of the surface built from P

struct FNCoordinates {
  int k = 0;
  std::vector<double> alpha_lengths;                 // k red pants curves
  std::vector<double> beta_lengths;                  // k blue seams
  std::vector<std::pair<double, double>> delta_pairs;  // k-3 green pairs
  std::vector<double> twists;                        // 3k-6 zeros

  int genus() const { return k - 1; }
  int curve_count() const {
    return static_cast<int>(alpha_lengths.size() + 2 * delta_pairs.size());
  }
};

// red and blue curves close up across two mirror copies, so their lengths are
// twice the side lengths; each green pair doubles an orthogeodesic diagonal
inline FNCoordinates fn_coordinates(const RightAngledPolygon& P) {
  FNCoordinates fn;
  fn.k = P.k;
  for (int label = 2; label <= 2 * P.k; label += 2)
    fn.alpha_lengths.push_back(2.0 * P.side(label).length);
  for (int label = 1; label <= 2 * P.k - 1; label += 2)
    fn.beta_lengths.push_back(2.0 * P.side(label).length);
  for (const GreenArc& arc : green_diagonals(P))
    fn.delta_pairs.emplace_back(2.0 * arc.length, 2.0 * arc.length);
  fn.twists.assign(3 * P.k - 6, 0.0);
  return fn;
}

}  // namespace hypbil
