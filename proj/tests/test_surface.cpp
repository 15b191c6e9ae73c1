#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hypbil/surface.hpp"
#include "test_util.hpp"

using namespace hypbil;

TEST_CASE("deck group is the Klein four-group") {
  CHECK(DeckElement::one().is_identity());
  CHECK((DeckElement::J() * DeckElement::J()).is_identity());
  CHECK((DeckElement::K() * DeckElement::K()).is_identity());
  DeckElement jk = DeckElement::J() * DeckElement::K();
  CHECK(jk.j);
  CHECK(jk.kk);
  CHECK(deck_elements().size() == 4);
}

TEST_CASE("deck word counts label parities") {
  DeckElement w14 = deck_word({1, 4});
  CHECK(w14.j);
  CHECK(w14.kk);
  CHECK(deck_word({1, 3}).is_identity());
  CHECK(deck_word({1, 4, 1, 4}).is_identity());
  // the word map is a homomorphism on concatenation
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> ul(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    BilliardSequence a(4), b(5);
    for (int& x : a) x = ul(rng);
    for (int& x : b) x = ul(rng);
    BilliardSequence ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    DeckElement lhs = deck_word(ab);
    DeckElement rhs = deck_word(a) * deck_word(b);
    CHECK(lhs.j == rhs.j);
    CHECK(lhs.kk == rhs.kk);
  }
}

TEST_CASE("the opposite-sides word has a unique lift") {
  RightAngledPolygon P = regular_polygon(3);
  BilliardTrajectory t = trajectory(P, {1, 4});
  LiftCount lc = lift_count({1, 4}, t.total_length);
  CHECK(lc.count == 1);
  CHECK(lc.stabilizer_size == 4);
  CHECK(lc.per_lift_length == Catch::Approx(14.101977392312698).margin(1e-9));
  CHECK(lc.per_lift_length ==
        Catch::Approx(4.0 * t.total_length).margin(1e-10));
}

TEST_CASE("lift counts over a scan") {
  RightAngledPolygon P = regular_polygon(3);
  for (int len : {2, 3, 4}) {
    for (const BilliardSequence& a : testutil::all_words(6, len)) {
      BilliardTrajectory t;
      try {
        t = trajectory(P, a);
      } catch (const GeometryError&) {
        continue;
      }
      LiftCount lc = lift_count(a, t.total_length);
      CHECK((lc.count == 1 || lc.count == 2 || lc.count == 4));
      CHECK(std::fabs(lc.count * lc.per_lift_length - 4.0 * t.total_length) <
            1e-9);
      if (!lc.word.is_identity()) CHECK(lc.count <= 2);
      // invariance under cyclic rotation of the word and under relabeling
      BilliardSequence shifted(a.begin() + 1, a.end());
      shifted.push_back(a.front());
      CHECK(lift_count(shifted, t.total_length).count == lc.count);
      CHECK(lift_count(rotate_sequence(a, 2, 6), t.total_length).count ==
            lc.count);
      // the combinatorial verdict matches the geometric one
      CHECK(geometric_stabilizer_size(a, t) == lc.stabilizer_size);
    }
  }
}

TEST_CASE("geometric stabilizer agrees on corner words") {
  LambertQuad Q0 = regular_lambert(3);
  GluedPolygon G = glue_lambert(Q0);
  int checked = 0;
  for (const BilliardSequence& a : testutil::all_words(6, 4)) {
    BilliardTrajectory t;
    try {
      t = trajectory(G.polygon, a);
    } catch (const GeometryError&) {
      continue;
    }
    bool corner = false;
    for (double s : t.segment_lengths)
      if (s < 1e-9) corner = true;
    if (!corner) continue;
    LiftCount lc = lift_count(a, t.total_length);
    CHECK(geometric_stabilizer_size(a, t) == lc.stabilizer_size);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("itinerary passes") {
  LiftItinerary odd = build_itinerary({1, 4});  // word JK, traced twice
  CHECK(odd.passes == 2);
  LiftItinerary even = build_itinerary({1, 3});  // identity word
  CHECK(even.passes == 1);
}

TEST_CASE("Fenchel-Nielsen coordinates of the doubled surface") {
  RightAngledPolygon hexagon = regular_polygon(3);
  FNCoordinates fn3 = fn_coordinates(hexagon);
  CHECK(fn3.genus() == 2);
  REQUIRE(fn3.alpha_lengths.size() == 3);
  REQUIRE(fn3.beta_lengths.size() == 3);
  CHECK(fn3.delta_pairs.empty());
  for (double a : fn3.alpha_lengths)
    CHECK(a == Catch::Approx(2.0 * std::acosh(2.0)).margin(1e-10));
  for (double b : fn3.beta_lengths)
    CHECK(b == Catch::Approx(2.0 * std::acosh(2.0)).margin(1e-10));
  for (double tw : fn3.twists) CHECK(tw == 0.0);
  CHECK(fn3.curve_count() == 3);  // 3g - 3 with g = 2

  RightAngledPolygon octagon = regular_polygon(4);
  FNCoordinates fn4 = fn_coordinates(octagon);
  REQUIRE(fn4.delta_pairs.size() == 1);
  CHECK(fn4.delta_pairs[0].first == fn4.delta_pairs[0].second);
  std::vector<GreenArc> arcs = green_diagonals(octagon);
  CHECK(fn4.delta_pairs[0].first ==
        Catch::Approx(2.0 * arcs[0].length).margin(1e-10));
  for (size_t i = 0; i < fn4.alpha_lengths.size(); ++i)
    CHECK(fn4.alpha_lengths[i] ==
          Catch::Approx(2.0 * octagon.side(2 * (int)i + 2).length)
              .margin(1e-12));

  FNCoordinates fn5 = fn_coordinates(regular_polygon(5));
  CHECK(fn5.genus() == 4);
  CHECK(fn5.curve_count() == 9);  // 3g - 3 with g = 4
  CHECK(fn5.twists.size() == 9);
}
