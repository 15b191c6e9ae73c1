#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hypbil/polygon.hpp"

using namespace hypbil;

TEST_CASE("regular right-angled polygons") {
  for (int k : {3, 4, 5}) {
    RightAngledPolygon P = regular_polygon(k);
    REQUIRE(P.side_count() == 2 * k);
    double s = regular_side_length(k);
    for (int l = 1; l <= 2 * k; ++l)
      CHECK(P.side(l).length == Catch::Approx(s).margin(1e-10));
    for (double a : P.angles)
      CHECK(a == Catch::Approx(pi / 2.0).margin(1e-10));
    CHECK(P.holonomy_residual < 1e-10);
  }
  CHECK(regular_side_length(3) == Catch::Approx(std::acosh(2.0)).margin(1e-12));
  CHECK_THROWS_AS(regular_polygon(2), GeometryError);
}

TEST_CASE("closing solver reproduces the regular hexagon") {
  double s = std::acosh(2.0);
  RightAngledPolygon P = polygon_from_sides(3, {s, s, s});
  RightAngledPolygon R = regular_polygon(3);
  for (int l = 1; l <= 6; ++l)
    CHECK(P.side(l).length == Catch::Approx(R.side(l).length).margin(1e-9));
  CHECK(same_polygon(P, R, 1e-8));
}

TEST_CASE("closing solver round trip under perturbation") {
  std::mt19937_64 rng(11);
  for (int k : {3, 4, 5}) {
    double amp = k == 3 ? 0.05 : k == 4 ? 0.03 : 0.01;
    std::uniform_real_distribution<double> u(1.0 - amp, 1.0 + amp);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> free_sides(2 * k - 3);
      for (double& x : free_sides) x = u(rng) * regular_side_length(k);
      RightAngledPolygon P = polygon_from_sides(k, free_sides);
      CHECK(P.holonomy_residual < 1e-10);
      for (double a : P.angles)
        CHECK(a == Catch::Approx(pi / 2.0).margin(1e-8));
      for (size_t i = 0; i < free_sides.size(); ++i)
        CHECK(P.side(static_cast<int>(i) + 1).length ==
              Catch::Approx(free_sides[i]).margin(1e-9));
      // feeding the solved full side vector back reproduces the polygon
      std::vector<double> full = P.side_lengths();
      full.resize(2 * k - 3);
      RightAngledPolygon P2 = polygon_from_sides(k, full);
      CHECK(same_polygon(P, P2, 1e-9));
    }
  }
  CHECK_THROWS_AS(polygon_from_sides(3, {1.0, -1.0, 1.0}), GeometryError);
  CHECK_THROWS_AS(polygon_from_sides(3, {1.0, 1.0}), GeometryError);
}

TEST_CASE("Lambert quadrilaterals") {
  LambertQuad Q0 = regular_lambert(3);
  CHECK(Q0.side(1).length == Catch::Approx(0.658478948462408).margin(1e-10));
  CHECK(Q0.side(2).length == Catch::Approx(0.658478948462408).margin(1e-10));
  CHECK(Q0.side(3).length == Catch::Approx(0.881373587019543).margin(1e-10));
  CHECK(Q0.side(4).length == Catch::Approx(0.881373587019543).margin(1e-10));
  CHECK(Q0.angles[Q0.acute_vertex_index] ==
        Catch::Approx(pi / 3.0).margin(1e-10));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ut(0.3, 1.4);
  for (int k : {3, 4, 5})
    for (int trial = 0; trial < 8; ++trial) {
      double t = ut(rng);
      LambertQuad Q = lambert_quad(k, t);
      CHECK(Q.t == t);
      CHECK(Q.side_a == Catch::Approx(t).margin(1e-10));
      // the two sides at the vertex opposite the acute one satisfy
      // sinh(a) sinh(b) = cos(pi/k)
      CHECK(std::sinh(Q.side_a) * std::sinh(Q.side_b) ==
            Catch::Approx(std::cos(pi / k)).margin(1e-10));
      for (int v = 0; v < 4; ++v)
        if (v != Q.acute_vertex_index)
          CHECK(Q.angles[v] == Catch::Approx(pi / 2.0).margin(1e-9));
      CHECK(Q.angles[Q.acute_vertex_index] ==
            Catch::Approx(pi / k).margin(1e-9));
    }
  double tstar = regular_lambert_parameter(3);
  CHECK(std::sinh(tstar) * std::sinh(tstar) ==
        Catch::Approx(0.5).margin(1e-12));
  CHECK_THROWS_AS(lambert_quad(3, 0.0), GeometryError);
  CHECK_THROWS_AS(lambert_quad(3, -1.0), GeometryError);
}

TEST_CASE("gluing quadrilateral copies yields a right-angled polygon") {
  for (int k : {3, 4}) {
    LambertQuad Q = lambert_quad(k, 0.5);
    GluedPolygon G = glue_lambert(Q);
    REQUIRE(G.polygon.side_count() == 2 * k);
    CHECK(G.polygon.holonomy_residual < 1e-9);
    for (double a : G.polygon.angles)
      CHECK(a == Catch::Approx(pi / 2.0).margin(1e-9));
    for (int l = 1; l <= 2 * k; ++l) {
      double expect = (l % 2 == 1) ? 2.0 * G.side_b : 2.0 * G.side_a;
      CHECK(G.polygon.side(l).length == Catch::Approx(expect).margin(1e-9));
    }
  }
  // the regular quadrilateral glues to the regular polygon
  GluedPolygon G0 = glue_lambert(regular_lambert(3));
  RightAngledPolygon R = regular_polygon(3);
  for (int l = 1; l <= 6; ++l)
    CHECK(G0.polygon.side(l).length ==
          Catch::Approx(R.side(l).length).margin(1e-9));
}

TEST_CASE("green diagonals are interior common perpendiculars") {
  CHECK(green_diagonals(regular_polygon(3)).empty());
  for (int k : {4, 5}) {
    RightAngledPolygon P = regular_polygon(k);
    std::vector<GreenArc> arcs = green_diagonals(P);
    REQUIRE(arcs.size() == static_cast<size_t>(k - 3));
    for (const GreenArc& g : arcs) {
      CHECK(g.target_label >= 5);
      CHECK(g.target_label % 2 == 1);
      Perpendicular perp =
          common_perpendicular(P.side(1).line, P.side(g.target_label).line);
      CHECK(g.length == Catch::Approx(perp.distance).margin(1e-9));
      CHECK(point_geodesic_distance(g.foot_on_side1, P.side(1).line) < 1e-9);
      CHECK(point_geodesic_distance(g.foot_on_target,
                                    P.side(g.target_label).line) < 1e-9);
      CHECK(std::fabs(crossing_angle(g.line, P.side(1).line) - pi / 2.0) <
            1e-9);
    }
  }
}

TEST_CASE("label rotation") {
  RightAngledPolygon P = polygon_from_sides(3, {1.31, 1.33, 1.29});
  RightAngledPolygon Pr = rotate_labels(P, 2);
  for (int l = 1; l <= 6; ++l) {
    int src = (l - 1 + 2) % 6 + 1;
    CHECK(Pr.side(l).length == Catch::Approx(P.side(src).length).margin(1e-12));
  }
  CHECK(same_polygon(rotate_labels(P, 6), P, 1e-9));
}
