#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hypbil/geometry.hpp"

using namespace hypbil;

namespace {

std::mt19937_64 rng(7);

DiscPoint random_point(double rmax = 0.9) {
  std::uniform_real_distribution<double> ur(0.0, rmax), ut(0.0, 2.0 * pi);
  double r = ur(rng), t = ut(rng);
  return {r * std::cos(t), r * std::sin(t)};
}

Geodesic random_geodesic() {
  std::uniform_real_distribution<double> ut(0.0, 2.0 * pi);
  double t1 = ut(rng), t2 = ut(rng);
  while (angle_gap(t1, t2) < 0.3) t2 = ut(rng);
  return Geodesic(t1, t2);
}

Isometry random_isometry() {
  std::uniform_real_distribution<double> ut(0.0, 2.0 * pi);
  return rotation_about_origin(ut(rng)) * translate_to_origin(random_point());
}

}  // namespace

TEST_CASE("disc distance") {
  DiscPoint p = random_point();
  CHECK(dist(p, p) == 0.0);
  CHECK(dist({0.0, 0.0}, {std::tanh(0.5), 0.0}) == Catch::Approx(1.0).margin(1e-12));
  for (int i = 0; i < 200; ++i) {
    DiscPoint a = random_point(), b = random_point();
    Isometry g = random_isometry();
    CHECK(std::fabs(dist(g.apply(a), g.apply(b)) - dist(a, b)) < 1e-9);
  }
}

TEST_CASE("composition and inverses") {
  Isometry h = random_isometry();
  CHECK(same_isometry(Isometry::identity() * h, h));
  CHECK(same_isometry(h * h.inverse(), Isometry::identity()));
  Geodesic L = random_geodesic();
  Isometry r = reflection_across(L);
  CHECK(is_identity(r * r));
  DiscPoint p = random_point();
  Isometry g = random_isometry();
  DiscPoint via_product = (g * h).apply(p);
  DiscPoint via_steps = g.apply(h.apply(p));
  CHECK(dist(via_product, via_steps) < 1e-10);
}

TEST_CASE("reflection across a diameter") {
  Geodesic real_axis(0.0, pi);
  DiscPoint image = reflection_across(real_axis).apply(DiscPoint{0.0, 0.3});
  CHECK(image.x == Catch::Approx(0.0).margin(1e-12));
  CHECK(image.y == Catch::Approx(-0.3).margin(1e-12));
  for (int i = 0; i < 100; ++i) {
    Geodesic L = random_geodesic();
    DiscPoint p = random_point();
    DiscPoint q = reflection_across(L).apply(p);
    CHECK(std::fabs(point_geodesic_distance(q, L) -
                    point_geodesic_distance(p, L)) < 1e-9);
  }
}

TEST_CASE("translation length") {
  CHECK(translation_length(forward_translation(1.7)).length ==
        Catch::Approx(1.7).margin(1e-12));
  double e = std::exp(1.0);
  Isometry diag = Isometry::from_matrix(e, 0.0, 0.0, 1.0 / e);
  TranslationInfo info = translation_length(diag);
  CHECK(info.kind == IsometryKind::hyperbolic);
  CHECK(info.length == Catch::Approx(2.0).margin(1e-12));
  CHECK(translation_length(Isometry::identity()).kind !=
        IsometryKind::hyperbolic);
  for (int i = 0; i < 100; ++i) {
    Isometry h = random_isometry();
    double conj = translation_length(h * diag * h.inverse()).length;
    CHECK(std::fabs(conj - 2.0) < 1e-9);
  }
}

TEST_CASE("axis carries the displacement minimum") {
  Isometry g = forward_translation(0.9);
  Isometry h = random_isometry();
  Isometry gc = h * g * h.inverse();
  Geodesic A = axis(gc);
  double len = translation_length(gc).length;
  // sample points on the axis via its boundary chord
  Chord c = to_klein_chord(A);
  for (double u : {0.3, 0.5, 0.7}) {
    DiscPoint p = from_klein(
        {c.p.x + u * (c.q.x - c.p.x), c.p.y + u * (c.q.y - c.p.y)});
    CHECK(std::fabs(dist(p, gc.apply(p)) - len) < 1e-10);
  }
  DiscPoint off = random_point(0.5);
  if (point_geodesic_distance(off, A) > 0.1)
    CHECK(dist(off, gc.apply(off)) > len + 1e-9);
  CHECK_THROWS_AS(axis(rotation_about_origin(0.4)), GeometryError);
}

TEST_CASE("common perpendicular") {
  // half-plane geodesics {-1, 1} and {-R, R} meet the imaginary axis at
  // heights 1 and R, so the distance between them is log R
  double R = 3.7;
  Geodesic L1(boundary_to_angle({-1.0, 1.0}), boundary_to_angle({1.0, 1.0}));
  Geodesic L2(boundary_to_angle({-R, 1.0}), boundary_to_angle({R, 1.0}));
  Perpendicular perp = common_perpendicular(L1, L2);
  CHECK(perp.distance == Catch::Approx(std::log(R)).margin(1e-10));
  CHECK(common_perpendicular(L2, L1).distance ==
        Catch::Approx(perp.distance).margin(1e-12));
  CHECK(std::fabs(crossing_angle(perp.line, L1) - pi / 2.0) < 1e-9);
  CHECK(std::fabs(crossing_angle(perp.line, L2) - pi / 2.0) < 1e-9);
  // two reflections translate along the perpendicular by twice the distance
  Isometry two_refl = reflection_across(L2) * reflection_across(L1);
  CHECK(std::fabs(translation_length(two_refl).length - 2.0 * perp.distance) <
        1e-9);
  CHECK_THROWS_AS(common_perpendicular(L1, L1), GeometryError);
}

TEST_CASE("Klein model transfer") {
  KleinPoint q = to_klein({0.5, 0.0});
  CHECK(q.x == Catch::Approx(0.8).margin(1e-12));
  CHECK(q.y == Catch::Approx(0.0).margin(1e-12));
  for (int i = 0; i < 200; ++i) {
    DiscPoint p = random_point();
    DiscPoint back = from_klein(to_klein(p));
    CHECK(dist(p, back) < 1e-12);
  }
  // concurrent geodesics stay concurrent as chords
  DiscPoint x = random_point(0.6);
  Geodesic g1 = geodesic_through(x, random_point());
  Geodesic g2 = geodesic_through(x, random_point());
  auto meet = intersect(g1, g2);
  REQUIRE(meet.has_value());
  CHECK(dist(*meet, x) < 1e-9);
}

TEST_CASE("half-plane transfer round trip") {
  for (int i = 0; i < 200; ++i) {
    DiscPoint p = random_point();
    DiscPoint back = half_plane_to_disc(disc_to_half_plane(p));
    CHECK(dist(p, back) < 1e-10);
  }
  for (int i = 0; i < 100; ++i) {
    double t = std::uniform_real_distribution<double>(0.0, 2.0 * pi)(rng);
    BoundaryPoint b = boundary_from_angle(t);
    CHECK(angle_gap(boundary_to_angle(b), t) < 1e-12);
  }
}

TEST_CASE("geodesic through two points") {
  for (int i = 0; i < 100; ++i) {
    DiscPoint p = random_point(), q = random_point();
    if (dist(p, q) < 0.1) continue;
    Geodesic L = geodesic_through(p, q);
    CHECK(point_geodesic_distance(p, L) < 1e-9);
    CHECK(point_geodesic_distance(q, L) < 1e-9);
  }
  Geodesic d1(0.0, pi);
  Geodesic d2(pi / 2.0, 3.0 * pi / 2.0);
  auto o = intersect(d1, d2);
  REQUIRE(o.has_value());
  CHECK(dist(*o, {0.0, 0.0}) < 1e-12);
}
