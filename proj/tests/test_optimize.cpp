#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hypbil/optimize.hpp"

using namespace hypbil;

TEST_CASE("objective evaluates the family average") {
  ObjectiveSpec spec = make_objective(3, {1, 3, 5});
  REQUIRE(spec.parameter_box.size() == 3);
  for (auto [lo, hi] : spec.parameter_box) {
    CHECK(lo == Catch::Approx(0.2 * regular_side_length(3)).margin(1e-12));
    CHECK(hi == Catch::Approx(4.0 * regular_side_length(3)).margin(1e-12));
  }
  std::vector<double> reg = regular_parameters(3);
  double at_regular = avg_length_objective(spec, reg);
  RightAngledPolygon P = regular_polygon(3);
  CHECK(at_regular ==
        Catch::Approx(cyclic_family(P, {1, 3, 5}).average_length)
            .margin(1e-10));
  CHECK(at_regular == Catch::Approx(4.700397710917280).margin(1e-9));

  // out-of-box and non-closing parameter vectors earn the penalty
  CHECK(avg_length_objective(spec, {100.0, 1.0, 1.0}) == spec.penalty);
  CHECK(avg_length_objective(spec, {0.27, 0.27, 5.2}) == spec.penalty);
}

TEST_CASE("the regular table is a strict local minimum") {
  for (BilliardSequence a : {BilliardSequence{1, 3, 5}, {1, 4}}) {
    ObjectiveSpec spec = make_objective(3, a);
    std::vector<double> reg = regular_parameters(3);
    double base = avg_length_objective(spec, reg);
    for (double eps : {0.01, 0.05, 0.1})
      for (size_t i = 0; i < reg.size(); ++i)
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> x = reg;
          x[i] += sgn * eps;
          CHECK(avg_length_objective(spec, x) > base);
        }
  }
}

TEST_CASE("simplex search lands on the regular polygon") {
  ObjectiveSpec spec = make_objective(3, {1, 3, 5});
  MinimizationResult r = minimize_polygon(spec);
  CHECK(r.converged);
  CHECK(r.distance_to_regular < 1e-4);
  CHECK(r.value < spec.penalty);

  // every small perturbation of the argmin increases the objective
  for (size_t i = 0; i < r.argmin.size(); ++i)
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> x = r.argmin;
      x[i] += sgn * 1e-3;
      CHECK(avg_length_objective(spec, x) > r.value);
    }

  // restarting from the argmin does not move the value
  int dummy = 0;
  MinimizationResult again = detail::nelder_mead(spec, r.argmin, 4000, &dummy);
  CHECK(std::fabs(again.value - r.value) < 1e-10);

  // deterministic for a fixed seed
  MinimizationResult r2 = minimize_polygon(spec);
  CHECK(r2.value == r.value);
  CHECK(r2.argmin == r.argmin);
  MinimizationResult r3 = minimize_polygon(spec, 12345);
  CHECK(r3.converged);
  CHECK(std::fabs(r3.value - r.value) < 1e-8);
}

TEST_CASE("objective profiles through the minimum are single-dipped") {
  ObjectiveSpec spec = make_objective(3, {1, 4});
  std::vector<double> reg = regular_parameters(3);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> dir(reg.size());
    double norm = 0.0;
    for (double& d : dir) {
      d = u(rng);
      norm += d * d;
    }
    norm = std::sqrt(norm);
    for (double& d : dir) d /= norm;
    std::vector<double> profile = objective_profile(spec, reg, dir, 0.3, 41);
    CHECK(single_dip(profile));
  }
}

TEST_CASE("golden-section search over Lambert tables") {
  for (int k : {3, 4}) {
    MinimizationResult r = minimize_lambert(k, {2, 3, 4}, {0.05, 4.0});
    REQUIRE(r.argmin.size() == 1);
    double t = r.argmin[0];
    CHECK(r.converged);
    CHECK(std::fabs(std::sinh(t) * std::sinh(t) - std::cos(pi / k)) < 1e-6);
    CHECK(r.distance_to_regular < 1e-6);
    CHECK(r.searched_range.first >= 0.05);
    CHECK(r.searched_range.second <= 4.0);

    // flat to first order at the minimum
    double h = 1e-4;
    double dplus = lambert_objective(k, {2, 3, 4}, t + h);
    double dminus = lambert_objective(k, {2, 3, 4}, t - h);
    CHECK(std::fabs(dplus - dminus) / (2.0 * h) < 1e-5);
  }
  CHECK_THROWS_AS(minimize_lambert(3, {1, 2, 1, 2}, {0.05, 4.0}),
                  GeometryError);
}
