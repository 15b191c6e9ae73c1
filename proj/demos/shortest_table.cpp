// Searches for the table minimizing the average trajectory length, first
// over all right-angled hexagons, then over the Lambert quadrilateral family,
// and reports how close each argmin is to the regular table.

#include <cstdio>

#include "hypbil/optimize.hpp"

using namespace hypbil;

int main() {
  ObjectiveSpec spec = make_objective(3, {1, 3, 5});
  MinimizationResult r = minimize_polygon(spec);
  std::printf("hexagon search over (1,3,5):\n");
  std::printf("  sides  ");
  for (double s : r.argmin) std::printf(" %.9f", s);
  std::printf("\n  regular %.9f, distance %.3e, average %.12f\n",
              regular_side_length(3), r.distance_to_regular, r.value);

  MinimizationResult g = minimize_lambert(3, {2, 3, 4}, {0.05, 4.0});
  double t = g.argmin[0];
  double s = std::sinh(t);
  std::printf("Lambert search over (2,3,4):\n");
  std::printf("  t* %.12f, sinh^2 t* %.12f (cos pi/3 = 0.5)\n", t, s * s);
  std::printf("  distance to regular %.3e, average %.12f\n",
              g.distance_to_regular, g.value);
  return 0;
}
