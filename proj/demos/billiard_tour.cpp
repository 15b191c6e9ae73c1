// Builds the regular right-angled hexagon, follows a few billiard words,
// and writes an SVG of the rotation orbit of (1,4).

#include <cstdio>
#include <fstream>

#include "hypbil/filling.hpp"
#include "hypbil/svg_render.hpp"

using namespace hypbil;

int main() {
  RightAngledPolygon P = regular_polygon(3);
  std::printf("regular hexagon: side %.12f, angle %.12f\n",
              P.side(1).length, P.angles[0]);

  for (BilliardSequence a :
       {BilliardSequence{1, 4}, {1, 3, 5}, {1, 4, 2, 5}, {2, 4, 6}}) {
    BilliardTrajectory t = trajectory(P, a);
    std::printf("word (");
    for (size_t i = 0; i < a.size(); ++i)
      std::printf(i ? ",%d" : "%d", a[i]);
    std::printf("): length %.12f over %zu bounces%s\n", t.total_length,
                t.bounce_points.size(),
                t.odd_parity ? " (odd, traced twice)" : "");
  }

  CyclicFamily fam = cyclic_family(P, {1, 4});
  std::printf("cyclic family of (1,4): %zu members, average %.12f\n",
              fam.members.size(), fam.average_length);

  auto orbit = rotation_orbit(P, {1, 4});
  FillingReport rep = filling_report(P, orbit);
  std::printf("rotation orbit fills the hexagon: %s, faces %zu, area %.12f\n",
              rep.verdict.filling ? "yes" : "no", rep.areas.size(),
              rep.total_area);

  std::ofstream f("billiard_tour.svg");
  f << render_svg(P, orbit);
  std::printf("wrote billiard_tour.svg\n");
  return 0;
}
