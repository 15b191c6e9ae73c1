#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hypbil/billiard.hpp"
#include "hypbil/polygon.hpp"

// SVG rendering in the Poincare disc. Geodesic segments are drawn as arcs of
// circles orthogonal to the unit circle (a straight chord when the geodesic
// runs through the origin). Blue and red polygon sides follow the label
// parity, gluing seams are green, trajectories near-black.

namespace hypbil {
namespace svg {

constexpr const char* blue = "#1f77b4";
constexpr const char* red = "#d62728";
constexpr const char* green = "#2ca02c";
constexpr const char* ink = "#222222";

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// path fragment from p to q along the geodesic through them
inline std::string arc_path(DiscPoint p, DiscPoint q) {
  // orthogonal circle centered at c: 2 c.z = |z|^2 + 1 for both endpoints
  double a11 = 2.0 * p.x, a12 = 2.0 * p.y, b1 = p.x * p.x + p.y * p.y + 1.0;
  double a21 = 2.0 * q.x, a22 = 2.0 * q.y, b2 = q.x * q.x + q.y * q.y + 1.0;
  double det = a11 * a22 - a12 * a21;
  std::string path = "M " + fmt(p.x) + " " + fmt(p.y) + " ";
  if (std::fabs(det) < 1e-9) {  // through the origin: a straight chord
    return path + "L " + fmt(q.x) + " " + fmt(q.y);
  }
  double cx = (b1 * a22 - b2 * a12) / det;
  double cy = (a11 * b2 - a21 * b1) / det;
  double r = std::sqrt(cx * cx + cy * cy - 1.0);
  double cross = (p.x - cx) * (q.y - cy) - (p.y - cy) * (q.x - cx);
  const char* sweep = cross > 0.0 ? "1" : "0";
  return path + "A " + fmt(r) + " " + fmt(r) + " 0 0 " + sweep + " " +
         fmt(q.x) + " " + fmt(q.y);
}

}  // namespace svg

struct RenderOptions {
  int size = 640;
  bool draw_green_diagonals = false;
  std::vector<GreenArc> green_arcs;  // used when draw_green_diagonals
};

inline std::string render_svg(const Table& T,
                              const std::vector<BilliardTrajectory>& family,
                              const RenderOptions& opt = {}) {
  std::string out;
  char head[256];
  std::snprintf(head, sizeof head,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n",
                opt.size, opt.size);
  out += head;
  out += "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linecap=\"round\">\n";
  out += "<circle cx=\"0\" cy=\"0\" r=\"1\" stroke=\"#999999\" "
         "stroke-width=\"0.004\"/>\n";

  for (int label = 1; label <= T.side_count(); ++label) {
    const Side& s = T.side(label);
    out += "<path d=\"" + svg::arc_path(s.start, s.end) + "\" stroke=\"";
    out += side_is_blue(label) ? svg::blue : svg::red;
    out += "\" stroke-width=\"0.012\"/>\n";
  }
  if (opt.draw_green_diagonals)
    for (const GreenArc& g : opt.green_arcs) {
      out += "<path d=\"" + svg::arc_path(g.foot_on_side1, g.foot_on_target) +
             "\" stroke=\"";
      out += svg::green;
      out += "\" stroke-width=\"0.008\" stroke-dasharray=\"0.03 0.02\"/>\n";
    }

  for (const BilliardTrajectory& traj : family) {
    size_t n = traj.bounce_points.size();
    for (size_t i = 0; i < n; ++i) {
      const DiscPoint& p = traj.bounce_points[i];
      const DiscPoint& q = traj.bounce_points[(i + 1) % n];
      if (dist(p, q) <= 1e-9) continue;
      out += "<path d=\"" + svg::arc_path(p, q) + "\" stroke=\"";
      out += svg::ink;
      out += "\" stroke-width=\"0.006\"/>\n";
    }
  }

  for (const DiscPoint& v : T.vertices) {
    out += "<circle cx=\"" + svg::fmt(v.x) + "\" cy=\"" + svg::fmt(v.y) +
           "\" r=\"0.012\" fill=\"#555555\" stroke=\"none\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace hypbil
