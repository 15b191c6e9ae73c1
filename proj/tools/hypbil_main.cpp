#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypbil/filling.hpp"
#include "hypbil/json_io.hpp"
#include "hypbil/optimize.hpp"
#include "hypbil/polygon.hpp"
#include "hypbil/surface.hpp"
#include "hypbil/svg_render.hpp"

using namespace hypbil;

namespace {

struct Options {
  int k = 3;
  std::vector<int> sequence;
  std::vector<double> sides;
  double t = -1.0;  // < 0 means unset
  double tol = 1e-10;
  double t_min = 0.05, t_max = 4.0;
  unsigned long seed = 0;
  int max_iterations = 4000;
  bool orbit = false;
  std::string json_path, svg_path;
};

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw GeometryError("cannot open output file: " + path);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
}

void emit(const std::string& json, const Options& opt) {
  if (opt.json_path.empty())
    std::printf("%s\n", json.c_str());
  else
    write_file(opt.json_path, json + "\n");
}

std::string table_kind(const Options& opt) {
  if (opt.t >= 0.0) return "lambert";
  if (!opt.sides.empty()) return "from-sides";
  return "regular";
}

Table build_table(const Options& opt) {
  if (opt.t >= 0.0) return lambert_quad(opt.k, opt.t);
  if (!opt.sides.empty()) return polygon_from_sides(opt.k, opt.sides);
  return regular_polygon(opt.k);
}

void write_config(jsonio::Writer& w, const std::string& command,
                  const Options& opt, bool with_sequence) {
  w.key("config").begin_object();
  w.kv("command", command);
  w.kv("k", opt.k);
  if (command == "filling" || command == "render") w.kv("orbit", opt.orbit);
  if (command == "minimize") {
    w.kv("max_iterations", opt.max_iterations);
    w.kv("seed", opt.seed);
  }
  if (with_sequence) w.key("sequence").integers(opt.sequence);
  if (!opt.sides.empty()) w.key("sides").numbers(opt.sides);
  if (command == "minimize-lambert") {
    w.kv("t_max", opt.t_max);
    w.kv("t_min", opt.t_min);
  }
  if (opt.t >= 0.0) w.kv("t", opt.t);
  if (command.rfind("table", 0) != 0 && command.rfind("minimize", 0) != 0)
    w.kv("table", table_kind(opt));
  if (command == "minimize-lambert") w.kv("tol", opt.tol);
  w.end_object();
}

void write_members(jsonio::Writer& w,
                   const std::vector<BilliardTrajectory>& members) {
  w.key("members").begin_array();
  for (const BilliardTrajectory& m : members) {
    w.begin_object();
    write_trajectory_fields(w, m);
    w.end_object();
  }
  w.end_array();
}

void render_to_file(const Table& T,
                    const std::vector<BilliardTrajectory>& family,
                    const Options& opt) {
  RenderOptions ro;
  if (opt.t < 0.0) {
    RightAngledPolygon P = opt.sides.empty()
                               ? regular_polygon(opt.k)
                               : polygon_from_sides(opt.k, opt.sides);
    ro.green_arcs = green_diagonals(P);
    ro.draw_green_diagonals = !ro.green_arcs.empty();
  }
  write_file(opt.svg_path, render_svg(T, family, ro));
}

int cmd_table(const std::string& kind, const Options& opt) {
  jsonio::Writer w;
  w.begin_object();
  write_config(w, "table " + kind, opt, false);
  w.key("table");
  if (kind == "lambert") {
    w.raw_json(json_of_table(lambert_quad(opt.k, opt.t)));
  } else if (kind == "glue-lambert") {
    GluedPolygon G = glue_lambert(lambert_quad(opt.k, opt.t));
    jsonio::Writer t;
    t.begin_object();
    write_table_fields(t, G.polygon);
    t.kv("k", G.polygon.k);
    t.kv("side_a", G.side_a);
    t.kv("side_b", G.side_b);
    t.kv("type", "glue-lambert");
    t.end_object();
    w.raw_json(t.str());
  } else if (kind == "from-sides") {
    w.raw_json(json_of_table(polygon_from_sides(opt.k, opt.sides), kind));
  } else {
    w.raw_json(json_of_table(regular_polygon(opt.k), kind));
  }
  w.end_object();
  emit(w.str(), opt);
  return 0;
}

int cmd_trajectory(const Options& opt) {
  Table T = build_table(opt);
  BilliardTrajectory traj = trajectory(T, opt.sequence);
  jsonio::Writer w;
  w.begin_object();
  write_config(w, "trajectory", opt, true);
  w.key("trajectory").raw_json(json_of_trajectory(traj));
  w.end_object();
  emit(w.str(), opt);
  if (!opt.svg_path.empty()) render_to_file(T, {traj}, opt);
  return 0;
}

int cmd_family(const Options& opt) {
  jsonio::Writer w;
  w.begin_object();
  std::vector<BilliardTrajectory> members;
  double average = 0.0;
  if (opt.t >= 0.0) {  // reflective pair on the quadrilateral
    LambertQuad Q = lambert_quad(opt.k, opt.t);
    ReflectivePair pair = reflective_pair(Q, opt.sequence);
    members = {pair.gamma, pair.gamma_bar};
    average = pair.average;
    w.kv("average_length", average);
    write_config(w, "family", opt, true);
    write_members(w, members);
    if (!opt.svg_path.empty()) render_to_file(Q, members, opt);
  } else {
    Table T = build_table(opt);
    CyclicFamily fam = cyclic_family(T, opt.sequence);
    members = fam.members;
    average = fam.average_length;
    w.kv("average_length", average);
    write_config(w, "family", opt, true);
    write_members(w, members);
    if (!opt.svg_path.empty()) render_to_file(T, members, opt);
  }
  w.end_object();
  emit(w.str(), opt);
  return 0;
}

int cmd_lift(const Options& opt) {
  Table T = build_table(opt);
  BilliardTrajectory traj = trajectory(T, opt.sequence);
  LiftCount lc = lift_count(opt.sequence, traj.total_length);
  const char* word = lc.word.j ? (lc.word.kk ? "JK" : "J")
                               : (lc.word.kk ? "K" : "1");
  jsonio::Writer w;
  w.begin_object();
  write_config(w, "lift", opt, true);
  w.kv("count", lc.count);
  w.kv("per_lift_length", lc.per_lift_length);
  w.kv("stabilizer_size", lc.stabilizer_size);
  w.kv("total_length", traj.total_length);
  w.kv("word", word);
  w.end_object();
  emit(w.str(), opt);
  return 0;
}

int cmd_fn_coords(const Options& opt) {
  RightAngledPolygon P = opt.sides.empty()
                             ? regular_polygon(opt.k)
                             : polygon_from_sides(opt.k, opt.sides);
  FNCoordinates fn = fn_coordinates(P);
  jsonio::Writer w;
  w.begin_object();
  w.key("alpha_lengths").numbers(fn.alpha_lengths);
  w.key("beta_lengths").numbers(fn.beta_lengths);
  write_config(w, "fn-coords", opt, false);
  w.kv("curve_count", fn.curve_count());
  w.key("delta_pairs").begin_array();
  for (const auto& [d1, d2] : fn.delta_pairs) {
    w.begin_array();
    w.value(d1);
    w.value(d2);
    w.end_array();
  }
  w.end_array();
  w.kv("genus", fn.genus());
  w.key("twists").numbers(fn.twists);
  w.end_object();
  emit(w.str(), opt);
  return 0;
}

const char* face_class_name(FaceClass c) {
  switch (c) {
    case FaceClass::pure_disc: return "pure_disc";
    case FaceClass::edge_disc: return "edge_disc";
    case FaceClass::corner_disc: return "corner_disc";
    default: return "invalid_face";
  }
}

int cmd_filling(const Options& opt) {
  Table T = build_table(opt);
  std::vector<BilliardTrajectory> family =
      opt.orbit ? rotation_orbit(T, opt.sequence)
                : std::vector<BilliardTrajectory>{trajectory(T, opt.sequence)};
  FillingReport rep = filling_report(T, family);
  jsonio::Writer w;
  w.begin_object();
  write_config(w, "filling", opt, true);
  w.key("face_areas").numbers(rep.areas);
  w.key("face_classes").begin_array();
  for (FaceClass c : rep.verdict.classes) w.value(face_class_name(c));
  w.end_array();
  w.kv("is_filling", rep.verdict.filling);
  w.kv("total_area", rep.total_area);
  w.key("warnings").begin_array();
  for (const std::string& s : rep.arrangement.warnings) w.value(s);
  w.end_array();
  w.end_object();
  emit(w.str(), opt);
  if (!opt.svg_path.empty()) render_to_file(T, family, opt);
  return 0;
}

int cmd_minimize(const Options& opt) {
  MinimizationResult r = minimize_polygon(make_objective(opt.k, opt.sequence),
                                          opt.seed, opt.max_iterations);
  jsonio::Writer w;
  w.begin_object();
  w.key("argmin").numbers(r.argmin);
  write_config(w, "minimize", opt, true);
  w.kv("converged", r.converged);
  w.kv("distance_to_regular", r.distance_to_regular);
  w.kv("iterations", r.iterations);
  w.kv("penalty_evaluations", r.penalty_evaluations);
  w.kv("value", r.value);
  w.end_object();
  emit(w.str(), opt);
  return 0;
}

int cmd_minimize_lambert(const Options& opt) {
  MinimizationResult r = minimize_lambert(opt.k, opt.sequence,
                                          {opt.t_min, opt.t_max}, opt.tol);
  double ts = r.argmin.at(0);
  jsonio::Writer w;
  w.begin_object();
  w.key("argmin").numbers(r.argmin);
  write_config(w, "minimize-lambert", opt, true);
  w.kv("converged", r.converged);
  w.kv("distance_to_regular", r.distance_to_regular);
  w.kv("iterations", r.iterations);
  w.key("searched_range").begin_array();
  w.value(r.searched_range.first);
  w.value(r.searched_range.second);
  w.end_array();
  double s = std::sinh(ts);
  w.kv("sinh_sq", s * s);
  w.kv("value", r.value);
  w.end_object();
  emit(w.str(), opt);
  return 0;
}

int cmd_render(const Options& opt) {
  Table T = build_table(opt);
  std::vector<BilliardTrajectory> family;
  if (!opt.sequence.empty())
    family = opt.orbit
                 ? rotation_orbit(T, opt.sequence)
                 : std::vector<BilliardTrajectory>{trajectory(T, opt.sequence)};
  render_to_file(T, family, opt);
  jsonio::Writer w;
  w.begin_object();
  write_config(w, "render", opt, !opt.sequence.empty());
  w.kv("svg_path", opt.svg_path);
  w.end_object();
  emit(w.str(), opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic billiards toolkit"};
  app.require_subcommand(1);
  Options opt;
  std::string table_kind_arg;

  auto add_common = [&](CLI::App* c, bool sequence_required) {
    c->add_option("--k", opt.k, "polygon parameter k (2k-gon)")
        ->check(CLI::Range(3, 64));
    auto* seq = c->add_option("--sequence", opt.sequence,
                              "billiard sequence, comma separated labels")
                    ->delimiter(',');
    if (sequence_required) seq->required();
    c->add_option("--json", opt.json_path, "write JSON here instead of stdout");
    return seq;
  };

  CLI::App* table = app.add_subcommand("table", "build a billiard table");
  table->require_subcommand(1);
  for (const char* kind : {"regular", "from-sides", "lambert", "glue-lambert"}) {
    CLI::App* c = table->add_subcommand(kind, "");
    c->add_option("--k", opt.k, "polygon parameter k")->check(CLI::Range(3, 64));
    c->add_option("--json", opt.json_path, "write JSON here instead of stdout");
    if (std::string(kind) == "from-sides")
      c->add_option("--sides", opt.sides, "first 2k-3 side lengths")
          ->delimiter(',')
          ->required();
    if (std::string(kind) == "lambert" || std::string(kind) == "glue-lambert")
      c->add_option("--t", opt.t, "Lambert side parameter")->required();
    c->callback([&, kind] { table_kind_arg = kind; });
  }

  CLI::App* traj = app.add_subcommand("trajectory", "closed billiard trajectory");
  add_common(traj, true);
  auto* traj_sides =
      traj->add_option("--sides", opt.sides, "polygon side lengths")
          ->delimiter(',');
  auto* traj_t = traj->add_option("--t", opt.t, "Lambert parameter");
  traj_t->excludes(traj_sides);
  traj->add_option("--svg", opt.svg_path, "also render to this SVG file");

  CLI::App* family = app.add_subcommand("family", "cyclic or reflective family");
  add_common(family, true);
  auto* fam_sides =
      family->add_option("--sides", opt.sides, "polygon side lengths")
          ->delimiter(',');
  family->add_option("--t", opt.t, "Lambert parameter")->excludes(fam_sides);
  family->add_option("--svg", opt.svg_path, "also render to this SVG file");

  CLI::App* lift = app.add_subcommand("lift", "lift count on the doubled surface");
  add_common(lift, true);
  lift->add_option("--sides", opt.sides, "polygon side lengths")->delimiter(',');

  CLI::App* fn = app.add_subcommand("fn-coords",
                                    "Fenchel-Nielsen coordinates of the double");
  add_common(fn, false);
  fn->add_option("--sides", opt.sides, "polygon side lengths")->delimiter(',');

  CLI::App* filling = app.add_subcommand("filling", "face classification");
  add_common(filling, true);
  auto* fil_sides =
      filling->add_option("--sides", opt.sides, "polygon side lengths")
          ->delimiter(',');
  filling->add_option("--t", opt.t, "Lambert parameter")->excludes(fil_sides);
  filling->add_flag("--orbit", opt.orbit, "use the full label-rotation orbit");
  filling->add_option("--svg", opt.svg_path, "also render to this SVG file");

  CLI::App* minimize = app.add_subcommand("minimize",
                                          "minimize average length over tables");
  add_common(minimize, true);
  minimize->add_option("--seed", opt.seed, "random restart seed");
  minimize->add_option("--max-iter", opt.max_iterations, "iteration cap");

  CLI::App* minlam = app.add_subcommand(
      "minimize-lambert", "golden-section search over the Lambert family");
  add_common(minlam, true);
  minlam->add_option("--tol", opt.tol, "bracket tolerance");
  minlam->add_option("--t-min", opt.t_min, "search window lower end");
  minlam->add_option("--t-max", opt.t_max, "search window upper end");

  CLI::App* render = app.add_subcommand("render", "SVG of a table and family");
  add_common(render, false);
  auto* ren_sides =
      render->add_option("--sides", opt.sides, "polygon side lengths")
          ->delimiter(',');
  render->add_option("--t", opt.t, "Lambert parameter")->excludes(ren_sides);
  render->add_flag("--orbit", opt.orbit, "render the full rotation orbit");
  render->add_option("--svg", opt.svg_path, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  try {
    if (table->parsed()) return cmd_table(table_kind_arg, opt);
    if (traj->parsed()) return cmd_trajectory(opt);
    if (family->parsed()) return cmd_family(opt);
    if (lift->parsed()) return cmd_lift(opt);
    if (fn->parsed()) return cmd_fn_coords(opt);
    if (filling->parsed()) return cmd_filling(opt);
    if (minimize->parsed()) return cmd_minimize(opt);
    if (minlam->parsed()) return cmd_minimize_lambert(opt);
    if (render->parsed()) return cmd_render(opt);
  } catch (const GeometryError& e) {
    std::fprintf(stderr, "{\"error\": {\"message\": \"%s\", \"type\": \"geometry\"}}\n",
                 e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\": {\"message\": \"%s\", \"type\": \"internal\"}}\n",
                 e.what());
    return 1;
  }
  return 2;
}
