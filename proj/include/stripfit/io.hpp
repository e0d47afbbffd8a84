#pragma once

// Command-line front end: point ingestion, subcommand dispatch, JSON result
// documents, SVG rendering, dynamic op-scripts, and instance generators.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stripfit/annulus.hpp"
#include "stripfit/constrained.hpp"
#include "stripfit/double_strip.hpp"
#include "stripfit/hull.hpp"
#include "stripfit/oracle.hpp"

namespace stripfit {
namespace io {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One `x y` pair per line; `#` starts a comment, blank lines are skipped.
// Duplicates are removed (count reported via PointSet::duplicates_removed).
inline PointSet parse_points(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    {
      std::istringstream probe(line);
      std::string tok;
      if (!(probe >> tok)) continue;  // blank or comment-only
    }
    std::istringstream ls(line);
    double x, y;
    std::string extra;
    if (!(ls >> x >> y) || (ls >> extra))
      throw ParseError("malformed point on line " + std::to_string(lineno));
    pts.push_back({x, y});
  }
  if (pts.empty()) throw ParseError("no points in input");
  return PointSet::from(pts);
}

inline PointSet parse_points_file(const std::string& path, std::istream& stdin_) {
  if (path == "-") return parse_points(stdin_);
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open points file: " + path);
  return parse_points(f);
}

// Subset file: one 0-based point id per line, `#` comments allowed.
inline std::vector<int> parse_subset(const std::string& path, size_t n) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open subset file: " + path);
  std::vector<int> ids;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long v;
    if (!(ls >> v)) continue;
    if (v < 0 || v >= long(n))
      throw ParseError("subset id out of range on line " + std::to_string(lineno));
    ids.push_back(int(v));
  }
  return ids;
}

// ---- result documents ----------------------------------------------------

inline json strip_json(const Strip& s) {
  return json{{"theta", s.orientation.theta},
              {"lo", s.lo},
              {"hi", s.hi},
              {"width", s.width()}};
}

inline json double_strip_json(const DoubleStrip& d) {
  return json{{"theta", d.outer.orientation.theta},
              {"width", d.width()},
              {"outer", strip_json(d.outer)},
              {"inner", strip_json(d.inner)}};
}

// Intersection of the two boundary lines with normal offsets oa->ca, ob->cb.
inline Point corner_point(const Orientation& oa, double ca, const Orientation& ob,
                          double cb) {
  // solve: -x sin(a) + y cos(a) = ca ; -x sin(b) + y cos(b) = cb
  const double sa = std::sin(oa.theta), cosa = std::cos(oa.theta);
  const double sb = std::sin(ob.theta), cosb = std::cos(ob.theta);
  const double det = -sa * cosb + sb * cosa;  // sin(b - a)
  return Point{(ca * cosb - cb * cosa) / det, (ca * sb - cb * sa) / det};
}

inline json corners_json(const Strip& s1, double o1lo, double o1hi,
                         const Strip& s2, double o2lo, double o2hi) {
  const Orientation a = s1.orientation, b = s2.orientation;
  json arr = json::array();
  for (const auto& [ca, cb] : std::vector<std::pair<double, double>>{
           {o1lo, o2lo}, {o1lo, o2hi}, {o1hi, o2hi}, {o1hi, o2lo}}) {
    const Point p = corner_point(a, ca, b, cb);
    arr.push_back(json::array({p.x, p.y}));
  }
  return arr;
}

inline json annulus_json(const ParallelogramAnnulus& a) {
  json j;
  j["width"] = a.width();
  j["d1"] = double_strip_json(a.d1);
  j["d2"] = double_strip_json(a.d2);
  j["outer_corners"] = corners_json(a.d1.outer, a.d1.outer.lo, a.d1.outer.hi,
                                    a.d2.outer, a.d2.outer.lo, a.d2.outer.hi);
  j["inner_corners"] = corners_json(a.d1.inner, a.d1.inner.lo, a.d1.inner.hi,
                                    a.d2.inner, a.d2.inner.lo, a.d2.inner.hi);
  return j;
}

// ---- SVG rendering ---------------------------------------------------------

namespace svg_detail {

struct View {
  double minx, miny, maxx, maxy;
};

inline View viewport(const PointSet& ps) {
  View v{ps[0].x, ps[0].y, ps[0].x, ps[0].y};
  for (const Point& p : ps.pts) {
    v.minx = std::min(v.minx, p.x);
    v.miny = std::min(v.miny, p.y);
    v.maxx = std::max(v.maxx, p.x);
    v.maxy = std::max(v.maxy, p.y);
  }
  const double pad = 0.1 * std::max({v.maxx - v.minx, v.maxy - v.miny, 1.0});
  v.minx -= pad;
  v.miny -= pad;
  v.maxx += pad;
  v.maxy += pad;
  return v;
}

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

// clip the viewport rectangle against lo <= h(p) <= hi for orientation o
inline std::vector<Point> band_polygon(const View& v, const Orientation& o,
                                       double lo, double hi) {
  std::vector<Point> poly = {{v.minx, v.miny},
                             {v.maxx, v.miny},
                             {v.maxx, v.maxy},
                             {v.minx, v.maxy}};
  auto clip = [&](double sign, double bound) {
    std::vector<Point> out;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
      const Point& a = poly[i];
      const Point& b = poly[(i + 1) % n];
      const double ha = sign * (normal_offset(a, o) - bound);
      const double hb = sign * (normal_offset(b, o) - bound);
      if (ha >= 0) out.push_back(a);
      if ((ha < 0) != (hb < 0)) {
        const double t = ha / (ha - hb);
        out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      }
    }
    poly = std::move(out);
  };
  clip(+1.0, lo);
  if (!poly.empty()) clip(-1.0, hi);
  return poly;
}

inline std::string path_of(const std::vector<Point>& poly) {
  if (poly.empty()) return "";
  std::string d = "M";
  for (size_t i = 0; i < poly.size(); ++i) {
    d += (i ? " L" : " ") + fmt(poly[i].x) + "," + fmt(poly[i].y);
  }
  d += " Z";
  return d;
}

// full boundary line of one strip offset, drawn across the view
inline std::string edge_line(const View& v, const Orientation& o, double c) {
  const Point n = o.normal();
  const Point dir = o.direction();
  const double cx = 0.5 * (v.minx + v.maxx), cy = 0.5 * (v.miny + v.maxy);
  const Point base{c * n.x, c * n.y};
  const double span = 2.0 * std::max(v.maxx - v.minx, v.maxy - v.miny) +
                      std::fabs(cx) + std::fabs(cy);
  const Point p1{base.x - span * dir.x, base.y - span * dir.y};
  const Point p2{base.x + span * dir.x, base.y + span * dir.y};
  return "<line class=\"edge\" x1=\"" + fmt(p1.x) + "\" y1=\"" + fmt(p1.y) +
         "\" x2=\"" + fmt(p2.x) + "\" y2=\"" + fmt(p2.y) + "\"/>";
}

}  // namespace svg_detail

// Deterministic SVG: points as dots, strip/double-strip bands, annulus rings.
inline std::string render_svg(const PointSet& ps, const json& result) {
  using namespace svg_detail;
  const View v = viewport(ps);
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(v.minx) +
         " " + fmt(-v.maxy) + " " + fmt(v.maxx - v.minx) + " " +
         fmt(v.maxy - v.miny) + "\">\n";
  out += "<style>.band{fill:#9ecae1;fill-opacity:0.55;stroke:none}"
         ".ring-outer{fill:#9ecae1;fill-opacity:0.45;stroke:#3182bd;stroke-width:0.5%}"
         ".ring-inner{fill:#ffffff;stroke:#3182bd;stroke-width:0.5%}"
         ".edge{stroke:#636363;stroke-width:0.4%}"
         ".pt{fill:#d62728}</style>\n";
  out += "<g transform=\"scale(1,-1)\">\n";

  auto band = [&](const Orientation& o, double lo, double hi) {
    const std::string d = path_of(band_polygon(v, o, lo, hi));
    if (!d.empty()) out += "<path class=\"band\" d=\"" + d + "\"/>\n";
  };
  auto edges_of_strip = [&](const json& js) {
    const Orientation o(js["theta"].get<double>());
    out += edge_line(v, o, js["lo"].get<double>()) + "\n";
    out += edge_line(v, o, js["hi"].get<double>()) + "\n";
  };

  const std::string problem = result.value("problem", "");
  if (result.contains("outer") && result.contains("inner")) {
    const json& o = result["outer"];
    const json& i = result["inner"];
    const Orientation ori(o["theta"].get<double>());
    band(ori, o["lo"].get<double>(), i["lo"].get<double>());
    band(ori, i["hi"].get<double>(), o["hi"].get<double>());
    edges_of_strip(o);
    edges_of_strip(i);
  } else if (result.contains("strip")) {
    const json& s = result["strip"];
    band(Orientation(s["theta"].get<double>()), s["lo"].get<double>(),
         s["hi"].get<double>());
    edges_of_strip(s);
  } else if (result.contains("annulus")) {
    const json& a = result["annulus"];
    auto ring = [&](const json& corners, const char* cls) {
      std::vector<Point> poly;
      for (const auto& c : corners)
        poly.push_back({c[0].get<double>(), c[1].get<double>()});
      out += std::string("<path class=\"") + cls + "\" d=\"" + path_of(poly) +
             "\"/>\n";
    };
    ring(a["outer_corners"], "ring-outer");
    ring(a["inner_corners"], "ring-inner");
    for (const char* key : {"d1", "d2"}) {
      edges_of_strip(a[key]["outer"]);
      edges_of_strip(a[key]["inner"]);
    }
  }
  for (const Point& p : ps.pts)
    out += "<circle class=\"pt\" cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) +
           "\" r=\"0.8%\"/>\n";
  out += "</g>\n</svg>\n";
  return out;
}

// ---- generators ------------------------------------------------------------

struct GenParams {
  int n = 16;
  unsigned long long seed = 1;
  std::string dist = "uniform";  // uniform | ring | parallelogram-ring
  double thickness = 0.1;
};

inline std::string generate_points(const GenParams& g) {
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::ostringstream out;
  out.precision(17);
  out << "# dist " << g.dist << "\n# n " << g.n << "\n# seed " << g.seed << "\n";
  if (g.dist == "uniform") {
    for (int i = 0; i < g.n; ++i) out << u01(rng) << " " << u01(rng) << "\n";
  } else if (g.dist == "ring") {
    out << "# thickness " << g.thickness << "\n";
    for (int i = 0; i < g.n; ++i) {
      const double a = 2.0 * kPi * u01(rng);
      const double r = 1.0 + g.thickness * (u01(rng) - 0.5);
      out << r * std::cos(a) << " " << r * std::sin(a) << "\n";
    }
  } else if (g.dist == "parallelogram-ring") {
    // sample inside a parallelogram annulus of width `thickness`
    out << "# thickness " << g.thickness << "\n";
    const double theta = kPi * (u01(rng) - 0.5);
    double phi = kPi * (u01(rng) - 0.5);
    if (std::fabs(phi - theta) < 0.2)
      phi = normalize_orientation(theta + kHalfPi);
    const double h1 = 0.5 + 0.5 * u01(rng);
    const double h2 = 0.5 + 0.5 * u01(rng);
    out << "# theta " << theta << "\n# phi " << phi << "\n";
    const Orientation o1(theta), o2(phi);
    const double s1 = std::sin(theta), c1 = std::cos(theta);
    const double s2 = std::sin(phi), c2 = std::cos(phi);
    const double det = -s1 * c2 + s2 * c1;
    int made = 0;
    while (made < g.n) {
      const double a = h1 * (2.0 * u01(rng) - 1.0);
      const double b = h2 * (2.0 * u01(rng) - 1.0);
      if (std::fabs(a) < h1 - g.thickness && std::fabs(b) < h2 - g.thickness)
        continue;  // interior of the hole
      // invert offsets (a, b) to coordinates
      const double x = (b * c1 - a * c2) / det;
      const double y = (b * s1 - a * s2) / det;
      out << x << " " << y << "\n";
      ++made;
    }
  } else {
    throw ParseError("unknown distribution: " + g.dist);
  }
  return out.str();
}

// ---- dynamic op-scripts ----------------------------------------------------

// JSONL records {"op":"insert"|"delete"|"query"|"decide","point":[x,y]};
// an optional header record {"op":"config","threshold":w} (or a CLI flag)
// fixes the decision threshold.
inline json run_script(const PointSet& ps, std::istream& script,
                       std::optional<double> threshold_flag) {
  std::vector<std::pair<std::string, int>> ops;  // op, point id (or -1)
  std::optional<double> threshold = threshold_flag;
  std::string line;
  int lineno = 0;
  while (std::getline(script, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const std::exception& e) {
      throw ParseError("script line " + std::to_string(lineno) + ": " + e.what());
    }
    const std::string op = rec.value("op", "");
    if (op == "config") {
      if (!threshold_flag && rec.contains("threshold"))
        threshold = rec["threshold"].get<double>();
      continue;
    }
    int id = -1;
    if (op == "insert" || op == "delete") {
      if (!rec.contains("point"))
        throw ParseError("script line " + std::to_string(lineno) +
                         ": missing point");
      const double x = rec["point"][0].get<double>();
      const double y = rec["point"][1].get<double>();
      for (size_t i = 0; i < ps.size(); ++i)
        if (ps[i].x == x && ps[i].y == y) {
          id = int(i);
          break;
        }
      if (id < 0)
        throw ParseError("script line " + std::to_string(lineno) +
                         ": point not in input set");
    } else if (op != "query" && op != "decide") {
      throw ParseError("script line " + std::to_string(lineno) +
                       ": unknown op " + op);
    }
    ops.emplace_back(op, id);
  }

  const bool wants_decide =
      std::any_of(ops.begin(), ops.end(),
                  [](const auto& o) { return o.first == "decide"; });
  if (wants_decide && !threshold)
    throw ParseError("decide ops require a threshold (header or --decide)");

  DynamicState opt(ps);
  std::optional<DynamicState> dec;
  if (threshold) dec.emplace(ps, *threshold);

  json results = json::array();
  for (const auto& [op, id] : ops) {
    if (op == "insert") {
      opt.insert(id);
      if (dec) dec->insert(id);
    } else if (op == "delete") {
      opt.erase(id);
      if (dec) dec->erase(id);
    } else if (op == "query") {
      const DoubleStripResult r = opt.query_min();
      json j{{"op", "query"}, {"width", r.width}, {"theta", r.theta}};
      j["strip"] = double_strip_json(r.strip);
      results.push_back(j);
    } else {  // decide
      results.push_back(json{{"op", "decide"},
                             {"threshold", *threshold},
                             {"result", dec->decision_query()}});
    }
  }
  json out;
  out["problem"] = "dynamic";
  if (threshold) out["threshold"] = *threshold;
  out["ops"] = ops.size();
  out["results"] = results;
  return out;
}

// ---- CLI -------------------------------------------------------------------

struct RunIO {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

inline int run(const std::vector<std::string>& args, RunIO io) {
  CLI::App app{"minimum-width strips, double-strips and parallelogram annuli"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string svg_path;
  bool deg = false;

  auto add_common = [&](CLI::App* sub, bool with_svg = true) {
    sub->add_option("--input", input, "points file ('-' for stdin)");
    if (with_svg)
      sub->add_option("--svg", svg_path, "also render the result to this SVG file");
    sub->add_flag("--deg", deg, "interpret angles in degrees");
  };

  auto* c_strip = app.add_subcommand("strip", "minimum-width enclosing strip");
  double theta = 0.0, phi = 0.0;
  c_strip->add_option("--theta", theta, "orientation")->required();
  add_common(c_strip);

  auto* c_ds = app.add_subcommand("double-strip", "minimum-width double-strip");
  auto* ds_theta = c_ds->add_option("--theta", theta, "fixed orientation");
  auto* ds_all = c_ds->add_flag("--all", "optimize over all orientations");
  ds_theta->excludes(ds_all);
  add_common(c_ds);

  auto* c_con = app.add_subcommand("constrained",
                                   "P-constrained double-strip enclosing Q");
  std::string subset_path;
  c_con->add_option("--subset", subset_path, "file of 0-based point ids")
      ->required();
  c_con->add_flag("--all", "optimize over all orientations (default)");
  add_common(c_con);

  auto* c_dyn = app.add_subcommand("dynamic", "run a JSONL op script");
  std::string script_path;
  double decide_w = 0.0;
  c_dyn->add_option("--script", script_path, "op script (JSON lines)")->required();
  auto* dyn_decide =
      c_dyn->add_option("--decide", decide_w, "decision threshold w");
  add_common(c_dyn);

  auto* c_ann = app.add_subcommand("annulus", "minimum-width parallelogram annulus");
  auto* an_theta = c_ann->add_option("--theta", theta, "first orientation");
  auto* an_phi = c_ann->add_option("--phi", phi, "second orientation");
  auto* an_free = c_ann->add_flag("--free", "optimize both orientations");
  an_free->excludes(an_theta);
  an_free->excludes(an_phi);
  an_theta->needs(an_phi);
  add_common(c_ann);

  auto* c_oracle = app.add_subcommand("oracle", "brute-force reference solvers");
  c_oracle->require_subcommand(1);
  auto* o_ds = c_oracle->add_subcommand("double-strip");
  add_common(o_ds);
  auto* o_con = c_oracle->add_subcommand("constrained");
  o_con->add_option("--subset", subset_path, "file of 0-based point ids")
      ->required();
  add_common(o_con);
  auto* o_ann = c_oracle->add_subcommand("annulus");
  int resolution = 256, refine = 48;
  o_ann->add_option("--resolution", resolution, "grid resolution per axis");
  o_ann->add_option("--refine", refine, "refinement iterations");
  add_common(o_ann);
  auto* o_gam = c_oracle->add_subcommand("gamma-vertices");
  add_common(o_gam);

  auto* c_gen = app.add_subcommand("gen", "generate a random instance");
  GenParams gen;
  c_gen->add_option("--n", gen.n, "number of points")->required();
  c_gen->add_option("--seed", gen.seed, "random seed")->required();
  c_gen->add_option("--dist", gen.dist, "uniform|ring|parallelogram-ring")
      ->required();
  c_gen->add_option("--thickness", gen.thickness, "ring thickness");

  auto* c_render = app.add_subcommand("render", "render a result JSON to SVG");
  std::string result_path;
  c_render->add_option("--result", result_path, "result JSON file")->required();
  c_render->add_option("--svg", svg_path, "output SVG file")->required();
  add_common(c_render, /*with_svg=*/false);

  std::vector<std::string> argv_like = args;
  try {
    std::vector<const char*> cargs;
    cargs.push_back("stripfit");
    for (const std::string& a : argv_like) cargs.push_back(a.c_str());
    app.parse(int(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    io.out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    io.err << e.what() << "\n";
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto timing = [&] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };
  auto angle = [&](double a) { return deg ? a * kPi / 180.0 : a; };

  try {
    json doc;
    PointSet ps;
    const bool needs_points = !c_gen->parsed();
    if (needs_points) {
      ps = parse_points_file(input, io.in);
      if (ps.duplicates_removed > 0)
        io.err << "warning: removed " << ps.duplicates_removed
               << " duplicate point(s)\n";
    }

    if (c_strip->parsed()) {
      const Orientation o(angle(theta));
      const ExtremeResult er = extreme_points(ps, o);
      doc["problem"] = "strip";
      doc["solver"] = "hull_calipers.extreme_points";
      doc["width"] = er.strip.width();
      doc["theta"] = o.theta;
      doc["strip"] = strip_json(er.strip);
      doc["witness"] = json{{"chi_plus", er.chi_plus}, {"chi_minus", er.chi_minus}};
    } else if (c_ds->parsed()) {
      doc["problem"] = "double-strip";
      DoubleStripResult r;
      if (*ds_theta) {
        r = solve_fixed(ps, Orientation(angle(theta)));
        doc["solver"] = "double_strip.fixed";
      } else {
        r = solve_all_orientations(ps);
        doc["solver"] = "double_strip.all_orientations";
      }
      doc["width"] = r.width;
      doc["theta"] = r.theta;
      doc["outer"] = strip_json(r.strip.outer);
      doc["inner"] = strip_json(r.strip.inner);
      doc["witness"] = json{{"chi_plus", r.chi_plus},
                            {"chi_minus", r.chi_minus},
                            {"q_plus", r.q_plus},
                            {"q_minus", r.q_minus}};
    } else if (c_con->parsed()) {
      const std::vector<int> subset = parse_subset(subset_path, ps.size());
      const DoubleStripResult r = solve_constrained(ps, subset);
      doc["problem"] = "constrained";
      doc["solver"] = "constrained_double_strip.solve";
      doc["width"] = r.width;
      doc["theta"] = r.theta;
      doc["subset_size"] = subset.size();
      doc["outer"] = strip_json(r.strip.outer);
      doc["inner"] = strip_json(r.strip.inner);
      doc["witness"] = json{{"chi_plus", r.chi_plus},
                            {"chi_minus", r.chi_minus},
                            {"q_plus", r.q_plus},
                            {"q_minus", r.q_minus}};
    } else if (c_dyn->parsed()) {
      std::ifstream script(script_path);
      if (!script) throw ParseError("cannot open script: " + script_path);
      std::optional<double> thr;
      if (*dyn_decide) thr = decide_w;
      doc = run_script(ps, script, thr);
    } else if (c_ann->parsed()) {
      doc["problem"] = "annulus";
      AnnulusResult r;
      if (*an_free) {
        r = solve_general(ps);
        doc["solver"] = "annulus.general";
        doc["validated"] = r.validated;
      } else if (*an_theta) {
        r = solve_fixed_fixed(ps, Orientation(angle(theta)),
                              Orientation(angle(phi)));
        doc["solver"] = "annulus.fixed_fixed";
        doc["witness"] = json{{"point", r.witness_point}};
      } else if (*an_phi) {
        r = solve_fixed_phi(ps, Orientation(angle(phi)));
        doc["solver"] = "annulus.fixed_phi";
      } else {
        throw CLI::ValidationError("annulus",
                                   "one of --free, --phi, --theta --phi required");
      }
      doc["width"] = r.width;
      doc["theta"] = r.theta;
      doc["phi"] = r.phi;
      doc["annulus"] = annulus_json(r.annulus);
    } else if (c_oracle->parsed()) {
      doc["problem"] = "oracle";
      if (o_ds->parsed()) {
        const OracleReport r = oracle_double_strip(ps);
        doc["solver"] = "oracle.double_strip";
        doc["value"] = r.value;
        doc["theta"] = r.theta;
        doc["certified"] = r.certified;
        doc["method"] = "candidate-enum";
      } else if (o_con->parsed()) {
        const std::vector<int> subset = parse_subset(subset_path, ps.size());
        const OracleReport r = oracle_constrained(ps, subset);
        doc["solver"] = "oracle.constrained";
        doc["value"] = r.value;
        doc["theta"] = r.theta;
        doc["certified"] = r.certified;
        doc["method"] = "candidate-enum";
      } else if (o_ann->parsed()) {
        const OracleReport r = oracle_annulus_grid(ps, resolution, refine);
        doc["solver"] = "oracle.annulus_grid";
        doc["value"] = r.value;
        doc["theta"] = r.theta;
        doc["phi"] = r.phi;
        doc["certified"] = r.certified;
        doc["tolerance"] = r.tolerance;
        doc["method"] = "grid-refine";
      } else {
        const std::vector<GammaOracleVertex> vs = oracle_gamma_vertices(ps);
        doc["solver"] = "oracle.gamma_vertices";
        doc["count"] = vs.size();
        json arr = json::array();
        for (const auto& v : vs) arr.push_back(json::array({v.theta, v.y}));
        doc["vertices"] = arr;
        doc["certified"] = true;
        doc["method"] = "exhaustive";
      }
    } else if (c_gen->parsed()) {
      io.out << generate_points(gen);
      return 0;
    } else if (c_render->parsed()) {
      std::ifstream rf(result_path);
      if (!rf) throw ParseError("cannot open result: " + result_path);
      json result = json::parse(rf);
      std::ofstream sf(svg_path);
      if (!sf) throw ParseError("cannot open svg output: " + svg_path);
      sf << render_svg(ps, result);
      doc["problem"] = "render";
      doc["svg"] = svg_path;
    }

    if (needs_points) {
      doc["input"] =
          json{{"points", ps.size()}, {"duplicates_removed", ps.duplicates_removed}};
    }
    doc["timing_ms"] = timing();
    if (!svg_path.empty() && !c_render->parsed()) {
      std::ofstream sf(svg_path);
      if (!sf) throw ParseError("cannot open svg output: " + svg_path);
      sf << render_svg(ps, doc);
    }
    io.out << doc.dump(2) << "\n";
    return 0;
  } catch (const CLI::Error& e) {
    io.err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace io
}  // namespace stripfit
