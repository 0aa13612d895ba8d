// ambitoric: command-line front end. Exit codes: 0 success, 1 negative verdict
// (classify), 2 input error, 3 internal invariant failure.
#include "ambitoric/classify.hpp"
#include "ambitoric/io.hpp"
#include "ambitoric/special.hpp"
#include "ambitoric/tensors.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ambitoric;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Rational> parse_list(const std::string& text, size_t n, const std::string& what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::exception&) {
      throw InputError(what + ": not a rational: \"" + item + "\"");
    }
  }
  if (n && out.size() != n) throw InputError(what + ": expected " + std::to_string(n) + " comma-separated rationals");
  return out;
}

Rational parse_one(const std::string& text, const std::string& what) { return parse_list(text, 1, what)[0]; }

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

int parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return 1;
  if (s == "-" || s == "minus") return -1;
  throw InputError("sign must be + or -");
}

std::string matrix_text(const Eigen::Matrix4d& m) {
  std::ostringstream o;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) o << (j ? " " : "  ") << fmt(m(i, j), 12);
    o << "\n";
  }
  return o.str();
}

// --- check ----------------------------------------------------------------

struct Tally {
  int passed = 0, failed = 0;
  std::ostringstream log;
  void record(const std::string& name, bool ok, double worst, int samples) {
    (ok ? passed : failed)++;
    log << (ok ? "PASS " : "FAIL ") << name << "  worst=" << fmt(worst, 3) << "  samples=" << samples << "\n";
  }
};

// points of a component a little away from every singular locus
std::vector<std::pair<double, double>> check_points(const AnsatzSpec& s, const BoxComponent& c, int per_side) {
  std::vector<std::pair<double, double>> cand, out;
  if (c.box_type) {
    for (int i = 0; i < per_side; ++i)
      for (int j = 0; j < per_side; ++j)
        cand.emplace_back(c.x_range.at(0.15 + 0.7 * i / (per_side - 1)), c.y_range.at(0.15 + 0.7 * j / (per_side - 1)));
  } else {
    size_t stride = std::max<size_t>(1, c.cells.size() / (per_side * per_side));
    int g = c.grid_n;
    for (size_t k = stride / 2; k < c.cells.size(); k += stride) {
      auto [i, j] = c.cells[k];
      cand.emplace_back(s.x_interval.at((i + 0.5) / g), s.y_interval.at((j + 0.5) / g));
    }
  }
  for (auto [x, y] : cand) {
    double scale = 1 + std::abs(x) + std::abs(y);
    if (distance_to_singular(s, MetricChoice::g0(), x, y) > 0.02 * scale && s.A(x) > 0 && s.B(y) > 0)
      out.emplace_back(x, y);
  }
  return out;
}

double rel(double err, double size) { return err / std::max(1.0, size); }

int run_check(const AnsatzSpec& s, int grid, double h, double tol, double dtol, std::string& report) {
  Tally t;
  auto comps = validate(s, grid);
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : comps)
    for (auto p : check_points(s, c, 4)) pts.push_back(p);

  for (int sign : {1, -1}) {
    std::string tag = sign > 0 ? "+" : "-";
    MetricChoice g = sign > 0 ? MetricChoice::gplus() : MetricChoice::gminus();
    double wj = 0, wg = 0, wo = 0, wd = 0, ws = 0;
    int nd = 0;
    for (auto [x, y] : pts) {
      Eigen::Matrix4d G = metric_matrix(s, g, x, y), O = omega_matrix(s, sign, x, y), J = complex_structure(s, sign, x, y);
      wj = std::max(wj, rel((J * J + Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), J.cwiseAbs().maxCoeff()));
      wg = std::max(wg, rel((J.transpose() * G * J - G).cwiseAbs().maxCoeff(), G.cwiseAbs().maxCoeff()));
      wo = std::max(wo, rel((J.transpose() * G - O).cwiseAbs().maxCoeff(), O.cwiseAbs().maxCoeff()));
      OmegaSquare sq = omega_square(s, sign, x, y);
      ws = std::max(ws, std::abs(sq.measured - sq.predicted) / std::abs(sq.predicted));
      try {
        // relative to the size of omega at the point
        auto d = d_omega(s, sign, {x, y, 0, 0}, h);
        for (double v : d) wd = std::max(wd, rel(std::abs(v), O.cwiseAbs().maxCoeff()));
        ++nd;
      } catch (const std::domain_error&) {
      }
    }
    int n = static_cast<int>(pts.size());
    t.record("J" + tag + "^2 = -Id", wj < tol, wj, n);
    t.record("g" + tag + "(J" + tag + ".,J" + tag + ".) = g" + tag, wg < tol, wg, n);
    t.record("omega" + tag + " = g" + tag + "(J" + tag + ".,.)", wo < tol, wo, n);
    t.record("d omega" + tag + " = 0", wd < dtol, wd, nd);
    t.record("omega" + tag + "^2 coefficient", ws < 1e-8, ws, n);
  }
  {
    double w = 0;
    for (auto [x, y] : pts) {
      Eigen::Matrix4d Jp = complex_structure(s, 1, x, y), Jm = complex_structure(s, -1, x, y);
      w = std::max(w, rel((Jp * Jm - Jm * Jp).cwiseAbs().maxCoeff(), Jp.cwiseAbs().maxCoeff() * Jm.cwiseAbs().maxCoeff()));
    }
    t.record("J+ J- = J- J+", w < tol, w, static_cast<int>(pts.size()));
  }
  {
    double w = 0;
    for (auto [x, y] : pts) {
      double v0 = fibre_volume(s, MetricChoice::g0(), x, y), vp = fibre_volume(s, MetricChoice::gplus(), x, y),
             vm = fibre_volume(s, MetricChoice::gminus(), x, y);
      w = std::max(w, std::abs(v0 * v0 - vp * vm) / std::abs(v0 * v0));
    }
    t.record("fibre volume G0^2 = G+ G-", w < 1e-12, w, static_cast<int>(pts.size()));
  }
  if (normal_form(s)) {
    for (int sign : {1, -1}) {
      Conic c = fold_conic(s, sign);
      if (c.degenerate) continue;
      double w = 0;
      int n = 0;
      for (int k = 0; k < 50; ++k) {
        double tpar = -3 + 6.0 * (k + 0.5) / 50;
        auto [x, y] = fold_point(s, sign, tpar);
        try {
          MomentPoint m = moment_map(s, sign, x, y);
          w = std::max(w, std::abs(c(m.vec())));
          ++n;
        } catch (const std::domain_error&) {
        }
      }
      t.record(std::string("fold image on the conic (") + (sign > 0 ? "x=y" : "q=0") + ")", w < 1e-10, w, n);
    }
  }
  {
    int n = 0, bad = 0;
    for (int sign : {1, -1})
      for (Axis ax : {Axis::X, Axis::Y}) {
        const Arc& I = ax == Axis::X ? s.x_interval : s.y_interval;
        for (const Endpoint& e : {I.lo, I.hi}) {
          if (!e.infinite && !e.value.is_rational()) continue;
          try {
            auto l = level_set_line(s, sign, ax, e);
            if (!l.tangency.applicable) continue;
            ++n;
            if (!l.tangency.certified) ++bad;
          } catch (const std::exception&) {
          }
        }
      }
    t.record("edge lines tangent to the fold conic", bad == 0, bad, n);
  }
  {
    // transport away from both intervals and back
    bool ok = false;
    std::string why;
    for (const Mobius& m : {Mobius(1, 3, 0, 1), Mobius(2, 1, 1, 5), Mobius(1, 0, -1, 7), Mobius(3, -1, 1, 9)}) {
      try {
        AnsatzSpec there = mobius_transport(s, m), back = mobius_transport(there, m.inverse());
        back.name = s.name;
        ok = dump_spec(back) == dump_spec(s);
        break;
      } catch (const std::invalid_argument&) {
      }
    }
    t.record("gauge round trip", ok, ok ? 0 : 1, 1);
  }
  report = t.log.str() + std::to_string(t.passed) + " passed, " + std::to_string(t.failed) + " failed\n";
  return t.failed ? 3 : 0;
}

// --- figures --------------------------------------------------------------

std::vector<Eigen::Vector2d> clip_line(const LineInTstar& l, const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
  // points of <n, mu> = c on the box boundary
  std::vector<Eigen::Vector2d> pts;
  const Eigen::Vector2d& n = l.normal;
  for (double x : {lo.x(), hi.x()})
    if (std::abs(n.y()) > 1e-14) {
      double y = (l.offset - n.x() * x) / n.y();
      if (y >= lo.y() && y <= hi.y()) pts.emplace_back(x, y);
    }
  for (double y : {lo.y(), hi.y()})
    if (std::abs(n.x()) > 1e-14) {
      double x = (l.offset - n.y() * y) / n.x();
      if (x >= lo.x() && x <= hi.x()) pts.emplace_back(x, y);
    }
  if (pts.size() < 2) return {};
  return {pts.front(), pts.back()};
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> bounds(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::Vector2d lo(1e300, 1e300), hi(-1e300, -1e300);
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Eigen::Vector2d pad = 0.1 * (hi - lo).cwiseMax(Eigen::Vector2d(1e-3, 1e-3));
  return {lo - pad, hi + pad};
}

std::string moment_svg(const AnsatzSpec& s, int sign, const std::vector<MomentSample>& rows) {
  std::vector<Eigen::Vector2d> pts;
  for (const auto& r : rows)
    if (std::isfinite(r.mu1) && std::isfinite(r.mu2)) pts.emplace_back(r.mu1, r.mu2);
  // robust frame: drop the outer 10% of samples in each coordinate
  std::vector<double> a, b;
  for (const auto& p : pts) {
    a.push_back(p.x());
    b.push_back(p.y());
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Eigen::Vector2d> core;
  if (!pts.empty()) {
    size_t k = pts.size() / 10;
    core = {{a[k], b[k]}, {a[a.size() - 1 - k], b[b.size() - 1 - k]}};
  }
  auto [lo, hi] = bounds(core);
  std::vector<SvgLayer> layers;
  SvgLayer frame;
  frame.points = {lo, {hi.x(), lo.y()}, hi, {lo.x(), hi.y()}};
  frame.stroke = "#dddddd";
  frame.closed = true;
  layers.push_back(frame);
  SvgLayer dots;
  dots.dots = true;
  dots.width = 1.2;
  dots.stroke = "#3060a0";
  for (const auto& p : pts)
    if (p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y()) dots.points.push_back(p);
  layers.push_back(dots);
  // only the fold of the same sign has a finite image
  if (normal_form(s)) {
    for (int fs : {sign}) {
      Conic c = fold_conic(s, fs);
      if (c.degenerate) {
        SvgLayer d;
        d.dots = true;
        d.width = 3;
        d.stroke = "#c03030";
        for (const auto& p : c.points)
          if (p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y()) d.points.push_back(p);
        layers.push_back(d);
        continue;
      }
      for (auto& pl : conic_polylines(c, lo, hi)) {
        SvgLayer l;
        l.points = std::move(pl);
        l.stroke = "#c03030";
        l.width = 1.5;
        layers.push_back(l);
      }
    }
  }
  for (Axis ax : {Axis::X, Axis::Y}) {
    const Arc& I = ax == Axis::X ? s.x_interval : s.y_interval;
    for (const Endpoint& e : {I.lo, I.hi}) {
      try {
        auto l = level_set_line(s, sign, ax, e);
        SvgLayer seg;
        seg.points = clip_line(l.line, lo, hi);
        seg.stroke = "#808080";
        layers.push_back(seg);
      } catch (const std::exception&) {
      }
    }
  }
  return render_svg(layers, 480, false);
}

std::string polygon_svg(const StandardPolygon& sp) {
  auto [lo, hi] = bounds(sp.polygon.vertices);
  // keep some of the hyperbola in view
  lo = lo.cwiseMin(Eigen::Vector2d(-1.5, -1.5));
  hi = hi.cwiseMax(Eigen::Vector2d(1.5, 1.5));
  std::vector<SvgLayer> layers;
  SvgLayer frame;
  frame.points = {lo, {hi.x(), lo.y()}, hi, {lo.x(), hi.y()}};
  frame.stroke = "#dddddd";
  frame.closed = true;
  layers.push_back(frame);
  SvgLayer poly;
  poly.points = sp.polygon.vertices;
  poly.closed = true;
  poly.fill = "#dde6f4";
  poly.stroke = "#3060a0";
  poly.width = 1.5;
  layers.push_back(poly);
  Conic c;
  c.Q << 0, 2, 0, 2, 0, 0, 0, 0, 1;  // 4 mu1 mu2 + 1
  for (auto& pl : conic_polylines(c, lo, hi, 800)) {
    SvgLayer l;
    l.points = std::move(pl);
    l.stroke = "#c03030";
    layers.push_back(l);
  }
  SvgLayer tp;
  tp.dots = true;
  tp.width = 3;
  tp.stroke = "#c03030";
  for (const auto& t : sp.tangency)
    if (t) tp.points.push_back(*t);
  layers.push_back(tp);
  return render_svg(layers);
}

Json polygon_json(const StandardPolygon& sp) {
  Json j;
  j["name"] = sp.name;
  Json verts = Json::array(), edges = Json::array(), corners = Json::array();
  for (const auto& v : sp.polygon.vertices) verts.push_back(Json::array({std::stod(fmt(v.x(), 12)), std::stod(fmt(v.y(), 12))}));
  for (size_t i = 0; i < sp.polygon.normals.size(); ++i) {
    Json e;
    e["normal"] = Json::array({rational_to_json(sp.polygon.normals[i][0]), rational_to_json(sp.polygon.normals[i][1])});
    e["offset"] = std::stod(fmt(sp.polygon.offsets[i], 12));
    if (sp.tangency[i]) e["tangent_at"] = Json::array({std::stod(fmt(sp.tangency[i]->x(), 12)), std::stod(fmt(sp.tangency[i]->y(), 12))});
    else e["tangent_at"] = "asymptote";
    edges.push_back(std::move(e));
  }
  bool delzant = true;
  for (const auto& c : delzant_check(sp.polygon, sp.lattice)) {
    corners.push_back(Json{{"edges", Json::array({c.edge_a, c.edge_b})}, {"det", rational_to_json(c.det)}, {"ok", c.ok}});
    delzant = delzant && c.ok;
  }
  j["vertices"] = verts;
  j["edges"] = edges;
  j["corners"] = corners;
  j["delzant"] = delzant;
  j["normal_relation"] = sp.relation_holds;
  return j;
}

std::string polygon_csv(const StandardPolygon& sp) {
  std::ostringstream o;
  o << "vertex,mu1,mu2\n";
  for (size_t i = 0; i < sp.polygon.vertices.size(); ++i)
    o << i << ',' << fmt(sp.polygon.vertices[i].x()) << ',' << fmt(sp.polygon.vertices[i].y()) << '\n';
  return o.str();
}

// --- CSC data files -------------------------------------------------------

Json csc_to_json(const CSCData& d) {
  Json j;
  auto quad = [](const Quadratic& q) {
    return Json::array({rational_to_json(q.c0), rational_to_json(q.c1), rational_to_json(q.c2)});
  };
  j["q"] = quad(d.q);
  j["p"] = quad(d.p);
  j["rho"] = quad(d.rho);
  Json R = Json::array();
  for (int k = 0; k <= std::max(d.R.degree(), 0); ++k) R.push_back(rational_to_json(d.R.coeff(k)));
  j["R"] = R;
  if (d.x_interval) j["x_interval"] = Json::array({endpoint_to_json(d.x_interval->lo), endpoint_to_json(d.x_interval->hi)});
  if (d.y_interval) j["y_interval"] = Json::array({endpoint_to_json(d.y_interval->lo), endpoint_to_json(d.y_interval->hi)});
  return j;
}

CSCData csc_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  for (const auto& [k, v] : j.items())
    if (k != "q" && k != "p" && k != "rho" && k != "R" && k != "x_interval" && k != "y_interval")
      throw InputError(path + ": unknown key \"" + k + "\"");
  auto quad = [&](const char* k) {
    if (!j.contains(k) || !j[k].is_array() || j[k].size() != 3) throw InputError(path + ": \"" + k + "\" needs 3 entries");
    return Quadratic(rational_from_json(j[k][0]), rational_from_json(j[k][1]), rational_from_json(j[k][2]));
  };
  CSCData d;
  d.q = quad("q");
  d.p = quad("p");
  d.rho = quad("rho");
  if (!j.contains("R") || !j["R"].is_array()) throw InputError(path + ": \"R\" missing");
  std::vector<Rational> r;
  for (const auto& e : j["R"]) r.push_back(rational_from_json(e));
  d.R = Poly(r);
  auto arc = [&](const char* k) -> std::optional<Arc> {
    if (!j.contains(k)) return std::nullopt;
    if (!j[k].is_array() || j[k].size() != 2) throw InputError(path + ": \"" + k + "\" needs [lo, hi]");
    return Arc{endpoint_from_json(j[k][0]), endpoint_from_json(j[k][1])};
  };
  d.x_interval = arc("x_interval");
  d.y_interval = arc("y_interval");
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ambitoric: ambitoric ansatz spaces, moment maps and completability verdicts"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("-o,--output", out_path, "output file (default stdout)");

  std::string spec_path;
  int grid = 0;
  double h = 1e-3, tol = 1e-10, dtol = 1e-6;
  std::string format, sign_text = "+";

  auto* validate_cmd = app.add_subcommand("validate", "list the components of the box");
  validate_cmd->add_option("spec", spec_path, "spec file")->required();
  validate_cmd->add_option("--grid", grid, "component grid (default AMBITORIC_GRID or 48)");

  double px = 0, py = 0;
  std::string field = "all";
  auto* eval_cmd = app.add_subcommand("eval", "tensor blocks at a point");
  eval_cmd->add_option("spec", spec_path, "spec file")->required();
  eval_cmd->add_option("--x", px, "x coordinate")->required();
  eval_cmd->add_option("--y", py, "y coordinate")->required();
  eval_cmd->add_option("--field", field, "G0, G+, G-, Gp, omega+, omega-, J+, J- or all")
      ->check(CLI::IsMember({"all", "G0", "G+", "G-", "Gp", "omega+", "omega-", "J+", "J-"}));

  auto* check_cmd = app.add_subcommand("check", "run the invariant suite on a spec");
  check_cmd->add_option("spec", spec_path, "spec file")->required();
  check_cmd->add_option("--grid", grid, "component grid");
  check_cmd->add_option("--step", h, "finite-difference step")->capture_default_str();
  check_cmd->add_option("--tol", tol, "algebraic identity tolerance")->capture_default_str();
  check_cmd->add_option("--dtol", dtol, "d omega tolerance")->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "completability verdict (exit 1 if not completable)");
  classify_cmd->add_option("spec", spec_path, "spec file")->required();
  classify_cmd->add_option("--grid", grid, "component grid");
  bool summary = false;
  classify_cmd->add_flag("--summary", summary, "only the verdict flags and violated rules");

  int samples = 40;
  auto* moment_cmd = app.add_subcommand("moment", "moment map samples as CSV or an SVG overlay");
  moment_cmd->add_option("spec", spec_path, "spec file")->required();
  moment_cmd->add_option("--sign", sign_text, "+ or -")->capture_default_str();
  moment_cmd->add_option("--grid", grid, "component grid");
  moment_cmd->add_option("--samples", samples, "samples per side for box-type components")->capture_default_str();
  moment_cmd->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));

  std::string M_text = "1", alpha_text = "1/2", region = "exterior";
  auto* kerr_cmd = app.add_subcommand("kerr", "Riemannian Kerr spec");
  kerr_cmd->add_option("--M", M_text, "mass")->capture_default_str();
  kerr_cmd->add_option("--alpha", alpha_text, "rotation parameter, 0 < |alpha| < M")->capture_default_str();
  kerr_cmd->add_option("--region", region, "exterior or interior")
      ->check(CLI::IsMember({"exterior", "interior"}))
      ->capture_default_str();

  std::string example;
  auto* examples_cmd = app.add_subcommand("examples", "named examples: cp2, hirzebruch:k, kerr, csc:<file>");
  examples_cmd->add_option("name", example, "example name")->required();
  examples_cmd->add_option("--format", format, "json, csv or svg")->check(CLI::IsMember({"json", "csv", "svg"}));

  std::string mobius_text;
  bool inverse = false;
  auto* gauge_cmd = app.add_subcommand("gauge", "transport a spec by x -> (a x + b)/(c x + d)");
  gauge_cmd->add_option("spec", spec_path, "spec file")->required();
  gauge_cmd->add_option("--mobius", mobius_text, "a,b,c,d")->required();
  gauge_cmd->add_flag("--inverse", inverse, "apply the inverse map");

  std::string q_text = "0,1,0";
  unsigned seed = 1;
  auto* csc_cmd = app.add_subcommand("csc-gen", "random admissible constant scalar curvature data");
  csc_cmd->add_option("--q", q_text, "c0,c1,c2 of a normal-form q")->capture_default_str();
  csc_cmd->add_option("--seed", seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate_cmd) {
      AnsatzSpec s = load_spec(spec_path);
      Json out = Json::array();
      for (const auto& c : validate(s, grid)) {
        Json j;
        j["label"] = c.label;
        j["box_type"] = c.box_type;
        j["sign_x_minus_y"] = c.sign_xy;
        j["sign_q"] = c.sign_q;
        j["x_range"] = Json::array({endpoint_to_json(c.x_range.lo), endpoint_to_json(c.x_range.hi)});
        j["y_range"] = Json::array({endpoint_to_json(c.y_range.lo), endpoint_to_json(c.y_range.hi)});
        j["sample"] = Json::array({fmt(c.sample_x), fmt(c.sample_y)});
        if (!c.box_type) j["cells"] = c.cells.size();
        out.push_back(std::move(j));
      }
      emit(pretty(out) + "\n", out_path);
      return 0;
    }
    if (*eval_cmd) {
      AnsatzSpec s = load_spec(spec_path);
      std::vector<std::pair<std::string, Field>> fields{
          {"G0", Field::G0},         {"G+", Field::Gplus},        {"G-", Field::Gminus}, {"Gp", Field::Gp},
          {"omega+", Field::OmegaPlus}, {"omega-", Field::OmegaMinus}, {"J+", Field::Jplus},  {"J-", Field::Jminus}};
      std::ostringstream o;
      o << "# basis d/dx, d/dy, d/dt1, d/dt2 at x=" << fmt(px) << " y=" << fmt(py) << "\n";
      for (const auto& [name, f] : fields) {
        if (field != "all" && field != name) continue;
        if (f == Field::Gp && s.metric.tag != MetricChoice::Tag::Gp) {
          if (field == name) throw InputError("spec metric is not Gp");
          continue;
        }
        try {
          o << name << "\n" << matrix_text(eval_field(s, f, {px, py, 0, 0}).m);
        } catch (const std::domain_error& e) {
          o << name << "\n  singular: " << e.what() << "\n";
        }
      }
      emit(o.str(), out_path);
      return 0;
    }
    if (*check_cmd) {
      AnsatzSpec s = load_spec(spec_path);
      std::string report;
      int rc = run_check(s, grid, h, tol, dtol, report);
      emit(report, out_path);
      return rc;
    }
    if (*classify_cmd) {
      AnsatzSpec s = load_spec(spec_path);
      auto vs = classify_spec(s, grid);
      OrbifoldCheck oc = complete_orbifold_check(s);
      Json full = verdicts_to_json(s, vs, oc);
      emit(pretty(summary ? verdict_summary(full) : full) + "\n", out_path);
      bool ok = std::all_of(vs.begin(), vs.end(), [](const Verdict& v) { return v.completable; });
      return ok ? 0 : 1;
    }
    if (*moment_cmd) {
      AnsatzSpec s = load_spec(spec_path);
      int sign = parse_sign(sign_text);
      std::vector<MomentSample> rows;
      for (const auto& c : validate(s, grid)) {
        auto part = sample_component(s, c, sign, samples);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      if (format == "svg") {
        emit(moment_svg(s, sign, rows), out_path);
      } else {
        std::optional<Conic> conic;
        if (normal_form(s)) conic = fold_conic(s, sign);
        emit(moment_csv(rows, conic ? &*conic : nullptr), out_path);
      }
      return 0;
    }
    if (*kerr_cmd) {
      KerrParams k{parse_one(M_text, "--M"), parse_one(alpha_text, "--alpha")};
      emit(dump_spec(kerr(k, region == "exterior" ? KerrRegion::Exterior : KerrRegion::Interior)), out_path);
      return 0;
    }
    if (*examples_cmd) {
      if (example == "cp2" || example.rfind("hirzebruch:", 0) == 0) {
        StandardPolygon sp;
        if (example == "cp2") {
          sp = standard_polygon_cp2();
        } else {
          std::string k = example.substr(11);
          if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("hirzebruch:k needs a positive integer k");
          sp = standard_polygon_hirzebruch(std::stoi(k));
        }
        if (format == "svg") emit(polygon_svg(sp), out_path);
        else if (format == "csv") emit(polygon_csv(sp), out_path);
        else emit(pretty(polygon_json(sp)) + "\n", out_path);
        return 0;
      }
      if (format == "svg" || format == "csv") throw InputError(example + " is a spec; use the moment command for figures");
      if (example == "kerr") {
        emit(dump_spec(kerr({}, KerrRegion::Exterior)), out_path);
        return 0;
      }
      if (example.rfind("csc:", 0) == 0) {
        CSCResult r = csc_construct(csc_from_file(example.substr(4)));
        std::cerr << "einstein: " << (r.report.einstein ? "yes" : "no")
                  << ", symmetric: " << (r.report.symmetric ? "yes" : "no") << "\n";
        emit(dump_spec(r.spec), out_path);
        return 0;
      }
      throw InputError("unknown example \"" + example + "\" (cp2, hirzebruch:k, kerr, csc:<file>)");
    }
    if (*gauge_cmd) {
      AnsatzSpec s = load_spec(spec_path);
      auto m = parse_list(mobius_text, 4, "--mobius");
      Mobius M(m[0], m[1], m[2], m[3]);
      if (M.det() == 0) throw InputError("--mobius: singular matrix");
      emit(dump_spec(mobius_transport(s, inverse ? M.inverse() : M)), out_path);
      return 0;
    }
    if (*csc_cmd) {
      auto c = parse_list(q_text, 3, "--q");
      emit(pretty(csc_to_json(random_csc_data(Quadratic(c[0], c[1], c[2]), seed))) + "\n", out_path);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid spec: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
