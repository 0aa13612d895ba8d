#include "ambitoric/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ambitoric {

namespace {

using Kind = BoundaryComponent::Kind;

[[noreturn]] void fail(const std::string& m) { throw SpecParseError(m); }

std::vector<Rational> rationals(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(what + ": expected a list");
  std::vector<Rational> out;
  for (const auto& e : j) {
    try {
      out.push_back(rational_from_json(e));
    } catch (const SpecParseError& err) {
      fail(what + ": " + err.what());
    }
  }
  return out;
}

Quadratic quadratic_from_json(const Json& j, const std::string& what) {
  auto c = rationals(j, what);
  if (c.size() != 3) fail(what + ": a quadratic needs exactly 3 entries [c0, c1, c2]");
  return Quadratic(c[0], c[1], c[2]);
}

Json quadratic_to_json(const Quadratic& q) {
  return Json::array({rational_to_json(q.c0), rational_to_json(q.c1), rational_to_json(q.c2)});
}

Json poly_to_json(const Poly& p) {
  Json a = Json::array();
  for (int k = 0; k <= std::max(p.degree(), 0); ++k) a.push_back(rational_to_json(p.coeff(k)));
  return a;
}

Poly poly_from_json(const Json& j, const std::string& what) {
  auto c = rationals(j, what);
  if (c.empty()) fail(what + ": empty coefficient list");
  return Poly(c);
}

Arc arc_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) fail(what + ": expected [lo, hi]");
  try {
    Arc a{endpoint_from_json(j[0]), endpoint_from_json(j[1])};
    if (a.lo == a.hi) fail(what + ": empty interval");
    return a;
  } catch (const SpecParseError& e) {
    fail(what + ": " + e.what());
  }
}

MetricChoice metric_from_json(const Json& j) {
  if (j.is_string()) {
    std::string t = j.get<std::string>();
    if (t == "G0") return MetricChoice::g0();
    if (t == "G+") return MetricChoice::gplus();
    if (t == "G-") return MetricChoice::gminus();
    fail("metric: unknown choice \"" + t + "\" (G0, G+, G-, {\"Gp\": [..]})");
  }
  if (j.is_object() && j.size() == 1 && j.contains("Gp")) return MetricChoice::gp(quadratic_from_json(j["Gp"], "metric.Gp"));
  fail("metric: expected \"G0\", \"G+\", \"G-\" or {\"Gp\": [p0, p1, p2]}");
}

Json metric_to_json(const MetricChoice& g) {
  switch (g.tag) {
    case MetricChoice::Tag::G0: return "G0";
    case MetricChoice::Tag::Gplus: return "G+";
    case MetricChoice::Tag::Gminus: return "G-";
    case MetricChoice::Tag::Gp: return Json{{"Gp", quadratic_to_json(g.p)}};
  }
  return "G0";
}

bool is_identity(const Mat2Q& L) { return L[0][0] == 1 && L[0][1] == 0 && L[1][0] == 0 && L[1][1] == 1; }

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Edge: return "edge";
    case Kind::Fold: return "fold";
    case Kind::Corner: return "corner";
    case Kind::PLocus: return "p-locus";
  }
  return "?";
}

Json status_to_json(const DistanceStatus& st) {
  Json j;
  j["verdict"] = to_string(st.verdict);
  if (st.multiplicity) j["multiplicity"] = *st.multiplicity;
  if (st.factor_order) j["factor_order"] = *st.factor_order;
  if (st.r_exponent) j["r_exponent"] = *st.r_exponent;
  if (st.r_numeric) j["r_fitted"] = std::round(*st.r_numeric * 1e4) / 1e4;
  if (st.integral_convergent) j["integral_convergent"] = *st.integral_convergent;
  if (st.compatible_normal) {
    const auto& n = *st.compatible_normal;
    j["normal"] = Json::array({n.repr[0], n.repr[1]});
    j["normal_in_lattice"] = n.in_lattice;
  }
  if (!st.note.empty()) j["note"] = st.note;
  return j;
}

}  // namespace

Json rational_to_json(const Rational& r) {
  if (is_integer(r)) {
    BigInt n = numerator(r);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return static_cast<long long>(n);
  }
  return to_string(r);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(BigInt(j.get<unsigned long long>()))
                                                           : Rational(BigInt(j.get<long long>()));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      fail("not a rational: \"" + j.get<std::string>() + "\"");
    }
  }
  if (j.is_number()) fail("non-integer number " + j.dump() + ": write rationals as strings such as \"3/2\"");
  fail("expected a rational, got " + j.dump());
}

Json endpoint_to_json(const Endpoint& e) {
  if (e.infinite) return "inf";
  if (e.value.is_rational()) return rational_to_json(e.value.rational_value());
  const Poly& m = e.value.minpoly();
  int index = 0;
  for (const auto& iv : isolate_real_roots(m)) {
    if (RealAlg::from_interval(m, iv) == e.value) break;
    ++index;
  }
  return Json{{"root_of", poly_to_json(m)}, {"index", index}};
}

Endpoint endpoint_from_json(const Json& j) {
  if (j.is_string() && (j == "inf" || j == "infinity")) return Endpoint::inf();
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      if (k != "root_of" && k != "index") fail("endpoint: unknown key \"" + k + "\"");
    if (!j.contains("root_of") || !j.contains("index") || !j["index"].is_number_integer())
      fail("endpoint: expected {\"root_of\": [..], \"index\": k}");
    Poly p = poly_from_json(j["root_of"], "root_of");
    int k = j["index"].get<int>();
    auto roots = isolate_real_roots(p);
    if (k < 0 || k >= static_cast<int>(roots.size()))
      fail("endpoint: " + p.str() + " has " + std::to_string(roots.size()) + " real roots, index " +
           std::to_string(k) + " requested");
    return Endpoint::finite(RealAlg::from_interval(p, roots[k]));
  }
  return Endpoint::finite(rational_from_json(j));
}

AnsatzSpec spec_from_json(const Json& j) {
  if (!j.is_object()) fail("spec: expected a JSON object");
  static const std::vector<std::string> keys{"name", "q", "frame", "A", "B", "x_interval", "y_interval", "lattice",
                                             "metric"};
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail("spec: unknown key \"" + k + "\"");
  for (const char* k : {"q", "A", "B", "x_interval", "y_interval"})
    if (!j.contains(k)) fail(std::string("spec: missing \"") + k + "\"");
  AnsatzSpec s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("name: expected a string");
    s.name = j["name"].get<std::string>();
  }
  s.q = quadratic_from_json(j["q"], "q");
  if (s.q.is_zero()) fail("q: the zero quadratic");
  if (j.contains("frame")) {
    const Json& f = j["frame"];
    if (!f.is_object() || f.size() != 2 || !f.contains("e1") || !f.contains("e2"))
      fail("frame: expected {\"e1\": [..], \"e2\": [..]}");
    s.frame = {quadratic_from_json(f["e1"], "frame.e1"), quadratic_from_json(f["e2"], "frame.e2")};
  } else {
    auto f = default_frame(s.q);
    if (!f) fail("q = " + s.q.str() + " is not a normal form; give a frame");
    s.frame = *f;
  }
  s.A = poly_from_json(j["A"], "A");
  s.B = poly_from_json(j["B"], "B");
  s.x_interval = arc_from_json(j["x_interval"], "x_interval");
  s.y_interval = arc_from_json(j["y_interval"], "y_interval");
  if (j.contains("lattice")) {
    const Json& L = j["lattice"];
    if (!L.is_array() || L.size() != 2) fail("lattice: expected [[a, b], [c, d]]");
    for (int r = 0; r < 2; ++r) {
      auto row = rationals(L[r], "lattice");
      if (row.size() != 2) fail("lattice: expected [[a, b], [c, d]]");
      s.lattice[r] = {row[0], row[1]};
    }
  }
  if (j.contains("metric")) s.metric = metric_from_json(j["metric"]);
  return s;
}

Json spec_to_json(const AnsatzSpec& s) {
  Json j;
  if (!s.name.empty()) j["name"] = s.name;
  j["q"] = quadratic_to_json(s.q);
  auto f = default_frame(s.q);
  if (!f || f->e1 != s.frame.e1 || f->e2 != s.frame.e2)
    j["frame"] = Json{{"e1", quadratic_to_json(s.frame.e1)}, {"e2", quadratic_to_json(s.frame.e2)}};
  j["A"] = poly_to_json(s.A);
  j["B"] = poly_to_json(s.B);
  j["x_interval"] = Json::array({endpoint_to_json(s.x_interval.lo), endpoint_to_json(s.x_interval.hi)});
  j["y_interval"] = Json::array({endpoint_to_json(s.y_interval.lo), endpoint_to_json(s.y_interval.hi)});
  if (!is_identity(s.lattice))
    j["lattice"] = Json::array({Json::array({rational_to_json(s.lattice[0][0]), rational_to_json(s.lattice[0][1])}),
                                Json::array({rational_to_json(s.lattice[1][0]), rational_to_json(s.lattice[1][1])})});
  if (s.metric.tag != MetricChoice::Tag::G0) j["metric"] = metric_to_json(s.metric);
  return j;
}

AnsatzSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(path + ": " + e.what());
  }
  AnsatzSpec s = spec_from_json(j);
  return s;
}

std::string pretty(const Json& j, int indent) {
  std::string flat = j.dump();
  if ((!j.is_object() && !j.is_array()) || static_cast<int>(flat.size()) + indent <= 80) return flat;
  std::string pad(indent + 2, ' '), out = j.is_object() ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out += first ? "" : ",\n";
    first = false;
    out += pad;
    if (j.is_object()) out += Json(it.key()).dump() + ": ";
    out += pretty(*it, indent + 2);
  }
  return out + "\n" + std::string(indent, ' ') + (j.is_object() ? "}" : "]");
}

std::string dump_spec(const AnsatzSpec& s) { return pretty(spec_to_json(s)) + "\n"; }

Json verdicts_to_json(const AnsatzSpec& s, const std::vector<Verdict>& vs, const OrbifoldCheck& oc) {
  Json out;
  if (!s.name.empty()) out["spec"] = s.name;
  out["metric"] = s.metric.str();
  Json comps = Json::array();
  for (const auto& v : vs) {
    Json c;
    c["component"] = v.component;
    c["completable"] = v.completable;
    c["extends_ambitoric"] = v.extends_ambitoric;
    c["violated_rules"] = v.violated_rules();
    Json reps = Json::array();
    for (const auto& r : v.reports) {
      Json rj;
      rj["kind"] = kind_name(r.component.kind);
      rj["label"] = r.component.label;
      if (!r.rule.empty()) rj["rule"] = r.rule;
      rj["violated"] = r.violated;
      if (r.status) rj["status"] = status_to_json(*r.status);
      rj["message"] = r.message;
      reps.push_back(std::move(rj));
    }
    c["reports"] = std::move(reps);
    comps.push_back(std::move(c));
  }
  out["components"] = std::move(comps);
  out["complete_orbifold"] = Json{{"accept", oc.accept}, {"diagnostics", oc.diagnostics}};
  return out;
}

Json verdict_summary(const Json& full) {
  Json out;
  Json comps = Json::array();
  for (const auto& c : full.at("components"))
    comps.push_back(Json{{"completable", c.at("completable")},
                         {"extends_ambitoric", c.at("extends_ambitoric")},
                         {"violated_rules", c.at("violated_rules")}});
  out["components"] = std::move(comps);
  out["complete_orbifold_accept"] = full.at("complete_orbifold").at("accept");
  return out;
}

std::string fmt(double v, int digits) {
  if (v == 0) v = 0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<MomentSample> sample_component(const AnsatzSpec& s, const BoxComponent& c, int sign, int n) {
  std::vector<std::pair<double, double>> pts;
  if (c.box_type || c.cells.empty()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pts.emplace_back(c.x_range.at((i + 0.5) / n), c.y_range.at((j + 0.5) / n));
  } else {
    int g = c.grid_n;
    for (auto [i, j] : c.cells) pts.emplace_back(s.x_interval.at((i + 0.5) / g), s.y_interval.at((j + 0.5) / g));
  }
  std::vector<MomentSample> out;
  for (auto [x, y] : pts) {
    try {
      MomentPoint m = moment_map(s, sign, x, y);
      out.push_back({x, y, m.mu1, m.mu2});
    } catch (const std::domain_error&) {
    }
  }
  return out;
}

std::string moment_csv(const std::vector<MomentSample>& rows, const Conic* conic) {
  std::ostringstream o;
  if (conic) {
    // homogeneous (mu1, mu2, 1)
    o << "# conic";
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) o << " Q" << i << j << "=" << fmt(conic->Q(i, j));
    o << (conic->exact ? " exact" : " fitted") << "\n";
  }
  o << "x,y,mu1,mu2\n";
  for (const auto& r : rows) o << fmt(r.x) << ',' << fmt(r.y) << ',' << fmt(r.mu1) << ',' << fmt(r.mu2) << '\n';
  return o.str();
}

std::vector<std::vector<Eigen::Vector2d>> conic_polylines(const Conic& c, const Eigen::Vector2d& lo,
                                                          const Eigen::Vector2d& hi, int n) {
  // Q(m1, m2) = a m2^2 + b m2 + c0 for fixed m1; track up to two branches
  const auto& Q = c.Q;
  std::vector<std::vector<Eigen::Vector2d>> out;
  std::array<std::vector<Eigen::Vector2d>, 2> cur;
  auto flush = [&](int k) {
    if (cur[k].size() >= 2) out.push_back(cur[k]);
    cur[k].clear();
  };
  for (int i = 0; i <= n; ++i) {
    double m1 = lo.x() + (hi.x() - lo.x()) * i / n;
    double a = Q(1, 1), b = 2 * (Q(0, 1) * m1 + Q(1, 2)), c0 = Q(0, 0) * m1 * m1 + 2 * Q(0, 2) * m1 + Q(2, 2);
    std::array<std::optional<double>, 2> r;
    if (std::abs(a) < 1e-14) {
      if (std::abs(b) > 1e-14) r[0] = -c0 / b;
    } else {
      double disc = b * b - 4 * a * c0;
      if (disc >= 0) {
        double sq = std::sqrt(disc);
        r[0] = (-b - sq) / (2 * a);
        r[1] = (-b + sq) / (2 * a);
        if (*r[0] > *r[1]) std::swap(r[0], r[1]);
      }
    }
    for (int k = 0; k < 2; ++k) {
      if (r[k] && *r[k] >= lo.y() && *r[k] <= hi.y()) cur[k].emplace_back(m1, *r[k]);
      else flush(k);
    }
  }
  flush(0);
  flush(1);
  return out;
}

std::string render_svg(const std::vector<SvgLayer>& layers, int size, bool equal_axes) {
  Eigen::Vector2d lo(1e300, 1e300), hi(-1e300, -1e300);
  for (const auto& l : layers)
    for (const auto& p : l.points) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  if (lo.x() > hi.x()) lo = hi = Eigen::Vector2d::Zero();
  Eigen::Vector2d span = (hi - lo).cwiseMax(Eigen::Vector2d(1e-9, 1e-9));
  if (equal_axes) span.setConstant(span.maxCoeff());
  Eigen::Vector2d mid = (lo + hi) / 2, half = 0.55 * span;
  lo = mid - half;
  double sx = size / (2 * half.x()), sy = size / (2 * half.y());
  auto px = [&](const Eigen::Vector2d& p) {
    return std::make_pair(fmt((p.x() - lo.x()) * sx, 7), fmt(size - (p.y() - lo.y()) * sy, 7));
  };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
    << size << ' ' << size << "\">\n";
  o << "<!-- viewport: px = (mu1 - " << fmt(lo.x()) << ") * " << fmt(sx) << ", py = " << size << " - (mu2 - "
    << fmt(lo.y()) << ") * " << fmt(sy) << " -->\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& l : layers) {
    if (l.dots) {
      o << "<g fill=\"" << l.stroke << "\">\n";
      for (const auto& p : l.points) {
        auto [x, y] = px(p);
        o << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << fmt(l.width, 4) << "\"/>\n";
      }
      o << "</g>\n";
      continue;
    }
    if (l.points.size() < 2) continue;
    o << "<path d=\"M";
    for (size_t i = 0; i < l.points.size(); ++i) {
      auto [x, y] = px(l.points[i]);
      o << (i ? " L" : "") << x << ',' << y;
    }
    if (l.closed) o << " Z";
    o << "\" fill=\"" << l.fill << "\" stroke=\"" << l.stroke << "\" stroke-width=\"" << fmt(l.width, 4)
      << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace ambitoric
