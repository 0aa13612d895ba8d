#include "ambitoric/classify.hpp"

#include <algorithm>
#include <stdexcept>

namespace ambitoric {

namespace {

using Kind = BoundaryComponent::Kind;
using Tag = MetricChoice::Tag;

std::string normal_text(const CompatibleNormal& n) { return "(" + n.repr[0] + ", " + n.repr[1] + ")"; }

}  // namespace

std::vector<std::string> Verdict::violated_rules() const {
  std::vector<std::string> out;
  for (const auto& r : reports)
    if (r.violated && std::find(out.begin(), out.end(), r.rule) == out.end()) out.push_back(r.rule);
  return out;
}

Verdict completability_verdict(const AnsatzSpec& spec, const MetricChoice& g, const BoxComponent& c) {
  AnsatzSpec s = spec;
  s.metric = g;
  Verdict v;
  v.metric = g;
  v.component = c.label;
  auto parts = decompose_boundary(s, c);
  std::vector<std::optional<DistanceStatus>> status(parts.size());
  bool folds_infinite = true;

  for (size_t i = 0; i < parts.size(); ++i) {
    const auto& b = parts[i];
    if (b.kind == Kind::Corner) continue;
    RuleReport r;
    r.component = b;
    if (b.kind == Kind::Fold) {
      r.status = fold_status(s, g, b);
      r.rule = "i";
      r.violated = true;
      r.message = "proper fold (" + r.status->note + ")";
      folds_infinite = folds_infinite && r.status->infinitely_distant();
    } else if (b.kind == Kind::PLocus) {
      r.status = fold_status(s, g, b);
      r.message = "P-locus, " + to_string(r.status->verdict) + " (" + r.status->note + ")";
    } else {
      try {
        r.status = edge_status(s, g, b);
      } catch (const std::invalid_argument& e) {
        r.rule = "boundary";
        r.violated = true;
        r.message = e.what();
        v.reports.push_back(std::move(r));
        continue;
      }
      const DistanceStatus& st = *r.status;
      if (b.is_fold_and_edge) {
        if (!st.infinitely_distant()) {
          folds_infinite = false;
          r.rule = "iii";
          if (g.tag != Tag::Gminus && g.tag != Tag::Gp) {
            r.violated = true;
            r.message = "finite fold-edge needs G- or Gp";
          } else {
            r.message = "finite fold-edge under " + g.str();
          }
        } else {
          r.message = "infinitely distant fold-edge";
        }
      } else if (st.infinitely_distant()) {
        r.message = "infinitely distant edge";
      } else {
        r.rule = "ii";
        if (!st.compatible_normal) {
          r.violated = true;
          r.message = "finite edge without a compatible normal";
        } else if (!st.compatible_normal->in_lattice) {
          r.violated = true;
          r.message = "compatible normal " + normal_text(*st.compatible_normal) + " is not in the lattice";
        } else {
          r.message = "compatible normal " + normal_text(*st.compatible_normal) + " in the lattice";
        }
      }
    }
    status[i] = r.status;
    v.reports.push_back(std::move(r));
  }

  for (size_t i = 0; i < parts.size(); ++i) {
    const auto& b = parts[i];
    if (b.kind != Kind::Corner) continue;
    std::vector<DistanceStatus> adj;
    for (int a : b.adjacent)
      if (status[a]) adj.push_back(*status[a]);
    CornerStatus cs = corner_status(s, g, b, adj);
    RuleReport r;
    r.component = b;
    r.status = cs.status;
    r.admissible = cs.admissible;
    r.message = cs.reason;
    if (!cs.admissible) {
      r.rule = "iv";
      r.violated = true;
    }
    if ((b.on_positive_fold || b.on_negative_fold) && !cs.status.infinitely_distant()) folds_infinite = false;
    v.reports.push_back(std::move(r));
  }

  v.completable = std::none_of(v.reports.begin(), v.reports.end(), [](const RuleReport& r) { return r.violated; });
  v.extends_ambitoric = v.completable && folds_infinite;
  return v;
}

std::vector<Verdict> classify_spec(const AnsatzSpec& s, int grid) {
  std::vector<Verdict> out;
  for (const auto& c : validate(s, grid)) out.push_back(completability_verdict(s, s.metric, c));
  return out;
}

OrbifoldCheck complete_orbifold_check(const Quadratic& q, const Arc& X, const Arc& Y, const Mat2Q& lattice,
                                      const Poly& A, const Poly& B, std::optional<Frame> frame) {
  OrbifoldCheck out;
  AnsatzSpec s;
  s.q = q;
  if (!frame) frame = default_frame(q);
  if (!frame) {
    out.accept = false;
    out.diagnostics.push_back("no frame for q = " + q.str());
    return out;
  }
  s.frame = *frame;
  s.A = A;
  s.B = B;
  s.x_interval = X;
  s.y_interval = Y;
  s.lattice = lattice;
  if (diagonal_meets(s) || q_curve_meets(s)) {
    out.accept = false;
    out.diagnostics.push_back("(x-y) q(x,y) vanishes on the open box");
    return out;
  }
  const MetricChoice g0 = MetricChoice::g0();
  // convergent[axis][hi]
  bool convergent[2][2] = {{false, false}, {false, false}};
  for (int ax = 0; ax < 2; ++ax)
    for (int hi = 0; hi < 2; ++hi) {
      const Arc& I = ax == 0 ? X : Y;
      BoundaryComponent e;
      e.axis = ax == 0 ? Axis::X : Axis::Y;
      e.gamma = hi ? I.hi : I.lo;
      std::string name = (ax == 0 ? "x=" : "y=") + e.gamma.str();
      DistanceStatus st;
      try {
        st = edge_status(s, g0, e);
      } catch (const std::invalid_argument& err) {
        out.accept = false;
        out.diagnostics.push_back(err.what());
        continue;
      }
      if (st.infinitely_distant()) {
        out.diagnostics.push_back(name + ": integral diverges, no condition");
        continue;
      }
      convergent[ax][hi] = true;
      if (!st.compatible_normal) {
        // A(gamma) > 0 on a parabolic fold-edge
        out.diagnostics.push_back(name + ": convergent fold-edge, no lattice condition");
        continue;
      }
      const auto& n = *st.compatible_normal;
      if (n.in_lattice) {
        out.diagnostics.push_back(name + ": normal " + normal_text(n) + " in the lattice");
      } else {
        out.accept = false;
        out.diagnostics.push_back(name + ": normal " + normal_text(n) + " not in the lattice");
      }
    }
  BoxComponent box;
  box.x_range = X;
  box.y_range = Y;
  box.box_type = true;
  auto parts = decompose_boundary(s, box);
  for (int hx = 0; hx < 2; ++hx)
    for (int hy = 0; hy < 2; ++hy) {
      if (!convergent[0][hx] || !convergent[1][hy]) continue;
      BoundaryComponent k;
      k.kind = Kind::Corner;
      k.cx = hx ? X.hi : X.lo;
      k.cy = hy ? Y.hi : Y.lo;
      // exact corner flags from the decomposition
      for (const auto& b : parts)
        if (b.kind == Kind::Corner && b.cx == k.cx && b.cy == k.cy) k = b;
      std::string name = "corner (" + k.cx.str() + ", " + k.cy.str() + ")";
      if (k.on_positive_fold || k.on_negative_fold) {
        out.accept = false;
        out.diagnostics.push_back(name + ": (x-y) q(x,y) = 0 with both integrals convergent");
      }
    }
  return out;
}

OrbifoldCheck complete_orbifold_check(const AnsatzSpec& s) {
  return complete_orbifold_check(s.q, s.x_interval, s.y_interval, s.lattice, s.A, s.B, s.frame);
}

}  // namespace ambitoric
