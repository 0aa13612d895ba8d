#pragma once

#include "ambitoric/boundary.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ambitoric {

struct RuleReport {
  BoundaryComponent component;
  std::optional<DistanceStatus> status;
  bool admissible = true;  // corners
  std::string rule;        // "i", "ii", "iii", "iv", "boundary" or "" when nothing fired
  bool violated = false;
  std::string message;
};

struct Verdict {
  MetricChoice metric;
  int component = 0;
  bool completable = true;
  bool extends_ambitoric = false;
  std::vector<RuleReport> reports;
  std::vector<std::string> violated_rules() const;  // in report order, without repeats
};

// Total: every rule is evaluated and every violation recorded.
Verdict completability_verdict(const AnsatzSpec& s, const MetricChoice& g, const BoxComponent& c);
// every component of validate(s), under s.metric
std::vector<Verdict> classify_spec(const AnsatzSpec& s, int grid = 0);

struct OrbifoldCheck {
  bool accept = true;
  std::vector<std::string> diagnostics;
};
// g0-complete regular orbifold test on the box X x Y. The frame defaults to the
// normal-form frame of q.
OrbifoldCheck complete_orbifold_check(const Quadratic& q, const Arc& X, const Arc& Y, const Mat2Q& lattice,
                                      const Poly& A, const Poly& B, std::optional<Frame> frame = std::nullopt);
OrbifoldCheck complete_orbifold_check(const AnsatzSpec& s);

}  // namespace ambitoric
