#include "cbiem/mesh.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cbiem/error.hpp"
#include "cbiem/quadrature.hpp"

namespace cbiem {

double CompositeRule::weight_sum() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

Mesh uniform_mesh(int m) { return algebraic_mesh(m, 1.0); }

Mesh algebraic_mesh(int m, double gamma) {
  require(m >= 1, "mesh needs at least one interval");
  require(gamma >= 1.0, "algebraic grading needs gamma >= 1");
  Mesh mesh;
  mesh.points.resize(m + 1);
  for (int j = 0; j <= m; ++j) {
    mesh.points[j] = std::pow(static_cast<double>(j) / m, gamma);
  }
  mesh.points.back() = 1.0;
  return mesh;
}

Mesh geometric_mesh(int m, double sigma) {
  require(m >= 1, "mesh needs at least one interval");
  require(sigma > 0.0 && sigma < 1.0, "geometric grading needs 0 < sigma < 1");
  Mesh mesh;
  mesh.points.resize(m + 1);
  mesh.points[0] = 0.0;
  for (int j = 1; j <= m; ++j) mesh.points[j] = std::pow(sigma, m - j);
  return mesh;
}

Mesh symmetric_segment_mesh(int depth, double sigma) {
  require(depth >= 1, "segment grading needs depth >= 1");
  require(sigma > 0.0 && sigma < 0.5, "segment grading needs 0 < sigma < 1/2");
  Mesh mesh;
  mesh.points.push_back(0.0);
  for (int k = depth; k >= 1; --k) mesh.points.push_back(std::pow(sigma, k));
  for (int k = 1; k <= depth; ++k) mesh.points.push_back(1.0 - std::pow(sigma, k));
  mesh.points.push_back(1.0);
  return mesh;
}

Mesh make_mesh(const GradingSpec& spec, int m) {
  switch (spec.kind) {
    case GradingKind::Uniform: return uniform_mesh(m);
    case GradingKind::Algebraic: return algebraic_mesh(m, spec.gamma);
    case GradingKind::Geometric: return geometric_mesh(m, spec.sigma);
    case GradingKind::SymmetricGeometric:
      return symmetric_segment_mesh(spec.depth, spec.sigma);
  }
  fail(ErrorKind::InvalidArgument, "unknown grading kind");
}

std::vector<int> segment_point_counts(int depth) {
  require(depth >= 1, "segment grading needs depth >= 1");
  std::vector<int> counts;
  for (int n = 2; n <= depth + 2; ++n) counts.push_back(n);
  for (int n = depth + 1; n >= 2; --n) counts.push_back(n);
  return counts;
}

std::vector<int> linear_point_counts(int m) {
  require(m >= 1, "need at least one interval");
  std::vector<int> counts(m);
  std::iota(counts.begin(), counts.end(), 2);
  return counts;
}

namespace {

// Drops the node at t = 0 and adds its weight to the last node.
void wrap(CompositeRule& rule) {
  require(rule.size() >= 3, "closed rule needs at least three nodes");
  const double below = rule.weights.back();
  const double above = rule.weights.front();
  rule.params.erase(rule.params.begin());
  rule.weights.erase(rule.weights.begin());
  rule.origin.erase(rule.origin.begin());
  for (auto& j : rule.joins) --j.node;
  const int last = rule.size() - 1;
  rule.weights[last] = below + above;
  rule.joins.push_back({last, below, above});
  rule.closed = true;
}

}  // namespace

CompositeRule compose_hp_rule(const Mesh& mesh, std::span<const int> counts,
                              bool wrap_closed) {
  const int m = mesh.intervals();
  require(m >= 1, "mesh needs at least one interval");
  require(static_cast<int>(counts.size()) == m,
          "need one point count per interval (" + std::to_string(m) + "), got " +
              std::to_string(counts.size()));
  CompositeRule rule;
  rule.params.push_back(mesh.points[0]);
  rule.weights.push_back(0.0);
  rule.origin.push_back({0, 0, 0});
  for (int j = 0; j < m; ++j) {
    require(counts[j] >= 2, "each interval needs at least two points");
    require(mesh.points[j] < mesh.points[j + 1], "mesh points must increase");
    const QuadratureRule q = gauss_lobatto(counts[j], mesh.points[j], mesh.points[j + 1]);
    const NodeOrigin origin{0, j, std::min(j, m - 1 - j)};
    // The left end node is shared with the previous interval.
    rule.weights.back() += q.weights[0];
    for (int i = 1; i < q.n; ++i) {
      rule.params.push_back(q.nodes[i]);
      rule.weights.push_back(q.weights[i]);
      rule.origin.push_back(origin);
    }
  }
  if (wrap_closed) wrap(rule);
  return rule;
}

CompositeRule replicate_over_segments(std::span<const double> corners,
                                      const CompositeRule& segment_rule,
                                      bool wrap_closed) {
  require(corners.size() >= 2, "need at least one segment");
  require(!segment_rule.closed, "segment rule must be open");
  require(segment_rule.size() >= 2 && segment_rule.params.front() == 0.0 &&
              segment_rule.params.back() == 1.0,
          "segment rule must span [0, 1] with both end nodes");
  const int segments = static_cast<int>(corners.size()) - 1;
  const int s = segment_rule.size();

  CompositeRule rule;
  rule.segments = segments;
  rule.params.push_back(corners[0]);
  rule.weights.push_back(0.0);
  rule.origin.push_back(segment_rule.origin[0]);
  for (int k = 0; k < segments; ++k) {
    const double lo = corners[k];
    const double hi = corners[k + 1];
    require(lo < hi, "segment corners must increase");
    const double scale = hi - lo;
    const double first = segment_rule.weights[0] * scale;
    if (k > 0) {
      rule.joins.push_back({rule.size() - 1, rule.weights.back(), first});
    }
    rule.weights.back() += first;
    for (int i = 1; i < s; ++i) {
      rule.params.push_back(i == s - 1 ? hi : lo + segment_rule.params[i] * scale);
      rule.weights.push_back(segment_rule.weights[i] * scale);
      NodeOrigin o = segment_rule.origin[i];
      o.segment = k;
      rule.origin.push_back(o);
    }
  }
  if (wrap_closed) wrap(rule);
  return rule;
}

CompositeRule contour_rule(int depth, double sigma, int segments) {
  require(segments >= 1, "need at least one segment");
  const Mesh mesh = symmetric_segment_mesh(depth, sigma);
  const std::vector<int> counts = segment_point_counts(depth);
  const CompositeRule seg = compose_hp_rule(mesh, counts, false);
  std::vector<double> corners(segments + 1);
  for (int k = 0; k <= segments; ++k) corners[k] = static_cast<double>(k) / segments;
  return replicate_over_segments(corners, seg, true);
}

}  // namespace cbiem
