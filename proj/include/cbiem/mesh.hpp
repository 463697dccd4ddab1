#pragma once

#include <span>
#include <vector>

namespace cbiem {

/// Breakpoints 0 = x_0 < x_1 < ... < x_m = 1.
struct Mesh {
  std::vector<double> points;

  int intervals() const { return static_cast<int>(points.size()) - 1; }
  double width(int j) const { return points[j + 1] - points[j]; }
};

enum class GradingKind { Uniform, Algebraic, Geometric, SymmetricGeometric };

struct GradingSpec {
  GradingKind kind = GradingKind::Uniform;
  double gamma = 1.0;  // Algebraic
  double sigma = 0.5;  // Geometric, SymmetricGeometric
  int depth = 1;       // SymmetricGeometric: D

  static GradingSpec uniform() { return {}; }
  static GradingSpec algebraic(double gamma) {
    return {GradingKind::Algebraic, gamma, 0.5, 1};
  }
  static GradingSpec geometric(double sigma) {
    return {GradingKind::Geometric, 1.0, sigma, 1};
  }
  static GradingSpec symmetric(int depth, double sigma) {
    return {GradingKind::SymmetricGeometric, 1.0, sigma, depth};
  }
};

Mesh uniform_mesh(int m);
/// x_j = (j/m)^gamma, gamma >= 1.
Mesh algebraic_mesh(int m, double gamma);
/// x_0 = 0, x_j = sigma^(m-j).
Mesh geometric_mesh(int m, double sigma);
/// {0, s^D, ..., s, 1-s, ..., 1-s^D, 1}: 2D+1 intervals refined towards
/// both ends. Requires 0 < sigma < 1/2.
Mesh symmetric_segment_mesh(int depth, double sigma);

/// Mesh for a grading; `m` is ignored for SymmetricGeometric.
Mesh make_mesh(const GradingSpec& spec, int m);

/// Point counts {2, 3, ..., D+2, D+1, ..., 2} for a symmetric segment.
std::vector<int> segment_point_counts(int depth);
/// Point counts {2, 3, ..., m+1}: one more point per interval away from 0.
std::vector<int> linear_point_counts(int m);

/// Where a composite node came from: the segment it belongs to, the mesh
/// interval of that segment, and that interval's distance (in intervals)
/// from the nearest segment end.
struct NodeOrigin {
  int segment = 0;
  int interval = 0;
  int from_corner = 0;
};

/// A node produced by merging the end of one segment with the start of the
/// next (or, when wrapped, the last node with t = 0). The raw weights from
/// either side are kept so tangents can be absorbed per side.
struct SegmentJoin {
  int node = 0;
  double weight_below = 0.0;
  double weight_above = 0.0;
};

struct CompositeRule {
  std::vector<double> params;
  std::vector<double> weights;
  std::vector<NodeOrigin> origin;
  std::vector<SegmentJoin> joins;
  bool closed = false;
  int segments = 1;

  int size() const { return static_cast<int>(params.size()); }
  double weight_sum() const;
};

/// Composite rule from n_j-point Gauss-Lobatto rules on each mesh interval.
/// Shared interval endpoints are merged by index, never by comparing
/// coordinates. With `wrap_closed` the node at t = 0 is folded into t = 1.
CompositeRule compose_hp_rule(const Mesh& mesh, std::span<const int> counts,
                              bool wrap_closed);

/// Copies an open rule on [0, 1] into each [c_{k-1}, c_k], merging the
/// shared corner nodes; optionally wraps t = 0 into t = 1.
CompositeRule replicate_over_segments(std::span<const double> corners,
                                      const CompositeRule& segment_rule,
                                      bool wrap_closed);

/// Closed rule used by the boundary solver: symmetric segment grading with
/// segment_point_counts(depth), replicated over `segments` equal segments.
CompositeRule contour_rule(int depth, double sigma, int segments);

}  // namespace cbiem
