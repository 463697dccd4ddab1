#include "cbiem/contour.hpp"

#include <cmath>
#include <string>

#include "cbiem/error.hpp"

namespace cbiem {
namespace {

constexpr double kPi = M_PI;
constexpr int kAreaSamples = 4096;

cplx expi2pi(double t) { return {cos_pi(2.0 * t), sin_pi(2.0 * t)}; }

// Index of the corner at parameter t (t = 1 is the corner at 0), or -1.
int corner_at(const std::vector<double>& corners, double t) {
  const double tt = (t == 1.0) ? 0.0 : t;
  for (std::size_t k = 0; k < corners.size(); ++k) {
    if (corners[k] == tt) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace

double sin_pi(double x) {
  const double r = std::remainder(x, 2.0);  // r in [-1, 1]
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0 * r;
  if (r > 0.5) return std::sin(kPi * (1.0 - r));
  if (r < -0.5) return -std::sin(kPi * (1.0 + r));
  return std::sin(kPi * r);
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

cplx Contour::point(double t) const {
  switch (kind_) {
    case ContourKind::UnitCircle:
      return expi2pi(t);
    case ContourKind::Teardrop:
      return {2.0 * sin_pi(t), conj_ * sin_pi(2.0 * t)};
    case ContourKind::Cardioid: {
      const double s = sin_pi(t);
      return -2.0 * s * s * expi2pi(t);
    }
    case ContourKind::WideTeardrop:
      return {-wide_a_ * sin_pi(3.0 * t), -sin_pi(2.0 * t)};
  }
  return {};
}

cplx Contour::tangent(double t) const {
  switch (kind_) {
    case ContourKind::UnitCircle:
      return cplx(0.0, 2.0 * kPi) * expi2pi(t);
    case ContourKind::Teardrop:
      return {2.0 * kPi * cos_pi(t), conj_ * 2.0 * kPi * cos_pi(2.0 * t)};
    case ContourKind::Cardioid: {
      const double s = sin_pi(t);
      return (-2.0 * kPi * sin_pi(2.0 * t) - cplx(0.0, 4.0 * kPi * s * s)) *
             expi2pi(t);
    }
    case ContourKind::WideTeardrop:
      return {-3.0 * kPi * wide_a_ * cos_pi(3.0 * t), -2.0 * kPi * cos_pi(2.0 * t)};
  }
  return {};
}

CornerTangents Contour::one_sided_tangents(int corner) const {
  require(corner >= 0 && corner < corner_count(), "corner index out of range");
  const double c = corners_[corner];
  // Every contour here is smooth on each open segment, so the one-sided
  // limits are the formula evaluated at the two ends.
  return {tangent(c == 0.0 ? 1.0 : c), tangent(c)};
}

cplx Contour::tangent_at_node(double t, Side side) const {
  const int k = corner_at(corners_, t);
  if (k < 0) return tangent(t);
  const CornerTangents ct = one_sided_tangents(k);
  switch (side) {
    case Side::Below: return ct.below;
    case Side::Above: return ct.above;
    case Side::Mean: return 0.5 * (ct.below + ct.above);
  }
  return {};
}

Contour make_contour(ContourKind kind, const ContourOptions& options) {
  Contour c;
  c.kind_ = kind;
  c.orientation_ = options.orientation;
  switch (kind) {
    case ContourKind::UnitCircle: {
      require(options.circle_corners >= 1, "unit circle needs at least one corner");
      for (int k = 0; k < options.circle_corners; ++k) {
        c.corners_.push_back(static_cast<double>(k) / options.circle_corners);
        c.angles_.push_back(kPi);
      }
      break;
    }
    case ContourKind::Teardrop:
      c.conj_ = options.orientation == Orientation::Reference ? -1.0 : 1.0;
      c.corners_ = {0.0};
      c.angles_ = {kPi / 2};
      break;
    case ContourKind::Cardioid:
      c.corners_ = {0.0};
      c.angles_ = {2.0 * kPi};
      break;
    case ContourKind::WideTeardrop: {
      const double deg = options.wide_angle_deg;
      require(deg > 0.0 && deg < 180.0, "wide teardrop angle must lie in (0, 180) degrees");
      c.wide_a_ = 2.0 / (3.0 * std::tan(deg * kPi / 360.0));
      c.corners_ = {0.0};
      c.angles_ = {deg * kPi / 180.0};
      break;
    }
  }
  // Winding from the sign of the enclosed area.
  double area = 0.0;
  cplx prev = c.point(0.0);
  for (int k = 1; k <= kAreaSamples; ++k) {
    const cplx cur = c.point(static_cast<double>(k) / kAreaSamples);
    area += prev.real() * cur.imag() - cur.real() * prev.imag();
    prev = cur;
  }
  if (!(std::abs(area) > 1e-12)) {
    fail(ErrorKind::GeometryDegenerate, "contour encloses no area");
  }
  c.winding_ = area > 0.0 ? 1 : -1;
  return c;
}

Discretization discretize(const Contour& contour, const CompositeRule& rule) {
  require(rule.closed, "boundary discretization needs a closed rule");
  require(rule.segments == contour.corner_count(),
          "rule has " + std::to_string(rule.segments) + " segments but contour has " +
              std::to_string(contour.corner_count()) + " corners");
  const int n = rule.size();
  Discretization d;
  d.segments = rule.segments;
  d.winding = contour.winding();
  d.t_nodes = rule.params;
  d.raw_weights = rule.weights;
  d.origin = rule.origin;
  d.half_gap.resize(n);
  d.t_coll.resize(n);
  d.nodes.resize(n);
  d.coll.resize(n);
  d.weights.resize(n);
  double prev = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = d.t_nodes[k];
    d.half_gap[k] = 0.5 * (t - prev);
    d.t_coll[k] = t - d.half_gap[k];
    d.nodes[k] = contour.point(t);
    d.coll[k] = contour.point(d.t_coll[k]);
    d.weights[k] = d.raw_weights[k] * contour.tangent(t);
    prev = t;
  }
  for (const SegmentJoin& j : rule.joins) {
    const int corner = corner_at(contour.corner_params(), d.t_nodes[j.node]);
    if (corner < 0) {
      fail(ErrorKind::GeometryDegenerate, "segment join does not sit on a contour corner");
    }
    const CornerTangents ct = contour.one_sided_tangents(corner);
    d.weights[j.node] = j.weight_below * ct.below + j.weight_above * ct.above;
  }
  for (int k = 0; k < n; ++k) {
    if (k > 0 && d.nodes[k] == d.nodes[k - 1]) {
      fail(ErrorKind::GeometryDegenerate,
           "coincident boundary nodes at index " + std::to_string(k));
    }
  }
  return d;
}

}  // namespace cbiem
