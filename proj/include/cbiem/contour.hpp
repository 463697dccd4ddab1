#pragma once

#include <complex>
#include <vector>

#include "cbiem/mesh.hpp"

namespace cbiem {

using cplx = std::complex<double>;

enum class ContourKind { UnitCircle, Teardrop, Cardioid, WideTeardrop };

/// Sign convention of the teardrop family. `Stated` is
/// 2 sin(pi t) + i sin(2 pi t); `Reference` is its conjugate, the form the
/// published tables were computed with. Other contours ignore it.
enum class Orientation { Stated, Reference };

enum class Side { Below, Above, Mean };

struct CornerTangents {
  cplx below;  // limit t -> c from below (t -> 1 for the corner at 0)
  cplx above;  // limit t -> c from above
};

struct ContourOptions {
  Orientation orientation = Orientation::Stated;
  /// Artificial corners placed on the unit circle (evenly in t).
  int circle_corners = 4;
  /// Interior corner angle of the wide teardrop, in degrees.
  double wide_angle_deg = 20.0;
};

/// Closed parameterised contour gamma : [0, 1] -> C with gamma(0) = gamma(1)
/// and finitely many corners. Immutable.
class Contour {
 public:
  ContourKind kind() const { return kind_; }
  Orientation orientation() const { return orientation_; }

  cplx point(double t) const;
  /// gamma'(t) away from corners. At a corner parameter this returns the
  /// one-sided limit from above (from below at t = 1).
  cplx tangent(double t) const;
  cplx tangent_at_node(double t, Side side = Side::Mean) const;

  /// Corner parameters in [0, 1), ascending; always contains 0.
  const std::vector<double>& corner_params() const { return corners_; }
  int corner_count() const { return static_cast<int>(corners_.size()); }
  CornerTangents one_sided_tangents(int corner) const;
  /// Interior angle at a corner (pi for an artificial corner).
  double interior_angle(int corner) const { return angles_[corner]; }

  /// +1 for anticlockwise traversal, -1 for clockwise.
  int winding() const { return winding_; }

 private:
  friend Contour make_contour(ContourKind, const ContourOptions&);

  ContourKind kind_ = ContourKind::UnitCircle;
  Orientation orientation_ = Orientation::Stated;
  double conj_ = 1.0;        // -1 flips the imaginary part
  double wide_a_ = 2.0 / 3;  // wide teardrop coefficient
  std::vector<double> corners_;
  std::vector<double> angles_;
  int winding_ = 1;
};

Contour make_contour(ContourKind kind, const ContourOptions& options = {});

/// Node and collocation data of a contour under a closed composite rule.
struct Discretization {
  std::vector<double> t_nodes;
  /// Half the parameter gap below each node: t_coll[k] = t_nodes[k] - half_gap[k]
  /// with t_{-1} taken as 0.
  std::vector<double> half_gap;
  std::vector<double> t_coll;
  std::vector<cplx> nodes;
  std::vector<cplx> coll;
  std::vector<double> raw_weights;
  /// w_j * gamma'(t_j); corner nodes absorb each side's tangent separately.
  std::vector<cplx> weights;
  std::vector<NodeOrigin> origin;
  int segments = 1;
  int winding = 1;

  int size() const { return static_cast<int>(t_nodes.size()); }
};

Discretization discretize(const Contour& contour, const CompositeRule& rule);

/// sin(pi x), cos(pi x) with exact argument reduction, so values near
/// integer x keep full relative accuracy.
double sin_pi(double x);
double cos_pi(double x);

}  // namespace cbiem
