#include "cbiem/interior.hpp"

#include <cmath>
#include <string>

#include "cbiem/error.hpp"

namespace cbiem {
namespace {

constexpr double kDenominatorFloor = 1e-13;

void check_lengths(std::span<const cplx> w_nodes, const Discretization& disc) {
  require(static_cast<int>(w_nodes.size()) == disc.size(),
          "boundary values do not match the discretization");
}

}  // namespace

cplx evaluate_naive(std::span<const cplx> w_nodes, const Discretization& disc, cplx z) {
  check_lengths(w_nodes, disc);
  cplx sum = 0.0;
  for (int j = 0; j < disc.size(); ++j) {
    sum += w_nodes[j] * disc.weights[j] / (disc.nodes[j] - z);
  }
  return sum / (cplx(0.0, 2.0 * M_PI) * static_cast<double>(disc.winding));
}

cplx evaluate_subtracted(std::span<const cplx> w_nodes, const Discretization& disc,
                         cplx z) {
  check_lengths(w_nodes, disc);
  cplx num = 0.0;
  cplx den = 0.0;
  for (int j = 0; j < disc.size(); ++j) {
    const cplx k = disc.weights[j] / (disc.nodes[j] - z);
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) {
      fail(ErrorKind::LocationDegenerate, "evaluation point lies on a boundary node");
    }
    num += w_nodes[j] * k;
    den += k;
  }
  if (std::abs(den) < kDenominatorFloor) {
    fail(ErrorKind::LocationDegenerate,
         "Cauchy kernel sum vanishes at the evaluation point (exterior point?)");
  }
  return num / den;
}

}  // namespace cbiem
