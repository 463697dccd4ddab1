#pragma once

#include <span>

#include "cbiem/contour.hpp"

namespace cbiem {

/// Discretised Cauchy formula W(z) ~ (1 / 2 pi i) sum W_j w_j / (zeta_j - z),
/// divided by the contour's winding so either traversal direction works.
/// Loses accuracy as z approaches the boundary.
cplx evaluate_naive(std::span<const cplx> w_nodes, const Discretization& disc,
                    cplx z);

/// Singularity-subtracted form
///   W(z) = [sum W_j w_j / (zeta_j - z)] / [sum w_j / (zeta_j - z)].
/// Throws LocationDegenerate when the denominator is below 1e-13 in
/// magnitude, which is what an exterior point produces.
cplx evaluate_subtracted(std::span<const cplx> w_nodes,
                         const Discretization& disc, cplx z);

}  // namespace cbiem
