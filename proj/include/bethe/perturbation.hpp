// Perturbation determinants L_{T_x}(zeta) = det(I + V G0) over finite
// supports, frontier products, and the calibrated Jost-ratio check.

#pragma once

#include "bethe/potential.hpp"
#include "bethe/resolvent.hpp"

namespace bethe {

// determinant for the operator pair on the subtree rooted at x
Complex det_L(const Potential& V, Vertex x, Complex zeta);

// product of det_L over the off-path frontier of y
Complex det_L_frontier(const Potential& V, Vertex y, Complex zeta);

// normalization measured at V = 0: f_y / (zeta/sqrt2)^n for |y| = n.
// Cached per (n, zeta); never written in closed form on purpose.
Complex kappa_free(int n, Complex zeta);

struct MainLemmaCheck {
  Complex kappa;    // f_y / [(zeta/sqrt2)^n det ratio]
  double residual;  // |f_y - kappa_free * ratio| / max(|f_y|, eps)
  bool degenerate;  // ratio too small to divide by
};

MainLemmaCheck main_lemma_check(const Potential& V, Vertex y, Complex zeta);

}  // namespace bethe
