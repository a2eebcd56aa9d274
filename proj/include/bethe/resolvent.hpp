// Exact resolvents of H_V on the infinite tree, computed on a finite ball
// with the closed-form boundary self-energy. Entries are exact (not
// truncation approximations) once the ball contains the potential support.

#pragma once

#include <Eigen/Dense>

#include "bethe/conformal.hpp"
#include "bethe/potential.hpp"
#include "bethe/tree.hpp"

namespace bethe {

// m-function of the forward half tree seen from an edge: -zeta/sqrt2
Complex forward_m(Complex zeta);

// adjacency matrix of the depth-D ball in linear-id order
Eigen::MatrixXd ball_adjacency(int D);

// (H_ball + V - z(zeta) - Lambda(zeta))^{-1}, Lambda = -sqrt2 zeta on the
// depth-D diagonal (two eliminated child subtrees per boundary vertex).
// Valid for |zeta| <= 1, zeta not in {0, +1, -1}.
Eigen::MatrixXcd green_ball(const Potential& V, int D, Complex zeta);

struct MValue {
  Complex M;          // -G(0,0)
  double im_density;  // Im M; the transferred a.c. density when |zeta| = 1
};
MValue m_function(const Potential& V, Complex zeta);

// column f_y = G(0, y) over the depth-D ball
Eigen::VectorXcd jost_vector(const Potential& V, Complex zeta, int D);

// closed-form free Green entry via the meet vertex and the diagonal
// recursion; dual route to green_ball(V = 0)
Complex free_green_entry(Vertex x, Vertex y, Complex zeta);

}  // namespace bethe
