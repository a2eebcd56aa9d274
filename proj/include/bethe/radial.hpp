// Radial structures: the shell-averaging isometry W, the binary shift S1,
// reduction of radial potentials to half-line Jacobi matrices, the shell-tiled
// difference vector dH, and the B(H0) quadratic-form identities.

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bethe/conformal.hpp"
#include "bethe/potential.hpp"

namespace bethe {

// <e_0, (J - w)^{-1} e_0> for the free half-line Jacobi matrix (diagonal 0,
// off-diagonal 1): the root of m^2 + w m + 1 = 0 with |m| < 1
Complex m_jacobi_free(Complex w);

// same resolvent entry when finitely many diagonal entries are set; continued
// fraction downward from the free tail
Complex m_jacobi(std::span<const double> diag, Complex w);

struct JacobiReduction {
  std::vector<double> diag;  // v_n / sqrt2
  double max_residual = 0.0;
};

// checks m_{tree}(z) = (1/sqrt2) m_J(z/sqrt2) at the given off-band points
JacobiReduction jacobi_reduce(std::span<const double> profile,
                              std::span<const Complex> test_z);

struct ShiftStructures {
  int depth = 0;
  Eigen::MatrixXd w;   // ball x (D+1); constant on shells, norm 1 per column
  Eigen::MatrixXd s1;  // parent lift on the ball
  Eigen::MatrixXd s;   // half-line shift on D+1 coordinates
  double h0_residual = 0.0;        // max |(S1 + S1^t) - adjacency|
  double intertwine_left = 0.0;    // max |S1 W - sqrt2 W S|
  double intertwine_right = 0.0;   // max |W^t S1 - sqrt2 S W^t|, interior cols
  double isometry_residual = 0.0;  // max |W^t W - I|
};
ShiftStructures shift_structures(int D);

// depth-2n vertices carry 2^-n times the value at their depth-n ancestor,
// odd shells vanish; requires D >= 2 * support_depth
std::vector<double> dh_vector(const Potential& V, int D);

struct ConjectureReport {
  double qform = 0.0;  // (B(H0) dH, dH) for the requested polynomial
  double a1_value = 0.0;
  double a1_target = 0.0;  // sum_n 2^-n sum_{|x|=n} V(x)^2
  double check_a1 = 0.0;
  double ax2m4_value = 0.0;
  double ax2m4_target = 0.0;  // -sum_n 2^-(n+1) sum_{|x|=n} (delta V)(x)^2
  double check_ax2m4 = 0.0;
};

// B(H0) = sum_k (a_k / 2^{k/2}) H0 W (W* H0 W)^{k-2} W* H0 for even k,
// a_0 I for k = 0; only even-degree coefficients are supported
ConjectureReport conjecture_form(std::span<const double> a, const Potential& V,
                                 int D);

}  // namespace bethe
