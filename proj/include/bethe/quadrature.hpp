// Shared quadrature helpers: offset periodic trapezoid means on the circle
// with node doubling, and Gauss-Legendre rules for finite intervals.

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace bethe {

struct QuadOptions {
  int initial_nodes = 1024;
  int max_nodes = 1 << 16;
  double rel_tol = 1e-9;
};

struct QuadResult {
  double value = 0.0;
  int nodes = 0;
  bool converged = false;
};

// mean over [0, 2pi) of f(theta) on the offset grid theta_j = (j+1/2) 2pi/M,
// doubling M until the relative change drops below rel_tol
QuadResult circle_mean(const std::function<double(double)>& f, QuadOptions opt);

// nodes and weights on [-1, 1]
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}  // namespace bethe
