#include "bethe/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace bethe {

namespace {
double mean_on_grid(const std::function<double(double)>& f, int m) {
  // Kahan accumulation in fixed index order keeps reruns bit-identical
  double sum = 0.0, carry = 0.0;
  for (int j = 0; j < m; ++j) {
    double theta = (j + 0.5) * 2.0 * M_PI / m;
    double term = f(theta) - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum / m;
}
}  // namespace

QuadResult circle_mean(const std::function<double(double)>& f, QuadOptions opt) {
  if (opt.initial_nodes < 2 || opt.max_nodes < opt.initial_nodes)
    throw std::invalid_argument("bad node bounds");
  QuadResult out;
  int m = opt.initial_nodes;
  double prev = mean_on_grid(f, m);
  while (m * 2 <= opt.max_nodes) {
    m *= 2;
    double cur = mean_on_grid(f, m);
    double scale = std::max(1.0, std::abs(cur));
    if (std::abs(cur - prev) <= opt.rel_tol * scale) {
      out.value = cur;
      out.nodes = m;
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  out.value = prev;
  out.nodes = m;
  out.converged = false;  // suspected boundary singularity
  return out;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("node count must be positive");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-angle initial guess
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

}  // namespace bethe
