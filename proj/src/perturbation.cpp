#include "bethe/perturbation.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace bethe {

Complex det_L(const Potential& V, Vertex x, Complex zeta) {
  Potential vx = V.subtree_view(x);
  if (vx.empty()) return 1.0;
  std::vector<Vertex> supp;
  std::vector<double> vals;
  for (const auto& [id, val] : vx.entries()) {
    supp.push_back(vertex_of(id));
    vals.push_back(val);
  }
  auto n = static_cast<Eigen::Index>(supp.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) += vals[i] * free_green_entry(supp[i], supp[j], zeta);
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

Complex det_L_frontier(const Potential& V, Vertex y, Complex zeta) {
  Complex prod = 1.0;
  for (Vertex x : frontier(y)) prod *= det_L(V, x, zeta);
  return prod;
}

Complex kappa_free(int n, Complex zeta) {
  static std::map<std::tuple<int, double, double>, Complex> cache;
  static std::mutex mu;
  std::tuple<int, double, double> key{n, zeta.real(), zeta.imag()};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Eigen::VectorXcd f = jost_vector(Potential{}, zeta, n);
  Complex ratio = f(static_cast<Eigen::Index>(linear_id(Vertex{n, 1})));
  Complex step = zeta / kSqrt2;
  for (int k = 0; k < n; ++k) ratio /= step;
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = ratio;
  return ratio;
}

MainLemmaCheck main_lemma_check(const Potential& V, Vertex y, Complex zeta) {
  int d = std::max(V.support_depth(), y.depth);
  Eigen::VectorXcd f = jost_vector(V, zeta, d);
  Complex fy = f(static_cast<Eigen::Index>(linear_id(y)));
  Complex ratio = det_L_frontier(V, y, zeta) / det_L(V, root_vertex(), zeta);
  Complex step = zeta / kSqrt2;
  for (int k = 0; k < y.depth; ++k) ratio *= step;
  MainLemmaCheck out;
  out.degenerate = std::abs(ratio) < 1e-280;
  out.kappa = out.degenerate ? Complex(0.0, 0.0) : fy / ratio;
  double scale = std::max(std::abs(fy), 1e-300);
  out.residual = std::abs(fy - kappa_free(y.depth, zeta) * ratio) / scale;
  return out;
}

}  // namespace bethe
