#include "bethe/radial.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "bethe/resolvent.hpp"

namespace bethe {

Complex m_jacobi_free(Complex w) {
  const Complex r = std::sqrt(w * w - 4.0);
  const Complex m1 = 0.5 * (-w + r);
  const Complex m2 = 0.5 * (-w - r);
  return std::abs(m1) < std::abs(m2) ? m1 : m2;
}

Complex m_jacobi(std::span<const double> diag, Complex w) {
  Complex g = m_jacobi_free(w);
  for (auto it = diag.rbegin(); it != diag.rend(); ++it)
    g = 1.0 / (*it - w - g);
  return g;
}

JacobiReduction jacobi_reduce(std::span<const double> profile,
                              std::span<const Complex> test_z) {
  JacobiReduction red;
  red.diag.reserve(profile.size());
  for (const double v : profile) red.diag.push_back(v / kSqrt2);

  const Potential V = Potential::radial(profile);
  for (const Complex z : test_z) {
    const Complex zeta = zeta_of_z(z);  // rejects points on the band
    const Complex m_tree = -m_function(V, zeta).M;
    const Complex m_line = m_jacobi(red.diag, z / kSqrt2) / kSqrt2;
    red.max_residual = std::max(red.max_residual, std::abs(m_tree - m_line));
  }
  return red;
}

ShiftStructures shift_structures(int D) {
  if (D < 2 || D > 9) throw std::invalid_argument("shift depth out of range");
  const Eigen::Index n = static_cast<Eigen::Index>(ball_size(D));
  const Eigen::Index cols = D + 1;

  ShiftStructures st;
  st.depth = D;
  st.s1 = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) st.s1(i, (i - 1) / 2) = 1.0;
  st.s = Eigen::MatrixXd::Zero(cols, cols);
  for (Eigen::Index k = 0; k + 1 < cols; ++k) st.s(k + 1, k) = 1.0;

  // shell values chained by exact 1/sqrt2 factors; this normalization makes
  // the left intertwining bit-exact (sqrt2 * w_{n+1} reproduces w_n)
  std::vector<double> shell_val(static_cast<std::size_t>(D) + 1, 1.0);
  for (int d = 1; d <= D; ++d)
    shell_val[static_cast<std::size_t>(d)] =
        shell_val[static_cast<std::size_t>(d) - 1] * (1.0 / kSqrt2);
  st.w = Eigen::MatrixXd::Zero(n, cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int d = vertex_of(static_cast<std::uint64_t>(i)).depth;
    st.w(i, d) = shell_val[static_cast<std::size_t>(d)];
  }

  const Eigen::MatrixXd h0 = ball_adjacency(D);
  st.h0_residual =
      (st.s1 + st.s1.transpose() - h0).cwiseAbs().maxCoeff();
  st.intertwine_left =
      (st.s1 * st.w - kSqrt2 * st.w * st.s).cwiseAbs().maxCoeff();

  // the adjoint relation sees missing children in the last shell; compare on
  // interior columns only
  const Eigen::MatrixXd right =
      (st.w.transpose() * st.s1 - kSqrt2 * st.s * st.w.transpose())
          .cwiseAbs();
  const Eigen::Index interior = static_cast<Eigen::Index>(ball_size(D - 1));
  st.intertwine_right = right.leftCols(interior).maxCoeff();

  st.isometry_residual =
      (st.w.transpose() * st.w - Eigen::MatrixXd::Identity(cols, cols))
          .cwiseAbs()
          .maxCoeff();
  return st;
}

std::vector<double> dh_vector(const Potential& V, int D) {
  const int s = std::max(V.support_depth(), 0);
  if (D < 2 * s) throw std::invalid_argument("dh ball too shallow");
  if (D > 20) throw std::invalid_argument("dh ball too deep");
  std::vector<double> dh(ball_size(D), 0.0);
  for (const auto& [id, val] : V.entries()) {
    const Vertex x = vertex_of(id);
    const double scale = std::ldexp(1.0, -x.depth);
    for (std::uint64_t j = 1; j <= shell_size(x.depth); ++j) {
      const Vertex local{x.depth, j};
      dh[linear_id(subtree_to_global(x, local))] = scale * val;
    }
  }
  return dh;
}

namespace {

// adjacency matvec on the heap-indexed ball
std::vector<double> apply_adj(const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    if (i > 0) acc += u[(i - 1) / 2];
    const std::size_t c = 2 * i + 1;
    if (c + 1 < n) acc += u[c] + u[c + 1];
    out[i] = acc;
  }
  return out;
}

}  // namespace

ConjectureReport conjecture_form(std::span<const double> a, const Potential& V,
                                 int D) {
  if (a.empty()) throw std::invalid_argument("empty polynomial");
  for (std::size_t k = 1; k < a.size(); k += 2)
    if (a[k] != 0.0)
      throw std::invalid_argument("odd-degree coefficients unsupported");
  const int deg = static_cast<int>(a.size()) - 1;
  const int s = std::max(V.support_depth(), 0);
  if (D < 2 * s + deg + 2)
    throw std::invalid_argument("conjecture ball too shallow");

  const std::vector<double> dh = dh_vector(V, D);
  const std::uint64_t n = ball_size(D);
  const int cols = D + 1;

  // shell projections of W without materializing it
  std::vector<double> shell_val(static_cast<std::size_t>(cols), 1.0);
  for (int d = 1; d <= D; ++d)
    shell_val[static_cast<std::size_t>(d)] =
        shell_val[static_cast<std::size_t>(d) - 1] * (1.0 / kSqrt2);

  const auto project = [&](const std::vector<double>& u) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(cols);
    for (std::uint64_t i = 0; i < n; ++i)
      out[vertex_of(i).depth] += u[i];
    for (int d = 0; d <= D; ++d)
      out[d] *= shell_val[static_cast<std::size_t>(d)];
    return out;
  };
  const auto lift = [&](const Eigen::VectorXd& coef) {
    std::vector<double> u(n, 0.0);
    for (std::uint64_t i = 0; i < n; ++i) {
      const int d = vertex_of(i).depth;
      u[i] = coef[d] * shell_val[static_cast<std::size_t>(d)];
    }
    return u;
  };

  double dh2 = 0.0;
  for (const double v : dh) dh2 += v * v;

  const Eigen::VectorXd u = project(apply_adj(dh));  // W^t H0 dH
  Eigen::MatrixXd c_mat(cols, cols);                 // W^t H0 W
  for (int k = 0; k < cols; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(cols);
    e[k] = 1.0;
    c_mat.col(k) = project(apply_adj(lift(e)));
  }

  const auto qform_of = [&](std::span<const double> poly) {
    double acc = poly[0] * dh2;
    for (std::size_t k = 2; k < poly.size(); k += 2) {
      if (poly[k] == 0.0) continue;
      Eigen::VectorXd v = u;
      for (std::size_t j = 0; j + 2 < k; ++j) v = c_mat * v;
      acc += poly[k] / std::ldexp(1.0, static_cast<int>(k) / 2) * u.dot(v);
    }
    return acc;
  };

  ConjectureReport rep;
  rep.qform = qform_of(a);

  const double one[] = {1.0};
  rep.a1_value = qform_of(one);
  for (const auto& [id, val] : V.entries())
    rep.a1_target += std::ldexp(1.0, -vertex_of(id).depth) * val * val;
  rep.check_a1 =
      std::abs(rep.a1_value - rep.a1_target) / (1.0 + std::abs(rep.a1_target));

  const double x2m4[] = {-4.0, 0.0, 1.0};
  rep.ax2m4_value = qform_of(x2m4);
  std::set<std::uint64_t> sites;
  for (const auto& [id, val] : V.entries()) {
    const Vertex x = vertex_of(id);
    if (x.depth >= 1) sites.insert(id);
    for (const Vertex& c : children(x)) sites.insert(linear_id(c));
  }
  for (const std::uint64_t id : sites) {
    const Vertex x = vertex_of(id);
    const double d = delta_parent(V, x);
    rep.ax2m4_target -= std::ldexp(1.0, -(x.depth + 1)) * d * d;
  }
  rep.check_ax2m4 = std::abs(rep.ax2m4_value - rep.ax2m4_target) /
                    (1.0 + std::abs(rep.ax2m4_target));
  return rep;
}

}  // namespace bethe
