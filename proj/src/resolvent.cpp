#include "bethe/resolvent.hpp"

#include <stdexcept>

namespace bethe {

Complex forward_m(Complex zeta) { return -zeta / kSqrt2; }

namespace {

void check_zeta(Complex zeta) {
  double r = std::abs(zeta);
  if (r == 0.0 || r > 1.0 + 1e-12)
    throw std::invalid_argument("zeta must satisfy 0 < |zeta| <= 1");
  if (std::abs(zeta - Complex(1.0, 0.0)) < 1e-14 ||
      std::abs(zeta + Complex(1.0, 0.0)) < 1e-14)
    throw std::invalid_argument("band edge zeta = +-1 excluded");
}

Eigen::MatrixXcd closed_system(const Potential& V, int D, Complex zeta) {
  check_zeta(zeta);
  if (D < 0 || D > 13) throw std::invalid_argument("ball depth out of range");
  if (V.support_depth() > D)
    throw std::invalid_argument("ball must contain the potential support");
  auto n = static_cast<Eigen::Index>(ball_size(D));
  Complex z = z_of_zeta(zeta);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index c = 2 * i + 1;
    if (c + 1 < n) {
      a(i, c) = a(c, i) = 1.0;
      a(i, c + 1) = a(c + 1, i) = 1.0;
    }
    a(i, i) = V.at(vertex_of(i)) - z;
  }
  // eliminate the exterior: each depth-D vertex keeps two forward half trees
  Complex lambda = 2.0 * forward_m(zeta);
  for (std::uint64_t id = ball_size(D) - shell_size(D); id < ball_size(D); ++id)
    a(static_cast<Eigen::Index>(id), static_cast<Eigen::Index>(id)) -= lambda;
  return a;
}

}  // namespace

Eigen::MatrixXd ball_adjacency(int D) {
  if (D < 0 || D > 13) throw std::invalid_argument("ball depth out of range");
  auto n = static_cast<Eigen::Index>(ball_size(D));
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index c = 2 * i + 1;
    if (c + 1 < n) {
      h(i, c) = h(c, i) = 1.0;
      h(i, c + 1) = h(c + 1, i) = 1.0;
    }
  }
  return h;
}

Eigen::MatrixXcd green_ball(const Potential& V, int D, Complex zeta) {
  Eigen::MatrixXcd a = closed_system(V, D, zeta);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  if (!lu.isInvertible())
    throw std::runtime_error("resolvent pole: zeta at an eigenvalue image");
  return lu.inverse();
}

MValue m_function(const Potential& V, Complex zeta) {
  int d = std::max(V.support_depth(), 0);
  Eigen::MatrixXcd a = closed_system(V, d, zeta);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(a.rows());
  e0(0) = 1.0;
  Complex g00 = Eigen::PartialPivLU<Eigen::MatrixXcd>(a).solve(e0)(0);
  MValue out;
  out.M = -g00;
  out.im_density = out.M.imag();
  return out;
}

Eigen::VectorXcd jost_vector(const Potential& V, Complex zeta, int D) {
  Eigen::MatrixXcd a = closed_system(V, D, zeta);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(a.rows());
  e0(0) = 1.0;
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(a).solve(e0);
}

Complex free_green_entry(Vertex x, Vertex y, Complex zeta) {
  check_zeta(zeta);
  int dm = std::min(x.depth, y.depth);
  Vertex ax = ancestor_at(x, dm), ay = ancestor_at(y, dm);
  while (!(ax == ay)) {
    ax = parent(ax);
    ay = parent(ay);
  }
  int dw = ax.depth;
  Complex z = z_of_zeta(zeta);
  Complex mf = forward_m(zeta);
  // diagonal at the meet depth: two child subtrees plus the path to the root
  Complex up = 0.0;  // self-energy of the root-side component
  for (int k = 0; k < dw; ++k) up = 1.0 / (-z - mf - up);
  Complex diag = 1.0 / (-z - 2.0 * mf - up);
  Complex step = zeta / kSqrt2;
  int hops = (x.depth - dw) + (y.depth - dw);
  Complex val = diag;
  for (int k = 0; k < hops; ++k) val *= step;
  return val;
}

}  // namespace bethe
