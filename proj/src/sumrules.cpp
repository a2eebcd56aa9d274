#include "bethe/sumrules.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "bethe/resolvent.hpp"

namespace bethe {

namespace {

constexpr double kLogFloor = 1e-300;

double log_abs2(Complex v) {
  return std::log(std::max(std::norm(v), kLogFloor));
}

double rel_residual(double lhs, double rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

CosSeries single_cos(int n) {
  CosSeries w;
  w.c.assign(static_cast<std::size_t>(n) + 1, 0.0);
  w.c[static_cast<std::size_t>(n)] = 1.0;
  return w;
}

}  // namespace

QuadResult log_det_quadrature(const Potential& V, Vertex x, const CosSeries& w,
                              QuadOptions opt) {
  return circle_mean(
      [&](double theta) {
        const Complex zeta(std::cos(theta), std::sin(theta));
        return log_abs2(det_L(V, x, zeta)) * w.eval(theta);
      },
      opt);
}

SumRuleReport fourier_identity(const Potential& V, Vertex x, int n,
                               QuadOptions opt) {
  if (n < 0) throw std::invalid_argument("negative frequency");
  const QuadResult q = log_det_quadrature(V, x, single_cos(n), opt);
  const EigenLedger led = eigen_zeta(V, x);

  SumRuleReport rep;
  rep.kind = IdentityKind::fourier;
  rep.nodes_used = q.nodes;
  rep.converged = q.converged;
  if (n == 0) {
    rep.lhs = 0.5 * q.value;
    double zeros = 0.0;
    for (const auto& e : led.entries)
      zeros += e.mult * std::log(1.0 / std::abs(e.zeta));
    rep.rhs = zeros;
  } else {
    rep.lhs = q.value;
    double zeros = 0.0;
    for (const auto& e : led.entries)
      zeros += e.mult * (std::pow(e.zeta, -n) - std::pow(e.zeta, n));
    const double tr = cheb_trace_diff(V, x, n).value;
    rep.rhs = (zeros - tr) / static_cast<double>(n);
  }
  rep.residual = rel_residual(rep.lhs, rep.rhs);
  return rep;
}

SumRuleReport combined_identity(const Potential& V, Vertex x,
                                const CosSeries& w, QuadOptions opt) {
  const QuadResult q = log_det_quadrature(V, x, w, opt);
  const EigenLedger led = eigen_zeta(V, x);
  double zeros = 0.0;
  for (const auto& e : led.entries)
    zeros += e.mult * eigen_term_G(w, e.zeta);

  SumRuleReport rep;
  rep.kind = IdentityKind::combined;
  rep.lhs = q.value;
  rep.rhs = zeros - weighted_trace_side(V, x, w);
  rep.residual = rel_residual(rep.lhs, rep.rhs);
  rep.nodes_used = q.nodes;
  rep.converged = q.converged;
  return rep;
}

double kappa_m() {
  // boundary density of the free operator per unit sin theta; measured once
  // rather than hard-coded
  static const double value = [] {
    const double theta = 0.9;
    const Complex zeta(std::cos(theta), std::sin(theta));
    return m_function(Potential{}, zeta).M.imag() / std::sin(theta);
  }();
  return value;
}

EntropyReport entropy_integral(const Potential& V, const CosSeries& w,
                               QuadOptions opt) {
  const double kap = kappa_m();
  EntropyReport rep;

  const auto log_ratio = [&](double theta) {
    const Complex zeta(std::cos(theta), std::sin(theta));
    const double im = m_function(V, zeta).M.imag();
    const double ratio = im / (kap * std::sin(theta));
    if (!(ratio > 0.0)) rep.im_positive = false;
    return std::log(std::max(ratio, kLogFloor));
  };

  const QuadResult q =
      circle_mean([&](double t) { return log_ratio(t) * w.eval(t); }, opt);
  rep.value = q.value;
  rep.nodes_used = q.nodes;
  rep.converged = q.converged;

  // same number through the band variable x = 2 sqrt2 cos theta: substituting
  // x = 2 sqrt2 sin u makes the Jacobian cancel, leaving a smooth integrand
  // on (-pi/2, pi/2) handled by fixed Gauss-Legendre nodes
  const auto [nodes, weights] = gauss_legendre(256);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double u = 0.5 * kPi * nodes[i];
    const double theta = 0.5 * kPi - u;
    acc += 0.5 * kPi * weights[i] * log_ratio(theta) * w.eval(theta);
  }
  rep.x_form = acc / kPi;
  return rep;
}

namespace {

// |L|^2 of every subtree determinant appearing in depth-N frontier products,
// keyed by subtree root id
class FrontierTable {
 public:
  FrontierTable(const Potential& v, Complex zeta) : v_(v), zeta_(zeta) {}

  double log_abs2_at(Vertex x) {
    const std::uint64_t id = linear_id(x);
    const auto it = cache_.find(id);
    if (it != cache_.end()) return it->second;
    const double val = log_abs2(det_L(v_, x, zeta_));
    cache_.emplace(id, val);
    return val;
  }

  double log_abs2_frontier(Vertex y) {
    double total = 0.0;
    for (const Vertex& f : frontier(y)) total += log_abs2_at(f);
    return total;
  }

 private:
  const Potential& v_;
  Complex zeta_;
  std::map<std::uint64_t, double> cache_;
};

}  // namespace

ProductCheck im_m_product(const Potential& V, int N, double theta) {
  if (N < 0) throw std::invalid_argument("negative truncation depth");
  if (std::abs(std::sin(theta)) < 1e-12)
    throw std::invalid_argument("band edge angle");
  const Potential vn = V.truncated(N);
  const Complex zeta(std::cos(theta), std::sin(theta));

  FrontierTable table(vn, zeta);
  double sum = 0.0;
  for (std::uint64_t idx = 1; idx <= shell_size(N); ++idx)
    sum += std::exp(table.log_abs2_frontier({N, idx}));

  const double lt2 = std::norm(det_L(vn, root_vertex(), zeta));
  ProductCheck pc;
  pc.im_m = m_function(vn, zeta).M.imag();
  pc.product = kappa_m() * std::sin(theta) * sum /
               (std::ldexp(1.0, N) * std::max(lt2, kLogFloor));
  pc.residual = rel_residual(pc.im_m, pc.product);
  return pc;
}

AgmReport agm_pointwise(const Potential& V, int N, double theta) {
  const ProductCheck pc = im_m_product(V, N, theta);
  const Potential vn = V.truncated(N);
  const Complex zeta(std::cos(theta), std::sin(theta));

  FrontierTable table(vn, zeta);
  double mean_log = 0.0;
  for (std::uint64_t idx = 1; idx <= shell_size(N); ++idx)
    mean_log += table.log_abs2_frontier({N, idx});
  mean_log /= std::ldexp(1.0, N);

  AgmReport rep;
  const double ratio = pc.im_m / (kappa_m() * std::sin(theta));
  rep.lhs = std::log(std::max(ratio, kLogFloor));
  rep.rhs = mean_log - log_abs2(det_L(vn, root_vertex(), zeta));
  rep.slack = rep.lhs - rep.rhs;
  rep.product_residual = pc.residual;
  return rep;
}

LedgerReport ledger_inequality(const Potential& V, int N, const CosSeries& w,
                               QuadOptions opt) {
  if (!w.nonnegative_on_grid())
    throw std::invalid_argument("inequality weight must be nonnegative");
  const Potential vn = V.truncated(N);

  LedgerReport rep;
  const EntropyReport ent = entropy_integral(vn, w, opt);
  rep.entropy = ent.value;
  rep.nodes_used = ent.nodes_used;
  rep.converged = ent.converged;

  std::map<std::string, double> cache;
  const auto zero_terms = [&](const Potential& sub) {
    const std::string key = sub.canonical_key();
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    double total = 0.0;
    for (const auto& e : eigen_zeta(sub).entries)
      total += e.mult * eigen_term_G(w, e.zeta);
    cache.emplace(key, total);
    return total;
  };

  rep.tree_zero_terms = zero_terms(vn);
  const int s = std::max(vn.support_depth(), 0);
  for (int j = 1; j <= std::min(N, s); ++j) {
    const double wj = std::ldexp(1.0, -j);
    double shell = 0.0;
    for (std::uint64_t idx = 1; idx <= shell_size(j); ++idx) {
      const Potential sub = vn.subtree_view({j, idx});
      if (sub.empty()) continue;
      shell += zero_terms(sub);
    }
    rep.subtree_zero_terms += wj * shell;
  }

  rep.lhs = rep.entropy + rep.tree_zero_terms - rep.subtree_zero_terms;
  rep.rhs = trace_ledger(vn, N, w).bracket;
  rep.slack = rep.lhs - rep.rhs;
  return rep;
}

}  // namespace bethe
