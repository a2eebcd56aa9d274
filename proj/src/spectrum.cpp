#include "bethe/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

#include "bethe/conformal.hpp"
#include "bethe/resolvent.hpp"

namespace bethe {

int EigenLedger::total_multiplicity() const {
  int t = 0;
  for (const auto& e : entries) t += e.mult;
  return t;
}

namespace {

// Sorted eigenvalues of A(zeta) = adjacency(ball(s)) + V - z(zeta) I
// + sqrt2 zeta P_boundary.  det A is a real multiple of det_L on the real
// interval, and dA/dzeta = -z'(zeta) I + sqrt2 P with -z'(zeta) > 0 on
// 0 < |zeta| < 1, so every curve is strictly increasing on each half.
Eigen::VectorXd pencil_eigs(const Eigen::MatrixXd& base,
                            const Eigen::VectorXd& boundary, double zeta) {
  Eigen::MatrixXd a = base;
  const double z = kSqrt2 * (zeta + 1.0 / zeta);
  a.diagonal().array() -= z;
  a.diagonal() += kSqrt2 * zeta * boundary;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

void scan_half(const Eigen::MatrixXd& base, const Eigen::VectorXd& boundary,
               double lo, double hi, const EigenOptions& opt,
               std::vector<double>& roots) {
  const Eigen::VectorXd at_lo = pencil_eigs(base, boundary, lo);
  const Eigen::VectorXd at_hi = pencil_eigs(base, boundary, hi);
  for (int k = 0; k < at_lo.size(); ++k) {
    if (!(at_lo[k] < 0.0 && at_hi[k] > 0.0)) continue;
    double a = lo;
    double b = hi;
    while (b - a > opt.bisect_tol) {
      const double mid = 0.5 * (a + b);
      if (pencil_eigs(base, boundary, mid)[k] < 0.0)
        a = mid;
      else
        b = mid;
    }
    roots.push_back(0.5 * (a + b));
  }
}

}  // namespace

EigenLedger eigen_zeta(const Potential& V, Vertex x, EigenOptions opt) {
  const Potential sub =
      x == root_vertex() ? V : V.subtree_view(x);
  const int s = std::max(sub.support_depth(), 0);
  if (s > 8) throw std::invalid_argument("ledger support too deep");
  const std::uint64_t n = ball_size(s);
  Eigen::MatrixXd base = ball_adjacency(s);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Vertex v = vertex_of(i);
    base(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        sub.at(v);
  }
  Eigen::VectorXd boundary = Eigen::VectorXd::Zero(n);
  for (std::uint64_t i = linear_id({s, 1}); i < n; ++i)
    boundary[static_cast<Eigen::Index>(i)] = 1.0;

  const double h = opt.edge_margin;
  std::vector<double> roots;
  scan_half(base, boundary, h, 1.0 - h, opt, roots);
  scan_half(base, boundary, -1.0 + h, -h, opt, roots);
  std::sort(roots.begin(), roots.end());

  EigenLedger led;
  led.subtree_root = x;
  std::size_t i = 0;
  while (i < roots.size()) {
    std::size_t j = i + 1;
    double sum = roots[i];
    while (j < roots.size() && roots[j] - roots[j - 1] <= opt.cluster_tol) {
      sum += roots[j];
      ++j;
    }
    ZeroEntry e;
    e.zeta = sum / static_cast<double>(j - i);
    e.x = kSqrt2 * (e.zeta + 1.0 / e.zeta);
    e.mult = static_cast<int>(j - i);
    e.low_confidence = std::abs(e.zeta) > 1.0 - 10.0 * h;
    led.entries.push_back(e);
    i = j;
  }
  return led;
}

int winding_order(const Potential& V, Complex center, double radius,
                  int nodes) {
  if (radius <= 0.0 || nodes < 8) throw std::invalid_argument("winding setup");
  const Vertex root = root_vertex();
  double total = 0.0;
  double prev_arg = 0.0;
  for (int j = 0; j <= nodes; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) /
                     static_cast<double>(nodes);
    const Complex zeta = center + radius * Complex(std::cos(t), std::sin(t));
    const Complex val = det_L(V, root, zeta);
    if (std::abs(val) < 1e-14)
      throw std::runtime_error("winding circle passes through a zero");
    const double arg = std::arg(val);
    if (j > 0) {
      double d = arg - prev_arg;
      while (d > kPi) d -= 2.0 * kPi;
      while (d < -kPi) d += 2.0 * kPi;
      total += d;
    }
    prev_arg = arg;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

int winding_count_disk(const Potential& V, double radius, int nodes) {
  return winding_order(V, Complex(0.0, 0.0), radius, nodes);
}

namespace {

std::vector<double> filter_outside(const Eigen::VectorXd& eigs,
                                   double margin) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (std::abs(eigs[i]) > kBandEdge + margin) out.push_back(eigs[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> truncation_eigs(const Potential& V, int D, double margin) {
  const int s = std::max(V.support_depth(), 0);
  if (D < s + 6) throw std::invalid_argument("truncation depth too small");
  const std::uint64_t core = ball_size(s);
  const std::uint64_t shell = shell_size(s);
  const int len = D - s;  // one radial string per depth-s vertex
  const Eigen::Index dim =
      static_cast<Eigen::Index>(core + shell * static_cast<std::uint64_t>(len));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint64_t i = 0; i < core; ++i) {
    const Vertex v = vertex_of(i);
    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = V.at(v);
    if (v.depth == s) continue;
    const auto kids = children(v);
    for (const Vertex& c : kids) {
      const Eigen::Index j = static_cast<Eigen::Index>(linear_id(c));
      a(static_cast<Eigen::Index>(i), j) = 1.0;
      a(j, static_cast<Eigen::Index>(i)) = 1.0;
    }
  }
  // each depth-s vertex carries the symmetric sector of its free subtree:
  // a half line with all couplings sqrt2
  const std::uint64_t first = linear_id({s, 1});
  for (std::uint64_t u = 0; u < shell; ++u) {
    Eigen::Index prev = static_cast<Eigen::Index>(first + u);
    Eigen::Index node = static_cast<Eigen::Index>(
        core + u * static_cast<std::uint64_t>(len));
    for (int k = 0; k < len; ++k) {
      a(prev, node) = kSqrt2;
      a(node, prev) = kSqrt2;
      prev = node;
      ++node;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a,
                                                    Eigen::EigenvaluesOnly);
  return filter_outside(es.eigenvalues(), margin);
}

std::vector<double> truncation_eigs_dense(const Potential& V, int D,
                                          double margin) {
  if (D > 9) throw std::invalid_argument("dense truncation depth too large");
  Eigen::MatrixXd a = ball_adjacency(D);
  for (std::uint64_t i = 0; i < ball_size(D); ++i)
    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        V.at(vertex_of(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a,
                                                    Eigen::EigenvaluesOnly);
  return filter_outside(es.eigenvalues(), margin);
}

namespace {

std::vector<double> aitken_step(const std::vector<std::vector<double>>& rows) {
  // one delta-squared pass across consecutive depth triples, per eigenvalue
  std::vector<std::vector<double>> out;
  std::vector<double> last;
  for (std::size_t j = 0; j + 2 < rows.size(); ++j) {
    const auto& a = rows[j];
    const auto& b = rows[j + 1];
    const auto& c = rows[j + 2];
    std::vector<double> acc(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d1 = b[i] - a[i];
      const double d2 = c[i] - b[i];
      const double den = d2 - d1;
      acc[i] = std::abs(den) > 1e-300 ? c[i] - d2 * d2 / den : c[i];
    }
    out.push_back(std::move(acc));
  }
  if (out.empty()) throw std::invalid_argument("extrapolation needs 3 depths");
  last = out.back();
  if (out.size() >= 3) {
    // second acceleration level when enough entries survive
    std::vector<std::vector<double>> out2;
    for (std::size_t j = 0; j + 2 < out.size(); ++j) {
      const auto& a = out[j];
      const auto& b = out[j + 1];
      const auto& c = out[j + 2];
      std::vector<double> acc(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d1 = b[i] - a[i];
        const double d2 = c[i] - b[i];
        const double den = d2 - d1;
        acc[i] = std::abs(den) > 1e-300 ? c[i] - d2 * d2 / den : c[i];
      }
      out2.push_back(std::move(acc));
    }
    last = out2.back();
  }
  return last;
}

}  // namespace

std::vector<double> truncation_eigs_extrapolated(const Potential& V,
                                                 int base_depth, int levels,
                                                 double margin) {
  if (levels < 3) throw std::invalid_argument("extrapolation needs 3 depths");
  std::vector<std::vector<double>> rows;
  std::size_t count = 0;
  for (int l = 0; l < levels; ++l) {
    rows.push_back(truncation_eigs(V, base_depth + 2 * l, margin));
    if (l == 0) {
      count = rows[0].size();
    } else if (rows.back().size() != count) {
      // an eigenvalue drifted across the margin between depths; the ladder
      // is only meaningful on a stable count
      throw std::runtime_error("truncation eigenvalue count not stable");
    }
  }
  return aitken_step(rows);
}

double ev_sum(const EigenLedger& led, double q) {
  double total = 0.0;
  for (const auto& e : led.entries)
    total += e.mult * std::pow(std::abs(std::abs(e.x) - kBandEdge), q);
  return total;
}

double ev_sum_disk(const EigenLedger& led, double q) {
  double total = 0.0;
  for (const auto& e : led.entries)
    total += e.mult * std::pow(1.0 - std::abs(e.zeta), q);
  return total;
}

double ev_sum_functional(const EigenLedger& led, std::span<const double> a) {
  double total = 0.0;
  for (const auto& e : led.entries)
    total += e.mult * beyond_band_F(a, e.x);
  return total;
}

EvLimitStudy ev_limit_study(const Potential& V, double q,
                            std::span<const int> n_list) {
  std::map<std::string, double> cache;
  const auto ev_of = [&](const Potential& W) {
    const std::string key = W.canonical_key();
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double val = ev_sum(eigen_zeta(W), q);
    cache.emplace(key, val);
    return val;
  };

  EvLimitStudy study;
  for (const int N : n_list) {
    if (N < 0) throw std::invalid_argument("ev_limit_study: negative depth");
    const Potential vn = V.truncated(N);
    double bracket = ev_of(vn);
    const int s = vn.support_depth();
    for (int k = 1; k <= s; ++k) {
      const double w = std::ldexp(1.0, -k);
      double shell_sum = 0.0;
      for (std::uint64_t idx = 1; idx <= shell_size(k); ++idx) {
        const Potential sub = vn.subtree_view({k, idx});
        if (sub.empty()) continue;
        shell_sum += ev_of(sub);
      }
      bracket -= w * shell_sum;
    }
    study.brackets.push_back(bracket);
  }
  for (std::size_t i = 0; i + 1 < study.brackets.size(); ++i)
    study.diffs.push_back(study.brackets[i + 1] - study.brackets[i]);
  return study;
}

}  // namespace bethe
