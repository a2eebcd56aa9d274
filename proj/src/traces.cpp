#include "bethe/traces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace bethe {

namespace {

// out = scale * ((adjacency + diag) u) on the heap-indexed ball
void apply_ball(const std::vector<double>& diag, double scale,
                const std::vector<double>& u, std::vector<double>& out) {
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diag[i] * u[i];
    if (i > 0) acc += u[(i - 1) / 2];
    const std::size_t c = 2 * i + 1;
    if (c + 1 < n) acc += u[c] + u[c + 1];
    out[i] = acc * scale;
  }
}

// diagonal entries (T_k(scale * (H + diag)))_yy for k = 0..kmax
std::vector<double> cheb_diag_series(const std::vector<double>& diag,
                                     double scale, std::size_t y, int kmax) {
  const std::size_t n = diag.size();
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
  out[0] = 2.0;
  if (kmax == 0) return out;
  std::vector<double> prev(n, 0.0), cur(n, 0.0), next(n, 0.0);
  prev[y] = 2.0;
  std::vector<double> ey(n, 0.0);
  ey[y] = 1.0;
  apply_ball(diag, scale, ey, cur);
  out[1] = cur[y];
  for (int k = 2; k <= kmax; ++k) {
    apply_ball(diag, scale, cur, next);
    for (std::size_t i = 0; i < n; ++i) next[i] -= prev[i];
    out[static_cast<std::size_t>(k)] = next[y];
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return out;
}

std::vector<double> potential_diag(const Potential& v, std::uint64_t n) {
  std::vector<double> diag(n, 0.0);
  for (const auto& [id, val] : v.entries())
    if (id < n) diag[id] = val;
  return diag;
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

std::vector<double> cheb_trace_diff_upto(const Potential& V, Vertex x,
                                         int kmax) {
  if (kmax < 0) throw std::invalid_argument("negative trace order");
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  const Potential sub = x == root_vertex() ? V : V.subtree_view(x);
  if (sub.empty() || kmax == 0) return out;
  const int s = std::max(sub.support_depth(), 0);
  const int D = s + kmax;
  if (D > 20) throw std::invalid_argument("trace ball too deep");
  const std::uint64_t n = ball_size(D);
  const std::vector<double> diag_v = potential_diag(sub, n);
  const std::vector<double> diag_0(n, 0.0);

  // the difference vanishes for y farther than kmax/2 from the support
  const int ydepth = s + kmax / 2;
  std::vector<std::vector<double>> free_by_depth(
      static_cast<std::size_t>(ydepth) + 1);
  for (int d = 0; d <= ydepth; ++d)
    free_by_depth[static_cast<std::size_t>(d)] = cheb_diag_series(
        diag_0, kInvSqrt2, linear_id({d, 1}), kmax);

  for (std::uint64_t y = 0; y < ball_size(ydepth); ++y) {
    const auto with_v = cheb_diag_series(diag_v, kInvSqrt2, y, kmax);
    const auto& free = free_by_depth[static_cast<std::size_t>(
        vertex_of(y).depth)];
    for (int k = 1; k <= kmax; ++k)
      out[static_cast<std::size_t>(k)] +=
          with_v[static_cast<std::size_t>(k)] -
          free[static_cast<std::size_t>(k)];
  }
  return out;
}

TraceReport cheb_trace_diff(const Potential& V, Vertex x, int k) {
  if (k < 1) throw std::invalid_argument("trace order must be positive");
  const Potential sub = x == root_vertex() ? V : V.subtree_view(x);
  const auto all = cheb_trace_diff_upto(V, x, k);
  TraceReport rep;
  rep.k = k;
  rep.subtree_root = x;
  rep.value = all[static_cast<std::size_t>(k)];
  rep.ball_depth_used = sub.empty() ? 0 : std::max(sub.support_depth(), 0) + k;
  return rep;
}

double quartic_trace_diff(const Potential& V, Vertex x) {
  const Potential sub = x == root_vertex() ? V : V.subtree_view(x);
  if (sub.empty()) return 0.0;
  const int s = std::max(sub.support_depth(), 0);
  const int D = s + 4;
  if (D > 20) throw std::invalid_argument("trace ball too deep");
  const std::uint64_t n = ball_size(D);
  const std::vector<double> diag_v = potential_diag(sub, n);
  const std::vector<double> diag_0(n, 0.0);

  // (H^4)_yy = |H^2 e_y|^2 and (H^2)_yy = |H e_y|^2 by symmetry
  const auto k_diag = [&](const std::vector<double>& diag, std::uint64_t y) {
    std::vector<double> ey(n, 0.0), w1(n, 0.0), w2(n, 0.0);
    ey[y] = 1.0;
    apply_ball(diag, 1.0, ey, w1);
    apply_ball(diag, 1.0, w1, w2);
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      n1 += w1[i] * w1[i];
      n2 += w2[i] * w2[i];
    }
    return n2 - 24.0 * n1;
  };

  const int ydepth = s + 2;
  std::vector<double> free_by_depth(static_cast<std::size_t>(ydepth) + 1);
  for (int d = 0; d <= ydepth; ++d)
    free_by_depth[static_cast<std::size_t>(d)] =
        k_diag(diag_0, linear_id({d, 1}));

  double total = 0.0;
  for (std::uint64_t y = 0; y < ball_size(ydepth); ++y)
    total += k_diag(diag_v, y) -
             free_by_depth[static_cast<std::size_t>(vertex_of(y).depth)];
  return total;
}

double weighted_trace_side(const Potential& V, Vertex x, const CosSeries& w) {
  const int kmax = w.degree();
  const auto t = cheb_trace_diff_upto(V, x, kmax);
  double total = 0.0;
  for (int k = 1; k <= kmax; ++k)
    total += w.c[static_cast<std::size_t>(k)] /
             static_cast<double>(k) * t[static_cast<std::size_t>(k)];
  return total;
}

TraceLedger trace_ledger(const Potential& V, int N, const CosSeries& w) {
  if (N < 0) throw std::invalid_argument("negative truncation depth");
  const Potential vn = V.truncated(N);
  TraceLedger led;

  std::map<std::string, double> cache;
  const auto side_of = [&](const Potential& sub) {
    const std::string key = sub.canonical_key();
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double val = weighted_trace_side(sub, root_vertex(), w);
    cache.emplace(key, val);
    return val;
  };

  led.bracket = side_of(vn);
  const int s = std::max(vn.support_depth(), 0);
  for (int j = 1; j <= std::min(N, s); ++j) {
    const double wj = std::ldexp(1.0, -j);
    double shell = 0.0;
    for (std::uint64_t idx = 1; idx <= shell_size(j); ++idx) {
      const Potential sub = vn.subtree_view({j, idx});
      if (sub.empty()) continue;
      shell += side_of(sub);
    }
    led.bracket -= wj * shell;
  }

  for (const auto& [id, val] : vn.entries()) {
    const Vertex v = vertex_of(id);
    if (v.depth >= 1)
      led.sum_v4 += std::ldexp(1.0, -v.depth) * val * val * val * val;
  }
  // delta contributions live on the support and its children
  std::set<std::uint64_t> dv_sites;
  for (const auto& [id, val] : vn.entries()) {
    const Vertex v = vertex_of(id);
    if (v.depth >= 2 && v.depth <= N) dv_sites.insert(id);
    if (v.depth + 1 >= 2 && v.depth + 1 <= N)
      for (const Vertex& c : children(v)) dv_sites.insert(linear_id(c));
  }
  for (const std::uint64_t id : dv_sites) {
    const Vertex v = vertex_of(id);
    const double d = delta_parent(vn, v);
    led.sum_dv2 += std::ldexp(1.0, -v.depth) * d * d;
  }
  return led;
}

}  // namespace bethe
