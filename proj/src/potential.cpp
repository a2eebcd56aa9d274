#include "bethe/potential.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace bethe {

namespace {

// mt19937_64 raw bits -> double in [0,1); avoids the implementation-defined
// std::uniform_real_distribution so streams are identical everywhere
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : eng_(seed) {}
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * unit() - 1.0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace

Potential Potential::radial(std::span<const double> profile) {
  if (profile.size() > static_cast<std::size_t>(kMaxDepth))
    throw std::invalid_argument("radial profile too deep");
  Potential out;
  for (std::size_t n = 0; n < profile.size(); ++n) {
    if (profile[n] == 0.0) continue;
    for (std::uint64_t k = 1; k <= shell_size(static_cast<int>(n)); ++k)
      out.set(Vertex{static_cast<int>(n), k}, profile[n]);
  }
  return out;
}

Potential Potential::random_ball(std::uint64_t seed, int depth,
                                 double amplitude, double decay) {
  if (depth < 0 || depth > 20)
    throw std::invalid_argument("random ball depth out of range");
  SeededUniform rng(seed);
  Potential out;
  for (std::uint64_t id = 0; id < ball_size(depth); ++id) {
    Vertex v = vertex_of(id);
    double env = amplitude * std::pow(v.depth + 1.0, -decay);
    out.set(v, env * rng.symmetric());  // draw order fixed by linear id
  }
  return out;
}

void Potential::set(Vertex v, double value) {
  std::uint64_t id = linear_id(v);
  if (value == 0.0)
    vals_.erase(id);
  else
    vals_[id] = value;
}

double Potential::at(Vertex v) const {
  auto it = vals_.find(linear_id(v));
  return it == vals_.end() ? 0.0 : it->second;
}

int Potential::support_depth() const {
  if (vals_.empty()) return -1;
  return vertex_of(vals_.rbegin()->first).depth;
}

bool Potential::is_radial() const {
  if (vals_.empty()) return true;
  int top = support_depth();
  for (int d = 0; d <= top; ++d) {
    double first = at(Vertex{d, 1});
    for (std::uint64_t k = 2; k <= shell_size(d); ++k)
      if (at(Vertex{d, k}) != first) return false;
  }
  return true;
}

Potential Potential::subtree_view(Vertex x) const {
  Potential out;
  for (const auto& [id, val] : vals_) {
    Vertex v = vertex_of(id);
    if (is_ancestor(x, v)) out.set(global_to_subtree(x, v), val);
  }
  return out;
}

Potential Potential::truncated(int depth) const {
  Potential out;
  for (const auto& [id, val] : vals_) {
    Vertex v = vertex_of(id);
    if (v.depth <= depth) out.set(v, val);
  }
  return out;
}

double Potential::max_abs() const {
  double m = 0.0;
  for (const auto& [id, val] : vals_) m = std::max(m, std::abs(val));
  return m;
}

std::string Potential::canonical_key() const {
  std::string key;
  char buf[64];
  for (const auto& [id, val] : vals_) {
    std::snprintf(buf, sizeof buf, "%llu:%.17g;",
                  static_cast<unsigned long long>(id), val);
    key += buf;
  }
  return key;
}

double delta_parent(const Potential& v, Vertex x) {
  if (x.depth < 1)
    throw std::invalid_argument("parent difference needs depth >= 1");
  return v.at(parent(x)) - v.at(x);
}

double delta_children(const Potential& v, Vertex x) {
  auto [c0, c1] = children(x);
  return v.at(x) - 0.5 * (v.at(c0) + v.at(c1));
}

HypothesisSums hypothesis_sums(const Potential& v, int two_p, int depth_cap,
                               int delta_start) {
  if (two_p < 2 || two_p % 2 != 0)
    throw std::invalid_argument("power must be a positive even integer");
  if (delta_start < 1)
    throw std::invalid_argument("difference sum starts at depth >= 1");
  if (depth_cap < 0 || depth_cap > kMaxDepth)
    throw std::invalid_argument("depth cap out of range");
  HypothesisSums out;
  // shells past support+1 contribute zeros for both sums
  int top = std::min(depth_cap, v.support_depth() + 1);
  for (int n = 0; n <= top; ++n) {
    double wn = std::ldexp(1.0, -n);  // 2^-n
    double pw = 0.0, df = 0.0;
    for (std::uint64_t k = 1; k <= shell_size(n); ++k) {
      Vertex x{n, k};
      if (n >= 1) pw += std::pow(v.at(x), two_p);
      if (n >= delta_start) {
        double d = delta_parent(v, x);
        df += d * d;
      }
    }
    out.power += wn * pw;
    out.diff += wn * df;
  }
  return out;
}

}  // namespace bethe
