// Finitely supported real potentials on the tree, plus the discrete
// difference operators and hypothesis sums built from them.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bethe/tree.hpp"

namespace bethe {

class Potential {
 public:
  Potential() = default;

  // every depth-n vertex gets profile[n]
  static Potential radial(std::span<const double> profile);

  // iid uniform on [-amplitude, amplitude] over the ball, scaled by the
  // depth envelope (n+1)^(-decay); bit-reproducible across platforms
  static Potential random_ball(std::uint64_t seed, int depth, double amplitude,
                               double decay = 0.0);

  void set(Vertex v, double value);  // value 0 erases
  double at(Vertex v) const;

  bool empty() const { return vals_.empty(); }
  int support_depth() const;  // -1 when empty
  bool is_radial() const;

  std::size_t size() const { return vals_.size(); }

  // entries sorted by linear id; the canonical iteration order everywhere
  const std::map<std::uint64_t, double>& entries() const { return vals_; }

  Potential subtree_view(Vertex x) const;  // restriction to T_x, re-rooted
  Potential truncated(int depth) const;    // drop entries deeper than depth

  double max_abs() const;

  // stable content fingerprint, used to deduplicate repeated subtrees
  std::string canonical_key() const;

 private:
  std::map<std::uint64_t, double> vals_;
};

// delta V(x) = V(parent x) - V(x), |x| >= 1
double delta_parent(const Potential& v, Vertex x);
// tilde-delta V(x) = V(x) - mean of V over the children of x
double delta_children(const Potential& v, Vertex x);

struct HypothesisSums {
  double power = 0.0;  // sum_n 2^-n sum_{|x|=n} V(x)^(2p)
  double diff = 0.0;   // sum_{n>=start} 2^-n sum_{|x|=n} (delta V)(x)^2
};

// Sums run over shells 0..depth_cap (the potential support plus one shell is
// enough; deeper shells only add zeros). delta_start picks the first shell
// of the difference sum.
HypothesisSums hypothesis_sums(const Potential& v, int two_p, int depth_cap,
                               int delta_start);

}  // namespace bethe
