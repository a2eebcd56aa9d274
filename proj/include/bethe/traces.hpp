// Exact Chebyshev trace differences on subtrees, their weighted assembly,
// and the tree-minus-subtrees trace bracket with its lower-bound terms.
// Everything here is evaluated by local matrix polynomials on a plain ball:
// a closed walk of length k from y never leaves the depth |y| + k/2 ball,
// so truncation at support_depth + k is exact, no boundary correction.

#pragma once

#include <vector>

#include "bethe/conformal.hpp"
#include "bethe/potential.hpp"

namespace bethe {

struct TraceReport {
  int k = 0;
  Vertex subtree_root{0, 1};
  double value = 0.0;
  int ball_depth_used = 0;
};

// tr[T_k((H0 + V)/sqrt2) - T_k(H0/sqrt2)] on the subtree rooted at x,
// doubled Chebyshev normalization T_0 = 2
TraceReport cheb_trace_diff(const Potential& V, Vertex x, int k);

// all orders 0..kmax in one sweep; entry 0 is always 0
std::vector<double> cheb_trace_diff_upto(const Potential& V, Vertex x,
                                         int kmax);

// tr[(H^4 - 24 H^2) - (H0^4 - 24 H0^2)] on the subtree rooted at x;
// independent route for the quartic combination
double quartic_trace_diff(const Potential& V, Vertex x);

// sum_{n>=1} (c_n / n) tr_n for a cosine-series weight
double weighted_trace_side(const Potential& V, Vertex x, const CosSeries& w);

// bracket = weighted tree trace minus sum_j 2^-j (weighted shell-j subtree
// traces), all for V truncated at N; bound terms are the quartic and
// difference sums controlling it from below
struct TraceLedger {
  double bracket = 0.0;
  double sum_v4 = 0.0;   // sum_{j=1..N} 2^-j sum_{|x|=j} V(x)^4
  double sum_dv2 = 0.0;  // sum_{j=2..N} 2^-j sum_{|x|=j} (delta V)(x)^2
};
TraceLedger trace_ledger(const Potential& V, int N, const CosSeries& w);

}  // namespace bethe
