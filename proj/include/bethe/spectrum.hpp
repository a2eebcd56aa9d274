// Point spectrum outside the band: determinant-zero ledgers in the disk
// variable, a truncation oracle (exact symmetric-sector reduction of the
// dense ball), depth extrapolation, and eigenvalue-sum functionals.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "bethe/perturbation.hpp"

namespace bethe {

struct ZeroEntry {
  double zeta = 0.0;  // signed zero location in (-1,0) U (0,1)
  double x = 0.0;     // sqrt2 (zeta + 1/zeta), |x| > 2 sqrt2
  int mult = 1;
  bool low_confidence = false;  // within 10*edge_margin of the unit circle
};

struct EigenLedger {
  std::vector<ZeroEntry> entries;  // ascending in zeta
  Vertex subtree_root{0, 1};
  int total_multiplicity() const;
};

struct EigenOptions {
  double edge_margin = 1e-4;  // search [-1+h, -h] and [h, 1-h]
  double bisect_tol = 1e-13;
  double cluster_tol = 1e-9;  // roots closer than this merge into one zero
};

// All zeros of zeta -> det_L(V, x, zeta) with multiplicity, i.e. the
// eigenvalue ledger of the subtree operator rooted at x. Locations come from
// bisecting the sorted eigenvalue curves of the boundary-closed ball pencil,
// which are strictly increasing in zeta on each half interval, so every zero
// of every order is crossed exactly once per curve through it.
EigenLedger eigen_zeta(const Potential& V, Vertex x = root_vertex(),
                       EigenOptions opt = {});

// argument-principle order of det_L around |zeta - center| = radius
int winding_order(const Potential& V, Complex center, double radius,
                  int nodes = 64);
// zero count (with multiplicity) inside |zeta| = radius
int winding_count_disk(const Potential& V, double radius, int nodes = 4096);

// Outside-band eigenvalues of the plain dense depth-D truncation, with
// multiplicity, ascending. Requires D >= support_depth + 6. Computed through
// the exact symmetric-sector reduction: the discarded antisymmetric sectors
// are free strings whose spectra stay strictly inside the band, so the
// outside-band multiset is identical to the literal dense truncation at a
// fraction of the size.
std::vector<double> truncation_eigs(const Potential& V, int D,
                                    double margin = 0.05);
// literal dense route, small depths; validation only
std::vector<double> truncation_eigs_dense(const Potential& V, int D,
                                          double margin = 0.05);
// Aitken-accelerated depth ladder base, base+2, ..., base+2(levels-1)
std::vector<double> truncation_eigs_extrapolated(const Potential& V,
                                                 int base_depth, int levels,
                                                 double margin = 0.05);

// sum over the ledger of |x_s -+ 2 sqrt2|^q (distance to the nearer edge)
double ev_sum(const EigenLedger& led, double q);
// sum of (1 - |zeta_s|)^q
double ev_sum_disk(const EigenLedger& led, double q);
// sum of F^A(x_s)
double ev_sum_functional(const EigenLedger& led, std::span<const double> a);

// bracket sequence EV^q(V(N)) - sum_k 2^-k sum_{|x|=k} EV^q(V(N) on T_x),
// one entry per requested truncation depth, plus successive differences
struct EvLimitStudy {
  std::vector<double> brackets;
  std::vector<double> diffs;  // brackets[i+1] - brackets[i]
};
EvLimitStudy ev_limit_study(const Potential& V, double q,
                            std::span<const int> n_list);

}  // namespace bethe
