// Circle quadrature of log |det| against cosine weights, the per-frequency
// and combined trace identities, entropy integrals, the pointwise AGM
// inequality, and the tree-minus-subtrees ledger inequality.

#pragma once

#include "bethe/conformal.hpp"
#include "bethe/perturbation.hpp"
#include "bethe/potential.hpp"
#include "bethe/quadrature.hpp"
#include "bethe/spectrum.hpp"
#include "bethe/traces.hpp"

namespace bethe {

enum class IdentityKind { fourier, combined, ledger };

struct SumRuleReport {
  IdentityKind kind = IdentityKind::fourier;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs| / (1 + |lhs|)
  int nodes_used = 0;
  bool converged = true;
};

// (1/2pi) integral of log |L_{T_x}(e^{i theta})|^2 w(theta) d theta
QuadResult log_det_quadrature(const Potential& V, Vertex x, const CosSeries& w,
                              QuadOptions opt = {});

// n = 0:  (1/4pi) int log|L|^2  =  sum_s log 1/|zeta_s|
// n >= 1: (1/2pi) int log|L|^2 cos n theta
//           =  (1/n) sum_s (zeta_s^-n - zeta_s^n)  -  (1/n) tr_n
// (signed zeros; for odd n the sign of zeta_s matters)
SumRuleReport fourier_identity(const Potential& V, Vertex x, int n,
                               QuadOptions opt = {});

// quadrature against a full weight = zero terms minus weighted trace side
SumRuleReport combined_identity(const Potential& V, Vertex x,
                                const CosSeries& w, QuadOptions opt = {});

// measured boundary calibration: Im M / sin theta at V = 0
double kappa_m();

struct EntropyReport {
  double value = 0.0;  // (1/2pi) int log(Im M / (kappa_m sin)) w
  int nodes_used = 0;
  bool converged = true;
  double x_form = 0.0;      // same integral routed through the band variable
  bool im_positive = true;  // Im M stayed positive at all evaluated nodes
};
EntropyReport entropy_integral(const Potential& V, const CosSeries& w,
                               QuadOptions opt = {});

struct ProductCheck {
  double im_m = 0.0;     // Im M(e^{i theta}) for V truncated at N
  double product = 0.0;  // kappa_m sin theta * sum_y |L_frontier|^2 / (2^N |L_T|^2)
  double residual = 0.0;
};
ProductCheck im_m_product(const Potential& V, int N, double theta);

struct AgmReport {
  double lhs = 0.0;  // log(Im M / (kappa_m sin theta))
  double rhs = 0.0;  // 2^-N sum_y log|L_frontier|^2 - log|L_T|^2
  double slack = 0.0;
  double product_residual = 0.0;
};
AgmReport agm_pointwise(const Potential& V, int N, double theta);

struct LedgerReport {
  double entropy = 0.0;
  double tree_zero_terms = 0.0;     // sum_s G_w at the tree ledger
  double subtree_zero_terms = 0.0;  // sum_j 2^-j sum_x (G_w at subtree ledgers)
  double lhs = 0.0;                 // entropy + tree - subtree
  double rhs = 0.0;                 // trace bracket
  double slack = 0.0;
  int nodes_used = 0;
  bool converged = true;
};
LedgerReport ledger_inequality(const Potential& V, int N, const CosSeries& w,
                               QuadOptions opt = {});

}  // namespace bethe
