#include <doctest.h>

#include <cmath>

#include "bethe/sumrules.hpp"

using namespace bethe;

TEST_SUITE("sumrules") {
  TEST_CASE("zeroth identity on the rank-one model") {
    Potential p;
    p.set({0, 1}, 2.0);  // zero at sqrt2/2, so both sides equal log sqrt2
    const SumRuleReport rep = fourier_identity(p, root_vertex(), 0, {});
    CHECK(rep.converged);
    CHECK(rep.lhs == doctest::Approx(0.346573590279972655).epsilon(1e-9));
    CHECK(rep.rhs == doctest::Approx(0.346573590279972655).epsilon(1e-11));
    CHECK(rep.residual < 1e-9);
  }

  TEST_CASE("odd frequencies need the signed zero") {
    Potential p;
    p.set({0, 1}, -3.0);  // zero at negative zeta
    for (const int n : {1, 3, 5}) {
      const SumRuleReport rep = fourier_identity(p, root_vertex(), n, {});
      CHECK(rep.residual < 1e-9);
    }
  }

  TEST_CASE("all frequencies hold for a seeded potential") {
    const Potential v = Potential::random_ball(2, 2, 2.5, 0.0);
    for (int n = 0; n <= 6; ++n) {
      const SumRuleReport rep = fourier_identity(v, root_vertex(), n, {});
      CHECK(rep.converged);
      CHECK(rep.residual < 1e-8);
    }
  }

  TEST_CASE("combined identity and weight additivity") {
    const Potential v = Potential::random_ball(10, 2, 2.0, 0.0);
    for (const int two_p : {2, 4, 6})
      CHECK(combined_identity(v, root_vertex(), sin_power_weight(two_p), {})
                .residual < 1e-8);

    const QuadResult qa =
        log_det_quadrature(v, root_vertex(), sin_power_weight(2), {});
    const QuadResult qb =
        log_det_quadrature(v, root_vertex(), sin_power_weight(4), {});
    const QuadResult qs = log_det_quadrature(
        v, root_vertex(), sin_power_weight(2) + sin_power_weight(4), {});
    CHECK(qs.value == doctest::Approx(qa.value + qb.value).epsilon(1e-10));
  }

  TEST_CASE("identity evaluation is bit reproducible") {
    const Potential v = Potential::random_ball(31, 2, 2.0, 0.0);
    const SumRuleReport a = fourier_identity(v, root_vertex(), 2, {});
    const SumRuleReport b = fourier_identity(v, root_vertex(), 2, {});
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK(a.nodes_used == b.nodes_used);
  }

  TEST_CASE("boundary calibration lands on the derived constant") {
    CHECK(kappa_m() == doctest::Approx(1.0 / kSqrt2).epsilon(1e-12));
  }

  TEST_CASE("free entropy vanishes and the band route agrees") {
    const EntropyReport free_rep = entropy_integral(Potential{},
                                                    sin_power_weight(4), {});
    CHECK(free_rep.converged);
    CHECK(free_rep.im_positive);
    CHECK(std::abs(free_rep.value) < 1e-10);
    CHECK(std::abs(free_rep.x_form) < 1e-8);

    Potential p;
    p.set({0, 1}, 2.0);
    const EntropyReport rep = entropy_integral(p, sin_power_weight(4), {});
    CHECK(rep.converged);
    CHECK(rep.x_form == doctest::Approx(rep.value).epsilon(1e-7));
  }

  TEST_CASE("transferred density equals the frontier product") {
    const Potential v = Potential::random_ball(6, 3, 2.5, 0.0);
    for (const double th : {0.4, 1.0, 1.9, 2.7}) {
      const ProductCheck chk = im_m_product(v, 3, th);
      CHECK(chk.residual < 1e-11);
      CHECK(chk.im_m > 0.0);
    }
  }

  TEST_CASE("pointwise mean inequality, with equality for radial data") {
    const Potential v = Potential::random_ball(15, 3, 2.5, 0.0);
    for (const double th : {0.5, 1.2, 2.1})
      CHECK(agm_pointwise(v, 3, th).slack >= -1e-12);

    const double prof[] = {1.5, 0.8, 0.4};
    const Potential r = Potential::radial(prof);
    for (const double th : {0.5, 1.2, 2.1}) {
      const AgmReport rep = agm_pointwise(r, 3, th);
      CHECK(std::abs(rep.slack) < 1e-10);
      CHECK(rep.product_residual < 1e-11);
    }
  }

  TEST_CASE("ledger inequality holds and its parts add up") {
    const Potential v = Potential::random_ball(9, 3, 2.5, 0.0);
    const LedgerReport rep = ledger_inequality(v, 3, sin_power_weight(4), {});
    CHECK(rep.converged);
    CHECK(rep.slack >= -1e-9);
    CHECK(rep.lhs == doctest::Approx(rep.entropy + rep.tree_zero_terms -
                                     rep.subtree_zero_terms)
                         .epsilon(1e-14));
    CHECK(rep.slack == doctest::Approx(rep.lhs - rep.rhs).epsilon(1e-14));

    // rank-one collapses to equality
    Potential p;
    p.set({0, 1}, 2.0);
    const LedgerReport eq = ledger_inequality(p, 4, sin_power_weight(4), {});
    CHECK(eq.subtree_zero_terms == 0.0);
    CHECK(std::abs(eq.slack) < 1e-10);
  }

  TEST_CASE("ledger rejects signed weights") {
    const double lin[] = {0.0, 1.0};
    CHECK_THROWS(ledger_inequality(Potential{}, 2, band_poly_weight(lin), {}));
  }
}
