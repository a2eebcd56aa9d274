#include <doctest.h>

#include <cmath>

#include "bethe/spectrum.hpp"

using namespace bethe;

TEST_SUITE("spectrum") {
  TEST_CASE("rank-one ledger: one zero at sqrt2/v") {
    Potential p;
    p.set({0, 1}, 2.0);
    const EigenLedger led = eigen_zeta(p);
    REQUIRE(led.entries.size() == 1);
    CHECK(led.entries[0].zeta == doctest::Approx(kSqrt2 / 2.0).epsilon(1e-10));
    CHECK(led.entries[0].x == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(led.entries[0].mult == 1);
    CHECK(!led.entries[0].low_confidence);

    Potential n;
    n.set({0, 1}, -3.0);
    const EigenLedger ledn = eigen_zeta(n);
    REQUIRE(ledn.entries.size() == 1);
    CHECK(ledn.entries[0].zeta ==
          doctest::Approx(-kSqrt2 / 3.0).epsilon(1e-10));
    CHECK(ledn.entries[0].x ==
          doctest::Approx(-3.0 - 2.0 / 3.0).epsilon(1e-10));
  }

  TEST_CASE("weak couplings produce no zeros") {
    for (const double v : {1.0, -1.2, 1.41}) {
      Potential p;
      p.set({0, 1}, v);
      CHECK(eigen_zeta(p).entries.empty());
    }
  }

  TEST_CASE("near-edge zeros carry the low confidence flag") {
    // coupling barely above sqrt(2): the zero sits just inside the scan range
    // yet within the confidence band at the rim
    Potential p;
    p.set({0, 1}, 1.4150);
    const EigenLedger led = eigen_zeta(p);
    REQUIRE(led.entries.size() == 1);
    CHECK(led.entries[0].low_confidence);
  }

  TEST_CASE("winding counts confirm ledger multiplicities") {
    for (const std::uint64_t seed : {2ull, 6ull, 12ull}) {
      const Potential v = Potential::random_ball(seed, 2, 3.0, 0.0);
      const EigenLedger led = eigen_zeta(v);
      CHECK(winding_count_disk(v, 0.9995) == led.total_multiplicity());
      for (const ZeroEntry& e : led.entries)
        CHECK(winding_order(v, Complex(e.zeta, 0.0), 1e-4) == e.mult);
    }
  }

  TEST_CASE("radial symmetry forces degenerate zeros") {
    // a strong shell at depth 2 binds one antisymmetric mode per depth-1
    // vertex, so the corresponding zero has multiplicity two
    const double prof[] = {0.0, 0.0, 3.0};
    const Potential v = Potential::radial(prof);
    const EigenLedger led = eigen_zeta(v);
    CHECK(led.total_multiplicity() > static_cast<int>(led.entries.size()));
    CHECK(winding_count_disk(v, 0.9995) == led.total_multiplicity());
  }

  TEST_CASE("sector reduction reproduces the dense truncation") {
    const Potential v = Potential::random_ball(4, 2, 3.0, 0.0);
    const auto fast = truncation_eigs(v, 8, 0.05);
    const auto dense = truncation_eigs_dense(v, 8, 0.05);
    REQUIRE(fast.size() == dense.size());
    for (std::size_t i = 0; i < fast.size(); ++i)
      CHECK(fast[i] == doctest::Approx(dense[i]).epsilon(1e-12));
  }

  TEST_CASE("depth ladder converges to the determinant zero") {
    Potential p;
    p.set({0, 1}, 2.5);  // x* = 2.5 + 0.8 = 3.3, comfortably outside
    const double star = 2.5 + 2.0 / 2.5;
    const auto ladder = truncation_eigs_extrapolated(p, 14, 8, 0.05);
    REQUIRE(ladder.size() == 1);
    CHECK(std::abs(ladder[0] - star) < 1e-9);
    const auto literal = truncation_eigs(p, 14, 0.05);
    REQUIRE(literal.size() == 1);
    CHECK(std::abs(ladder[0] - star) <= std::abs(literal[0] - star));
  }

  TEST_CASE("eigenvalue sums against frozen arithmetic") {
    Potential p;
    p.set({0, 1}, 2.0);  // single zero: zeta = sqrt2/2, x = 3
    const EigenLedger led = eigen_zeta(p);
    CHECK(ev_sum(led, 2.0) ==
          doctest::Approx(0.0294372515228594144).epsilon(1e-9));
    CHECK(ev_sum_disk(led, 5.0) ==
          doctest::Approx(0.00215549283788787489).epsilon(1e-9));
    const double one[] = {1.0};
    CHECK(ev_sum_functional(led, one) ==
          doctest::Approx(0.113705638880109381).epsilon(1e-8));

    Potential n;
    n.set({0, 1}, -3.0);  // x = -11/3, distance to the near edge
    CHECK(ev_sum(eigen_zeta(n), 1.0) ==
          doctest::Approx(0.838239541920476569).epsilon(1e-9));
  }

  TEST_CASE("subtree ledgers use subtree coordinates") {
    Potential v;
    v.set({1, 1}, 2.0);  // rank-one sitting at depth 1
    const EigenLedger led = eigen_zeta(v, {1, 1});
    REQUIRE(led.entries.size() == 1);
    CHECK(led.entries[0].x == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(led.subtree_root == Vertex{1, 1});
    // the full-tree ledger still sees it, shifted by nothing but geometry
    CHECK(eigen_zeta(v).total_multiplicity() == 1);
  }

  TEST_CASE("bracket study runs and is reproducible") {
    std::vector<double> prof;
    for (int k = 0; k <= 5; ++k) prof.push_back(3.0 * std::pow(2.0, -k));
    const Potential v = Potential::radial(prof);
    const int ns[] = {1, 2, 3, 4};
    const EvLimitStudy a = ev_limit_study(v, 2.5, ns);
    const EvLimitStudy b = ev_limit_study(v, 2.5, ns);
    REQUIRE(a.brackets.size() == 4);
    REQUIRE(a.diffs.size() == 3);
    for (std::size_t i = 0; i < a.brackets.size(); ++i)
      CHECK(a.brackets[i] == b.brackets[i]);
    for (std::size_t i = 0; i + 1 < a.diffs.size(); ++i)
      CHECK(std::abs(a.diffs[i + 1]) <= std::abs(a.diffs[i]) + 1e-12);
  }
}
