#include <doctest.h>

#include <cmath>

#include "bethe/resolvent.hpp"

using namespace bethe;

TEST_SUITE("resolvent") {
  TEST_CASE("ball adjacency degrees") {
    const auto A = ball_adjacency(4);
    REQUIRE(A.rows() == 31);
    CHECK(A.row(0).sum() == 2.0);            // root
    CHECK(A.row(5).sum() == 3.0);            // interior
    CHECK(A.row(30).sum() == 1.0);           // leaf
    CHECK((A - A.transpose()).norm() == 0.0);
  }

  TEST_CASE("free Green entries: dual routes agree") {
    const Complex zetas[] = {{0.4, 0.3}, {-0.55, 0.2}, {0.1, -0.7}};
    for (const Complex zeta : zetas) {
      const auto G = green_ball(Potential{}, 5, zeta);
      const Vertex pts[] = {{0, 1}, {1, 2}, {2, 3}, {3, 7}, {4, 4}};
      for (const Vertex a : pts)
        for (const Vertex b : pts) {
          const Complex direct = free_green_entry(a, b, zeta);
          const Complex dense = G(linear_id(a), linear_id(b));
          CHECK(std::abs(direct - dense) < 1e-12);
        }
    }
  }

  TEST_CASE("forward m value matches the root Green function") {
    const Complex zeta(0.35, 0.4);
    CHECK(std::abs(forward_m(zeta) - Complex(-zeta.real() / kSqrt2,
                                             -zeta.imag() / kSqrt2)) <
          1e-15);
    const MValue mv = m_function(Potential{}, zeta);
    CHECK(std::abs(mv.M + free_green_entry({0, 1}, {0, 1}, zeta)) < 1e-13);
  }

  TEST_CASE("boundary density is nonnegative on the upper arc") {
    const Potential v = Potential::random_ball(3, 2, 2.5, 0.0);
    for (int j = 1; j <= 15; ++j) {
      const double th = j * kPi / 16.0;
      const MValue mv = m_function(v, Complex(std::cos(th), std::sin(th)));
      CHECK(mv.im_density >= -1e-12);
      CHECK(mv.im_density == mv.M.imag());
    }
  }

  TEST_CASE("free Jost column decays geometrically") {
    const Complex zeta(0.52, -0.33);
    const auto f = jost_vector(Potential{}, zeta, 5);
    const Complex step = zeta / kSqrt2;
    for (const Vertex y : {Vertex{0, 1}, Vertex{1, 2}, Vertex{3, 5},
                           Vertex{4, 11}}) {
      const Complex expect = -std::pow(step, y.depth + 1);
      CHECK(std::abs(f(linear_id(y)) - expect) < 1e-12);
    }
  }

  TEST_CASE("resolvent entries are depth independent once support fits") {
    const Potential v = Potential::random_ball(9, 2, 2.0, 0.0);
    const Complex zeta(0.3, 0.5);
    const auto g7 = green_ball(v, 7, zeta);
    const auto g8 = green_ball(v, 8, zeta);
    for (const Vertex y : {Vertex{0, 1}, Vertex{2, 2}, Vertex{5, 17}}) {
      CHECK(std::abs(g7(0, linear_id(y)) - g8(0, linear_id(y))) < 1e-12);
      CHECK(std::abs(g7(linear_id(y), linear_id(y)) -
                     g8(linear_id(y), linear_id(y))) < 1e-12);
    }
  }
}
