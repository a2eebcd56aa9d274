#include <doctest.h>

#include <set>

#include "bethe/tree.hpp"

using namespace bethe;

TEST_SUITE("tree") {
  TEST_CASE("ball and shell sizes") {
    CHECK(ball_size(0) == 1);
    CHECK(ball_size(1) == 3);
    CHECK(ball_size(3) == 15);
    CHECK(ball_size(10) == 2047);
    CHECK(shell_size(0) == 1);
    CHECK(shell_size(5) == 32);
  }

  TEST_CASE("linear ids walk the ball row by row") {
    CHECK(linear_id({0, 1}) == 0);
    CHECK(linear_id({1, 1}) == 1);
    CHECK(linear_id({1, 2}) == 2);
    CHECK(linear_id({2, 1}) == 3);
    CHECK(linear_id({3, 5}) == 11);

    // round trip over a full ball
    for (std::uint64_t id = 0; id < ball_size(8); ++id)
      CHECK(linear_id(vertex_of(id)) == id);
  }

  TEST_CASE("heap parent and child relations") {
    for (std::uint64_t id = 0; id < ball_size(6); ++id) {
      const Vertex v = vertex_of(id);
      const auto kids = children(v);
      CHECK(linear_id(kids[0]) == 2 * id + 1);
      CHECK(linear_id(kids[1]) == 2 * id + 2);
      CHECK(parent(kids[0]) == v);
      CHECK(parent(kids[1]) == v);
      if (id > 0) CHECK(linear_id(parent(v)) == (id - 1) / 2);
    }
  }

  TEST_CASE("ancestors and paths") {
    const Vertex y{5, 19};
    const auto path = path_from_root(y);
    REQUIRE(path.size() == 6);
    CHECK(path.front() == root_vertex());
    CHECK(path.back() == y);
    for (std::size_t k = 1; k < path.size(); ++k) {
      CHECK(parent(path[k]) == path[k - 1]);
      CHECK(ancestor_at(y, static_cast<int>(k)) == path[k]);
      CHECK(is_ancestor(path[k - 1], y));
    }
    CHECK(is_ancestor(y, y));
    CHECK(!is_ancestor(Vertex{1, 1}, y));  // y descends from (1,2): 19 > 16
  }

  TEST_CASE("frontier partitions the ball minus the path") {
    const Vertex y{3, 6};
    const auto fr = frontier(y);
    REQUIRE(fr.size() == 5);  // one per strict ancestor + both children

    // every frontier vertex hangs off the path but is not on it
    const auto path = path_from_root(y);
    std::set<std::uint64_t> on_path;
    for (const Vertex p : path) on_path.insert(linear_id(p));
    for (const Vertex f : fr) {
      CHECK(on_path.count(linear_id(f)) == 0);
      CHECK(on_path.count(linear_id(parent(f))) == 1);
    }

    // subtree sizes of the frontier cover the depth-7 ball minus the path
    const int D = 7;
    std::uint64_t covered = 0;
    for (const Vertex f : fr) covered += ball_size(D - f.depth);
    CHECK(covered == ball_size(D) - path.size());
  }

  TEST_CASE("subtree coordinates round trip") {
    const Vertex x{2, 3};
    CHECK(subtree_to_global(x, root_vertex()) == x);
    for (std::uint64_t id = 0; id < ball_size(4); ++id) {
      const Vertex local = vertex_of(id);
      const Vertex global = subtree_to_global(x, local);
      CHECK(global.depth == x.depth + local.depth);
      CHECK(is_ancestor(x, global));
      CHECK(global_to_subtree(x, global) == local);
    }
  }
}
