// Rooted binary tree addressing.
//
// Vertices are (depth, index) with index 1..2^depth inside the shell.
// Linear ids enumerate the ball row by row: id = 2^depth - 1 + (index - 1),
// so the root is 0, children of id i are 2i+1 and 2i+2, parent is (i-1)/2.
// A ball of depth D holds 2^(D+1) - 1 vertices.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace bethe {

// depths beyond this overflow the linear id space long before memory does
inline constexpr int kMaxDepth = 48;

struct Vertex {
  int depth = 0;
  std::uint64_t index = 1;  // 1-based within the shell

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

std::uint64_t ball_size(int depth);
std::uint64_t shell_size(int depth);

std::uint64_t linear_id(Vertex v);
Vertex vertex_of(std::uint64_t id);

Vertex root_vertex();
Vertex parent(Vertex v);
std::array<Vertex, 2> children(Vertex v);

// ancestor of v at the given shallower (or equal) depth
Vertex ancestor_at(Vertex v, int depth);
bool is_ancestor(Vertex a, Vertex v);  // a == v counts

// root, ..., y (length |y|+1)
std::vector<Vertex> path_from_root(Vertex y);

// Off-path frontier of y: for each strict ancestor the child not on the
// path, plus both children of y itself. Size |y|+2, ordered by depth.
std::vector<Vertex> frontier(Vertex y);

// T_x is canonically a copy of the whole tree; these translate coordinates.
Vertex subtree_to_global(Vertex x, Vertex local);
Vertex global_to_subtree(Vertex x, Vertex global);

}  // namespace bethe
