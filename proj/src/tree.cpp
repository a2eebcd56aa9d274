#include "bethe/tree.hpp"

#include <stdexcept>

namespace bethe {

namespace {
void check_vertex(Vertex v) {
  if (v.depth < 0 || v.depth > kMaxDepth)
    throw std::invalid_argument("vertex depth out of range");
  if (v.index < 1 || v.index > (std::uint64_t{1} << v.depth))
    throw std::invalid_argument("vertex index out of range for its shell");
}
}  // namespace

std::uint64_t ball_size(int depth) {
  if (depth < 0 || depth > kMaxDepth)
    throw std::invalid_argument("ball depth out of range");
  return (std::uint64_t{2} << depth) - 1;
}

std::uint64_t shell_size(int depth) {
  if (depth < 0 || depth > kMaxDepth)
    throw std::invalid_argument("shell depth out of range");
  return std::uint64_t{1} << depth;
}

std::uint64_t linear_id(Vertex v) {
  check_vertex(v);
  return (std::uint64_t{1} << v.depth) - 1 + (v.index - 1);
}

Vertex vertex_of(std::uint64_t id) {
  int d = 0;
  while ((std::uint64_t{2} << d) - 1 <= id) ++d;
  return Vertex{d, id - ((std::uint64_t{1} << d) - 1) + 1};
}

Vertex root_vertex() { return Vertex{0, 1}; }

Vertex parent(Vertex v) {
  check_vertex(v);
  if (v.depth == 0) throw std::invalid_argument("root has no parent");
  return Vertex{v.depth - 1, (v.index + 1) / 2};
}

std::array<Vertex, 2> children(Vertex v) {
  check_vertex(v);
  if (v.depth >= kMaxDepth) throw std::invalid_argument("child depth overflow");
  return {Vertex{v.depth + 1, 2 * v.index - 1}, Vertex{v.depth + 1, 2 * v.index}};
}

Vertex ancestor_at(Vertex v, int depth) {
  check_vertex(v);
  if (depth < 0 || depth > v.depth)
    throw std::invalid_argument("ancestor depth must be in [0, |v|]");
  return Vertex{depth, ((v.index - 1) >> (v.depth - depth)) + 1};
}

bool is_ancestor(Vertex a, Vertex v) {
  check_vertex(a);
  check_vertex(v);
  return a.depth <= v.depth && ancestor_at(v, a.depth) == a;
}

std::vector<Vertex> path_from_root(Vertex y) {
  check_vertex(y);
  std::vector<Vertex> out;
  out.reserve(y.depth + 1);
  for (int d = 0; d <= y.depth; ++d) out.push_back(ancestor_at(y, d));
  return out;
}

std::vector<Vertex> frontier(Vertex y) {
  check_vertex(y);
  std::vector<Vertex> out;
  out.reserve(y.depth + 2);
  for (int d = 0; d < y.depth; ++d) {
    Vertex p = ancestor_at(y, d);
    Vertex on_path = ancestor_at(y, d + 1);
    auto [c0, c1] = children(p);
    out.push_back(on_path == c0 ? c1 : c0);
  }
  auto [c0, c1] = children(y);
  out.push_back(c0);
  out.push_back(c1);
  return out;
}

Vertex subtree_to_global(Vertex x, Vertex local) {
  check_vertex(x);
  check_vertex(local);
  if (x.depth + local.depth > kMaxDepth)
    throw std::invalid_argument("combined depth overflow");
  return Vertex{x.depth + local.depth,
                ((x.index - 1) << local.depth) + local.index};
}

Vertex global_to_subtree(Vertex x, Vertex global) {
  if (!is_ancestor(x, global))
    throw std::invalid_argument("vertex is not below the subtree root");
  int d = global.depth - x.depth;
  return Vertex{d, global.index - ((x.index - 1) << d)};
}

}  // namespace bethe
