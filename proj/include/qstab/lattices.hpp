#pragma once

// Small test surfaces: the tetrahedron (sphere), the 2x2 square torus and
// the one-vertex genus-2 surface.

#include "qstab/kitaev.hpp"

namespace qstab::lattices {

/// Faces are listed counterclockwise seen from outside.
inline SurfaceGraph tetrahedron() {
  SurfaceGraph g;
  g.vertices = {0, 1, 2, 3};
  g.edges = {{0, 0, 1}, {1, 0, 2}, {2, 0, 3}, {3, 1, 2}, {4, 2, 3}, {5, 3, 1}};
  const auto L = Side::Left, R = Side::Right;
  g.faces = {
      {{3, L}, {1, R}, {0, L}},  // 1 2 0
      {{4, L}, {2, R}, {1, L}},  // 2 3 0
      {{5, L}, {0, R}, {2, L}},  // 3 1 0
      {{5, R}, {4, R}, {3, R}},  // 1 3 2
  };
  return g;
}

/// Vertex (i, j) has id 2i + j. Edge 4i + j runs east from (i, j), edge
/// 4i + 2 + j runs north from (i, j); face 2i + j has (i, j) as its
/// south-west corner.
inline SurfaceGraph torus_2x2() {
  SurfaceGraph g;
  auto vid = [](Int i, Int j) { return 2 * mod(i, 2) + mod(j, 2); };
  auto east = [](Int i, Int j) { return 4 * mod(i, 2) + mod(j, 2); };
  auto north = [](Int i, Int j) { return 4 * mod(i, 2) + 2 + mod(j, 2); };
  for (Int v = 0; v < 4; ++v) g.vertices.push_back(v);
  for (Int i = 0; i < 2; ++i) {
    for (Int j = 0; j < 2; ++j) g.edges.push_back({east(i, j), vid(i, j), vid(i, j + 1)});
    for (Int j = 0; j < 2; ++j) g.edges.push_back({north(i, j), vid(i, j), vid(i + 1, j)});
  }
  for (Int i = 0; i < 2; ++i)
    for (Int j = 0; j < 2; ++j)
      g.faces.push_back({{east(i, j), Side::Left},
                         {north(i, j + 1), Side::Left},
                         {east(i + 1, j), Side::Right},
                         {north(i, j), Side::Right}});
  return g;
}

/// One vertex, four loops a b c d and one face a b a^-1 b^-1 c d c^-1 d^-1.
inline SurfaceGraph genus2_one_vertex() {
  SurfaceGraph g;
  g.vertices = {0};
  for (Int e = 0; e < 4; ++e) g.edges.push_back({e, 0, 0});
  const auto L = Side::Left, R = Side::Right;
  g.faces = {{{0, L}, {1, L}, {0, R}, {1, R}, {2, L}, {3, L}, {2, R}, {3, R}}};
  return g;
}

}  // namespace qstab::lattices
