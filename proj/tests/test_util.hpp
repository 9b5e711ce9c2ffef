#pragma once
// Shared helpers for the test binaries: fixture graphs with known structure
// and small utilities.  Fixtures are written out longhand so the tests do not
// depend on the code they are testing.

#include <cstdlib>
#include <string>
#include <vector>

#include "tame/planegraph.hpp"

namespace tame::testutil {

// Regular tetrahedron: 4 triangles.
inline std::vector<Face> tetrahedron_faces() {
  return {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
}

// Octahedron: 8 triangles, every vertex of degree 4.
inline std::vector<Face> octahedron_faces() {
  // Poles 0 and 5, equator 1 2 3 4.
  return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
          {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
}

// Cube: 6 quadrilaterals.
inline std::vector<Face> cube_faces() {
  return {{0, 1, 2, 3}, {0, 4, 5, 1}, {1, 5, 6, 2},
          {2, 6, 7, 3}, {3, 7, 4, 0}, {7, 6, 5, 4}};
}

// Cuboctahedron: 8 triangles + 6 squares, every vertex of type (2, 2),
// faces alternating triangle/square around every vertex.  Built as two
// triangular cupolas on a hexagonal ring with a twist (gyro) between them.
inline std::vector<Face> cuboctahedron_faces() {
  // Top triangle 0 1 2, hexagonal ring 3..8, bottom triangle 9 10 11;
  // bottom cupola feet shifted one ring step relative to the top cupola.
  return {
      {0, 1, 2},                                  // top cap
      {0, 3, 4, 1}, {1, 5, 6, 2}, {2, 7, 8, 0},   // upper squares
      {1, 4, 5}, {2, 6, 7}, {0, 8, 3},            // upper triangles
      {9, 5, 4}, {10, 7, 6}, {11, 3, 8},          // lower triangles (gyro)
      {9, 10, 6, 5}, {10, 11, 8, 7}, {11, 9, 4, 3},  // lower squares
      {11, 10, 9},                                // bottom cap
  };
}

// Hexagonal-close-packing kissing graph: 8 triangles + 6 squares, the twist
// of the cuboctahedron (triangular orthobicupola).  Not isomorphic to the
// cuboctahedron although every vertex has type (2, 2).
inline std::vector<Face> hcp_kissing_faces() {
  // Top triangle 0 1 2, hexagonal ring 3..8, bottom triangle 9 10 11.
  // Upper cupola: triangles on top-triangle edges alternate with squares.
  return {
      {0, 1, 2},                                  // top cap
      {0, 3, 4, 1}, {1, 5, 6, 2}, {2, 7, 8, 0},   // upper squares
      {1, 4, 5}, {2, 6, 7}, {0, 8, 3},            // upper triangles
      {9, 4, 3}, {10, 6, 5}, {11, 8, 7},          // lower triangles (ortho)
      {9, 10, 5, 4}, {10, 11, 7, 6}, {11, 9, 3, 8},  // lower squares
      {11, 10, 9},                                // bottom cap
  };
}

// Pentagonal prism kissing graph: 10 triangles + 5 squares, 12 vertices
// (two poles, two aligned pentagonal rings).
inline std::vector<Face> pentprism_faces() {
  // North pole 0, ring a = 1..5, ring b = 6..10, south pole 11.
  std::vector<Face> f;
  for (int i = 0; i < 5; ++i) {
    int a = 1 + i, a2 = 1 + (i + 1) % 5;
    int b = 6 + i, b2 = 6 + (i + 1) % 5;
    f.push_back({0, a, a2});          // north triangles
    f.push_back({a, b, b2, a2});      // prism band squares
    f.push_back({11, b2, b});         // south triangles
  }
  return f;
}

// Icosahedron: 20 triangles, every vertex of type (5, 0).
inline std::vector<Face> icosahedron_faces() {
  // Pole 0, upper ring 1..5, lower ring 6..10, pole 11.
  std::vector<Face> f;
  for (int i = 0; i < 5; ++i) {
    int a = 1 + i, a2 = 1 + (i + 1) % 5;
    int b = 6 + i, b2 = 6 + (i + 1) % 5;
    f.push_back({0, a, a2});
    f.push_back({a, b, a2});      // antiprism band, pointing down
    f.push_back({a2, b, b2});     // antiprism band, pointing up
    f.push_back({11, b2, b});
  }
  return f;
}

// Pentagonal antiprism: 10 triangles + 2 pentagons (10 vertices).
inline std::vector<Face> pentantiprism_faces() {
  std::vector<Face> f;
  f.push_back({0, 1, 2, 3, 4});
  f.push_back({9, 8, 7, 6, 5});
  for (int i = 0; i < 5; ++i) {
    int a = i, a2 = (i + 1) % 5;
    int b = 5 + i, b2 = 5 + (i + 1) % 5;
    f.push_back({a2, a, b});
    f.push_back({a2, b, b2});
  }
  return f;
}

// Square antiprism: 8 triangles + 2 squares.
inline std::vector<Face> squareantiprism_faces() {
  std::vector<Face> f;
  f.push_back({0, 1, 2, 3});
  f.push_back({7, 6, 5, 4});
  for (int i = 0; i < 4; ++i) {
    int a = i, a2 = (i + 1) % 4;
    int b = 4 + i, b2 = 4 + (i + 1) % 4;
    f.push_back({a2, a, b});
    f.push_back({a2, b, b2});
  }
  return f;
}

// Environment-provided paths (set by ctest).
inline std::string data_dir() {
  const char* p = std::getenv("TAME_DATA_DIR");
  return p ? p : "data";
}
inline std::string cli_path() {
  const char* p = std::getenv("TAME_CLI");
  return p ? p : "";
}

}  // namespace tame::testutil
