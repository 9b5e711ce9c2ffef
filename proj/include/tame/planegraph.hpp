#pragma once
// Plane graphs as finite sets of oriented face cycles.
//
// A plane graph here is the combinatorial datum used throughout the toolkit:
// a set of faces, each a cyclic list of distinct vertices, such that every
// directed edge (v, w) appears in exactly one face, its reversal appears in
// exactly one face, the faces around each vertex form a single cyclic orbit,
// and Euler's relation V - E + F = 2 holds.  Vertex ids are dense, 0-based
// ints.  Faces are oriented; reversing every face yields the opposite graph.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tame {

using Face = std::vector<int>;

struct PlaneGraph {
  int nv = 0;                // vertices are 0..nv-1
  std::vector<Face> faces;

  int ne() const;            // undirected edge count
};

struct GraphError : std::runtime_error {
  enum Kind {
    kBadFace,         // face too short, repeated vertex, bad vertex id
    kEdgeNotPaired,   // a directed edge missing or duplicated
    kBadVertexOrbit,  // faces at a vertex do not form one cycle
    kEulerViolation,  // V - E + F != 2
  };
  Kind kind;
  GraphError(Kind kind, const std::string& msg);
};

// Build a graph from face cycles and check every plane-graph axiom.
PlaneGraph make_plane_graph(std::vector<Face> faces);
// Re-check an existing graph (used after surgery in the enumerator).
void validate_plane_graph(const PlaneGraph& g);

// The same sphere with reversed orientation: every face cycle reversed.
PlaneGraph opposite(const PlaneGraph& g);

// Number of faces containing v.
int degree(const PlaneGraph& g, int v);

// Vertex environment: p triangles, q quadrilaterals, r larger faces.
struct VertexType {
  int p = 0, q = 0, r = 0;
  bool operator==(const VertexType&) const = default;
};
VertexType vertex_type(const PlaneGraph& g, int v);

// Faces incident to each vertex, ordered by the vertex orbit (the rotation
// around the vertex).  rotation[v][i] is a face index; the successor of v in
// that face is the i-th neighbor of v in cyclic order.
std::vector<std::vector<int>> vertex_rotations(const PlaneGraph& g);

// A simple cycle of length `verts.size()` in the underlying graph, together
// with the two sets of faces it separates (Jordan decomposition).  sides[0]
// contains the face with the smallest index.
struct Circuit {
  std::vector<int> verts;
  std::array<std::vector<int>, 2> sides;
};

// All circuits of length exactly `len`, deduplicated up to rotation and
// reflection.  Deterministic order.
std::vector<Circuit> circuits(const PlaneGraph& g, int len);

// Vertices not on the circuit that lie on faces of the given side.
std::vector<int> enclosed_vertices(const PlaneGraph& g, const Circuit& c,
                                   int side);

// Canonical form.  The code is the lexicographically least serialization of
// the face list over all relabelings induced by growing a breadth-first
// numbering from every directed edge, in both orientations.  Two graphs have
// equal codes iff they are properly or improperly isomorphic.  `proper` says
// whether the original orientation attains the minimum.
//
// When `marks` is given (one flag per face, true = complete), the flags ride
// along with the faces, so partially built graphs canonicalize too.
struct CanonicalCode {
  std::string code;
  bool proper = true;
  bool operator==(const CanonicalCode& o) const { return code == o.code; }
};
CanonicalCode canonical_code(const PlaneGraph& g,
                             const std::vector<bool>* marks = nullptr);

bool isomorphic(const PlaneGraph& a, const PlaneGraph& b);

// Independent isomorphism test by invariant refinement plus backtracking
// vertex matching; kept as a cross-check for the canonical code.
bool isomorphic_search(const PlaneGraph& a, const PlaneGraph& b);

// --- Text format -----------------------------------------------------------
//
// One graph per line: faces separated by ';', each face a space-separated
// list of 0-based vertex indices in cyclic order.  '#' starts a comment line.
// Archive files keep one graph per line, sorted by canonical code.

std::string format_graph(const PlaneGraph& g);
PlaneGraph parse_graph(const std::string& line);

// Read every graph line from archive text; on error, the exception names the
// 1-based line number.
std::vector<PlaneGraph> read_archive_text(const std::string& text);
std::vector<PlaneGraph> read_archive_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tame
