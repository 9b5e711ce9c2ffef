#pragma once
// Enumeration of plane graphs by gluing faces into holes, one transition at
// a time.
//
// A state of the search is a partially built plane graph: a valid plane
// graph whose faces each carry a complete/incomplete mark, with no two
// incomplete faces sharing an edge.  A transition picks an incomplete face
// (a hole) and glues a patch into it, adding one complete face and leaving
// one smaller or larger hole, or completing the hole outright.  States with
// every face complete are terminal.  Every plane graph within the vertex
// budget is reachable from the two-face initial states; pruning strategies
// cut branches that cannot lead to a tame terminal and branches whose
// terminals are also reached along other paths.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tame/planegraph.hpp"

namespace tame {

// --- States --------------------------------------------------------------

struct PartialPlaneGraph {
  PlaneGraph g;
  std::vector<bool> complete;  // one mark per face, true = complete

  bool terminal() const;       // every face complete
  int incomplete_count() const;
};

// Checks the underlying plane graph, that there is one mark per face, and
// that no two incomplete faces share an undirected edge.  Throws GraphError
// or std::invalid_argument on failure.
void validate_partial(const PartialPlaneGraph& s);

// State identity: the canonical code with the face marks riding along.
// Equal codes mean the marked graphs are properly or improperly isomorphic.
std::string partial_code(const PartialPlaneGraph& s);

// --- Patches and transitions ----------------------------------------------

// A patch is a small partial plane graph glued into a hole.  Two faces are
// distinguished: the gluing face f1 (incomplete; identified with the
// reversed hole and discarded by the gluing) and the complete face f2 that
// the transition contributes.  Every vertex lies on f1 or f2, f2 is the
// only complete face, f1 and f2 share at least one edge, and every vertex
// of f2 not on f1 has degree 2.
struct Patch {
  PartialPlaneGraph p;
  int f1 = 0;
  int f2 = 1;
};

// Throws std::invalid_argument if the conditions above fail.
void validate_patch(const Patch& patch);

// The patch whose gluing face has length n and whose complete face has
// length m, the two sharing an arc of k consecutive vertices.  n == m == k
// builds the completing patch (two faces, no leftover hole); otherwise
// 2 <= k <= min(n, m) and the leftover hole has length n + m - 2k + 2 >= 3.
// The gluing face is the cycle (0, 1, ..., n-1), the shared arc covers
// vertices 0..k-1, and the m - k fresh vertices are numbered from n.
// Throws std::invalid_argument outside these ranges.
Patch make_patch(int n, int m, int k);

// Every patch for a hole of length n: the completing patch first (when
// n <= max_face_len), then make_patch(n, m, k) for m <= max_face_len and
// m - k <= new_vertex_budget in lexicographic (m, k) order.
std::vector<Patch> patches_for(int n, int max_face_len, int new_vertex_budget);

// A transition glues `patch` into the incomplete face `face` of a state.
// phi in [0, n) selects one of the n proper identifications of the gluing
// face with the reversed hole: gluing-face position j lands on hole
// position (n - 1 - j - phi) mod n.  Under identification phi the shared
// arc of make_patch(n, m, k) covers hole positions s, ..., s + k - 1
// (cyclically) where s = (n - k - phi) mod n.
struct Transition {
  Patch patch;
  int face = 0;
  int phi = 0;
};

struct PatchError : std::runtime_error {
  enum Kind {
    kLengthMismatch,        // gluing face and hole have different lengths
    kVertexBudgetExceeded,  // glued graph would exceed max_vertices
    kInvariantViolated,     // gluing does not produce a valid partial graph
  };
  Kind kind;
  PatchError(Kind k, const std::string& msg);
};

// Glues `patch` into the incomplete face `face` of s under identification
// phi.  Fresh patch vertices are numbered from s.g.nv; the hole face and
// the gluing face cancel, and every other face of s and of the patch
// survives with its mark.  max_vertices > 0 bounds the vertex count of the
// result.  Throws PatchError on length mismatch, budget overflow, or an
// invalid glued graph (for example a duplicated edge), and
// std::invalid_argument for misuse: face index out of range, face already
// complete, or phi outside [0, n).
PartialPlaneGraph apply_patch(const PartialPlaneGraph& s, int face,
                              const Patch& patch, int phi,
                              int max_vertices = 0);

// --- Search configuration --------------------------------------------------

// Pruning strategies, each independently togglable:
//   triangle   an incomplete triangle admits only its completion (except
//              in two-face states, whose hole may still be subdivided)
//   face-len   added complete faces have length <= max_face_len
//   d-sum      drop states whose complete faces already squander too much
//   fix-edge   patch one fixed hole, arc through one fixed edge of it
//   added-len  downstream of the seed I_n, add only faces of length <= n
//   seeds      replace I_3/I_4 by wheel seeds around a finished vertex, in
//              a fixed linear order on vertex types; drop transitions that
//              finish a vertex of an earlier tabulated type
struct EnumConfig {
  int max_vertices = 8;
  int max_face_len = 8;    // complete-face length cap (4 = triangle/quad)
  bool prune_triangle = true;
  bool prune_face_len = true;
  bool prune_dsum = true;
  bool prune_fix_edge = true;
  bool prune_added_len = true;
  bool prune_seeds = true;
  bool tame_filter = true;  // keep only tame terminals
  long max_states = 0;      // explored-state budget, 0 = unlimited
  bool parallel = false;
  // Linear order on pure vertex types for the seeds strategy; empty means
  // the (p, q) rows of the squander table in row-major order.
  std::vector<std::pair<int, int>> seed_order;
  std::string archive_path;

  // Per-seed context, set internally by enumerate_tame: the added-face
  // length cap of the current seed and its rank in seed_order (-1 = none).
  int seed_face_cap = 0;
  int seed_rank = -1;
};

// Names accepted by set_prune, in the order listed above.
std::vector<std::string> prune_strategy_names();

// Toggles one strategy by name; returns false for an unknown name.
bool set_prune(EnumConfig& config, const std::string& name, bool enabled);

// --- Initial states ---------------------------------------------------------

struct Seed {
  PartialPlaneGraph state;
  std::string name;   // "I_5", "I_{2,2}'", ...
  int face_cap = 0;   // added-len cap downstream of this seed (0 = none)
  int rank = -1;      // position in the seed order (-1 = not a wheel seed)
};

// The start states of the search.  Always lists the two-face states I_n
// (one complete n-gon against its reversed incomplete copy) for
// 3 <= n <= min(max_vertices, face cap).  With the seeds strategy on, also
// lists one wheel state per arrangement of each vertex type in the seed
// order: p triangles and q quadrilaterals around a finished hub, the outer
// face incomplete.  Arrangements of the same type are distinct up to
// rotation and reflection; wheels needing more than max_vertices vertices
// are skipped.
std::vector<PartialPlaneGraph> initial_states(const EnumConfig& config);

// The seeds enumerate_tame actually explores.  Matches initial_states,
// except that with the seeds strategy on, I_3 and I_4 are dropped: every
// tame terminal reachable from them contains a finished vertex of some
// tabulated type, so it is also reached from that type's wheel seed.
std::vector<Seed> initial_seeds(const EnumConfig& config);

// --- Transitions and enumeration --------------------------------------------

// The transitions out of s under the configured pruning strategies, in a
// fixed deterministic order.  A non-completing patch appears once per
// admissible identification phi; the completing patch appears once, since
// all its identifications produce the same state.  Candidates whose gluing
// fails (duplicate edge) are dropped.  Terminal states have none.
std::vector<Transition> transitions(const PartialPlaneGraph& s,
                                    const EnumConfig& config);

struct Archive {
  std::vector<PlaneGraph> graphs;  // sorted by canonical code
  std::vector<std::string> codes;  // canonical codes, same order
  bool complete = true;            // false if max_states cut the search
  long states_explored = 0;
  long transitions_applied = 0;
  long terminals_seen = 0;         // terminal states before deduplication
};

// Runs the search from initial_seeds(config) to exhaustion (or until
// max_states), deduplicating states by partial_code per seed and terminals
// by canonical code globally, then keeps the tame terminals (all terminals
// if tame_filter is off).  Deterministic: the archive is identical for
// serial and parallel runs of the same configuration.
Archive enumerate_tame(const EnumConfig& config);

// One graph per line, sorted by canonical code, preceded by '#' header
// lines (graph count, and an INCOMPLETE marker if the state budget cut the
// search short).  read_archive_text parses it back.
std::string format_archive(const Archive& archive);

// --- Archive comparison ------------------------------------------------------

struct ArchiveDiff {
  std::vector<std::string> missing;  // codes in reference only
  std::vector<std::string> extra;    // codes in generated only
  bool match() const { return missing.empty() && extra.empty(); }
};

// Compares two graph sets by canonical code.  With cross_check set, also
// confirms every verdict with the search-based isomorphism matcher: codes
// that agree must be isomorphic graphs, and codes missing on one side must
// have no isomorphic partner on the other; a disagreement throws
// std::runtime_error.
ArchiveDiff archive_match(const std::vector<PlaneGraph>& generated,
                          const std::vector<PlaneGraph>& reference,
                          bool cross_check = false);

}  // namespace tame
