// Finite-state enumeration of plane graphs by face patching.  States are
// partially built plane graphs, transitions glue a patch into one incomplete
// face, and terminal states (every face complete) are collected into an
// archive, optionally filtered down to the tame ones.

#include "tame/enumerate.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>
#include <utility>

#include "tame/constants.hpp"
#include "tame/weightlp.hpp"

namespace tame {

namespace {

int imod(int a, int n) { return ((a % n) + n) % n; }

std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

// --- States ------------------------------------------------------------

bool PartialPlaneGraph::terminal() const {
  return std::find(complete.begin(), complete.end(), false) == complete.end();
}

int PartialPlaneGraph::incomplete_count() const {
  return static_cast<int>(std::count(complete.begin(), complete.end(), false));
}

void validate_partial(const PartialPlaneGraph& s) {
  validate_plane_graph(s.g);
  if (s.complete.size() != s.g.faces.size())
    throw std::invalid_argument("partial graph: need one mark per face");
  // No undirected edge may lie on two incomplete faces.
  std::unordered_set<std::uint64_t> open_edges;
  for (std::size_t i = 0; i < s.g.faces.size(); ++i) {
    if (s.complete[i]) continue;
    const Face& f = s.g.faces[i];
    for (std::size_t j = 0; j < f.size(); ++j) {
      int u = f[j];
      int v = f[(j + 1) % f.size()];
      if (!open_edges.insert(edge_key(u, v)).second)
        throw std::invalid_argument(
            "partial graph: two incomplete faces share an edge");
    }
  }
}

std::string partial_code(const PartialPlaneGraph& s) {
  return canonical_code(s.g, &s.complete).code;
}

// --- Patches -------------------------------------------------------------

void validate_patch(const Patch& patch) {
  const PartialPlaneGraph& p = patch.p;
  int nf = static_cast<int>(p.g.faces.size());
  if (patch.f1 < 0 || patch.f1 >= nf || patch.f2 < 0 || patch.f2 >= nf ||
      patch.f1 == patch.f2)
    throw std::invalid_argument("patch: bad distinguished face indices");
  // The gluing face may share edges with the leftover hole -- it is
  // discarded at gluing -- so a patch is checked as a plane graph with
  // marks, not as a search state.
  validate_plane_graph(p.g);
  if (p.complete.size() != p.g.faces.size())
    throw std::invalid_argument("patch: need one mark per face");
  if (p.complete[patch.f1])
    throw std::invalid_argument("patch: gluing face must be incomplete");
  if (!p.complete[patch.f2])
    throw std::invalid_argument("patch: added face must be complete");
  if (std::count(p.complete.begin(), p.complete.end(), true) != 1)
    throw std::invalid_argument("patch: exactly one complete face allowed");
  const Face& f1 = p.g.faces[patch.f1];
  const Face& f2 = p.g.faces[patch.f2];
  std::vector<char> on_f1(p.g.nv, 0), on_f2(p.g.nv, 0);
  for (int v : f1) on_f1[v] = 1;
  for (int v : f2) on_f2[v] = 1;
  for (int v = 0; v < p.g.nv; ++v)
    if (!on_f1[v] && !on_f2[v])
      throw std::invalid_argument(
          "patch: every vertex must lie on the gluing or the added face");
  std::set<std::uint64_t> f1_edges;
  for (std::size_t j = 0; j < f1.size(); ++j)
    f1_edges.insert(edge_key(f1[j], f1[(j + 1) % f1.size()]));
  bool shared = false;
  for (std::size_t j = 0; j < f2.size() && !shared; ++j)
    shared = f1_edges.count(edge_key(f2[j], f2[(j + 1) % f2.size()])) > 0;
  if (!shared)
    throw std::invalid_argument(
        "patch: gluing and added faces must share an edge");
  for (int v = 0; v < p.g.nv; ++v)
    if (on_f2[v] && !on_f1[v] && degree(p.g, v) != 2)
      throw std::invalid_argument(
          "patch: fresh vertices of the added face must have degree 2");
}

Patch make_patch(int n, int m, int k) {
  if (n < 3 || m < 3)
    throw std::invalid_argument("patch: face lengths must be at least 3");
  std::vector<Face> faces;
  if (n == m && m == k) {
    // Completing patch: the added face is the whole reversed hole.
    Face f1(n), f2(n);
    std::iota(f1.begin(), f1.end(), 0);
    for (int j = 0; j < n; ++j) f2[j] = n - 1 - j;
    faces = {f1, f2};
  } else {
    if (k < 2 || k > std::min(n, m))
      throw std::invalid_argument(
          "patch: shared arc must cover 2..min(n, m) vertices");
    if (n + m - 2 * k + 2 < 3)
      throw std::invalid_argument("patch: leftover hole shorter than 3");
    Face f1(n);
    std::iota(f1.begin(), f1.end(), 0);
    Face f2;  // arc reversed, then the fresh chain
    for (int j = k - 1; j >= 0; --j) f2.push_back(j);
    for (int j = 0; j < m - k; ++j) f2.push_back(n + j);
    Face f3;  // leftover hole: reverses of the fresh chain and the non-arc
    f3.push_back(k - 1);
    for (int j = m - k - 1; j >= 0; --j) f3.push_back(n + j);
    f3.push_back(0);
    for (int j = n - 1; j >= k; --j) f3.push_back(j);
    faces = {f1, f2, f3};
  }
  Patch out;
  out.p.g = make_plane_graph(std::move(faces));
  out.p.complete.assign(out.p.g.faces.size(), false);
  out.p.complete[1] = true;
  out.f1 = 0;
  out.f2 = 1;
  validate_patch(out);
  return out;
}

namespace {

struct PatchShape {
  bool completing = false;
  int m = 0;
  int k = 0;
};

std::vector<PatchShape> patch_shapes(int n, int max_face_len,
                                     int new_vertex_budget) {
  std::vector<PatchShape> out;
  if (n <= max_face_len) out.push_back({true, n, n});
  for (int m = 3; m <= max_face_len; ++m)
    for (int k = 2; k <= std::min(n, m); ++k) {
      if (n == m && k == n) continue;  // the completing patch, listed above
      if (n + m - 2 * k + 2 < 3) continue;
      if (m - k > new_vertex_budget) continue;
      out.push_back({false, m, k});
    }
  return out;
}

// Patch construction is pure in (n, m, k); transitions reuse shapes heavily.
const Patch& cached_patch(int n, int m, int k) {
  thread_local std::map<std::tuple<int, int, int>, Patch> cache;
  auto key = std::make_tuple(n, m, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_patch(n, m, k)).first;
  return it->second;
}

}  // namespace

std::vector<Patch> patches_for(int n, int max_face_len,
                               int new_vertex_budget) {
  std::vector<Patch> out;
  for (const PatchShape& sh : patch_shapes(n, max_face_len, new_vertex_budget))
    out.push_back(sh.completing ? make_patch(n, n, n)
                                : make_patch(n, sh.m, sh.k));
  return out;
}

// --- Gluing ----------------------------------------------------------------

PatchError::PatchError(Kind k, const std::string& msg)
    : std::runtime_error(msg), kind(k) {}

PartialPlaneGraph apply_patch(const PartialPlaneGraph& s, int face,
                              const Patch& patch, int phi, int max_vertices) {
  if (face < 0 || face >= static_cast<int>(s.g.faces.size()))
    throw std::invalid_argument("apply_patch: face index out of range");
  if (s.complete[face])
    throw std::invalid_argument("apply_patch: face is already complete");
  const Face& hole = s.g.faces[face];
  const Face& f1 = patch.p.g.faces[patch.f1];
  int n = static_cast<int>(hole.size());
  if (static_cast<int>(f1.size()) != n)
    throw PatchError(PatchError::kLengthMismatch,
                     "apply_patch: gluing face length " +
                         std::to_string(f1.size()) + " against hole length " +
                         std::to_string(n));
  if (phi < 0 || phi >= n)
    throw std::invalid_argument("apply_patch: phi out of range");

  // Relabel the patch: gluing-face position j lands on hole position
  // (n - 1 - j - phi) mod n, fresh vertices are numbered from s.g.nv.
  std::vector<int> relabel(patch.p.g.nv, -1);
  for (int j = 0; j < n; ++j) relabel[f1[j]] = hole[imod(n - 1 - j - phi, n)];
  int next = s.g.nv;
  for (int v = 0; v < patch.p.g.nv; ++v)
    if (relabel[v] < 0) relabel[v] = next++;
  if (max_vertices > 0 && next > max_vertices)
    throw PatchError(PatchError::kVertexBudgetExceeded,
                     "apply_patch: " + std::to_string(next) +
                         " vertices exceed the budget of " +
                         std::to_string(max_vertices));

  // The hole and the gluing face cancel; all other faces survive.
  PartialPlaneGraph out;
  std::vector<Face> faces;
  for (std::size_t i = 0; i < s.g.faces.size(); ++i) {
    if (static_cast<int>(i) == face) continue;
    faces.push_back(s.g.faces[i]);
    out.complete.push_back(s.complete[i]);
  }
  for (std::size_t i = 0; i < patch.p.g.faces.size(); ++i) {
    if (static_cast<int>(i) == patch.f1) continue;
    Face f = patch.p.g.faces[i];
    for (int& v : f) v = relabel[v];
    faces.push_back(std::move(f));
    out.complete.push_back(patch.p.complete[i]);
  }
  try {
    out.g = make_plane_graph(std::move(faces));
    if (out.g.nv != next)
      throw std::invalid_argument("apply_patch: vertex count mismatch");
    validate_partial(out);
  } catch (const GraphError& e) {
    throw PatchError(PatchError::kInvariantViolated, e.what());
  } catch (const std::invalid_argument& e) {
    throw PatchError(PatchError::kInvariantViolated, e.what());
  }
  return out;
}

// --- Pruning helpers ---------------------------------------------------------

std::vector<std::string> prune_strategy_names() {
  return {"triangle", "face-len", "d-sum", "fix-edge", "added-len", "seeds"};
}

bool set_prune(EnumConfig& config, const std::string& name, bool enabled) {
  if (name == "triangle") config.prune_triangle = enabled;
  else if (name == "face-len") config.prune_face_len = enabled;
  else if (name == "d-sum") config.prune_dsum = enabled;
  else if (name == "fix-edge") config.prune_fix_edge = enabled;
  else if (name == "added-len") config.prune_added_len = enabled;
  else if (name == "seeds") config.prune_seeds = enabled;
  else return false;
  return true;
}

namespace {

const std::vector<std::pair<int, int>>& seed_order_of(const EnumConfig& cfg) {
  if (!cfg.seed_order.empty()) return cfg.seed_order;
  return constants().b_table_entries();
}

int order_rank(const std::vector<std::pair<int, int>>& order, int p, int q) {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i].first == p && order[i].second == q)
      return static_cast<int>(i);
  return -1;
}

// A vertex is finished when every face around it is complete.
bool vertex_finished(const PartialPlaneGraph& s, int v) {
  for (std::size_t i = 0; i < s.g.faces.size(); ++i) {
    if (s.complete[i]) continue;
    const Face& f = s.g.faces[i];
    if (std::find(f.begin(), f.end(), v) != f.end()) return false;
  }
  return true;
}

// True if some vertex in `watch` is finished in `child` with a pure type
// that precedes `rank` in the seed order.
bool finishes_earlier_type(const PartialPlaneGraph& child,
                           const std::vector<int>& watch, int rank,
                           const std::vector<std::pair<int, int>>& order) {
  for (int v : watch) {
    if (!vertex_finished(child, v)) continue;
    VertexType t = vertex_type(child.g, v);
    if (t.r != 0) continue;
    int r = order_rank(order, t.p, t.q);
    if (r >= 0 && r < rank) return true;
  }
  return false;
}

struct Expansion {
  Transition t;
  PartialPlaneGraph child;
};

// All children of s under the configured pruning, paired with the
// transitions that build them, in a fixed deterministic order.
std::vector<Expansion> expand(const PartialPlaneGraph& s,
                              const EnumConfig& cfg) {
  std::vector<Expansion> out;
  const ConstantTable& ct = constants();

  if (cfg.prune_dsum) {
    double dsum = 0;
    for (std::size_t i = 0; i < s.g.faces.size(); ++i)
      if (s.complete[i]) dsum += ct.d_of(static_cast<int>(s.g.faces[i].size()));
    if (dsum >= ct.squander_target) return out;
  }

  std::vector<int> holes;
  for (std::size_t i = 0; i < s.g.faces.size(); ++i)
    if (!s.complete[i]) holes.push_back(static_cast<int>(i));
  if (holes.empty()) return out;

  // A triangle hole must be completed outright: its circuit cannot bound a
  // face on the outside (more than one face lives there), so in any tame
  // completion it bounds one on the hole side.  The two-face states are the
  // exception -- there the outside is a single face, the circuit already
  // bounds it, and the hole may legitimately be subdivided.
  bool force_triangle = cfg.prune_triangle && s.g.faces.size() > 2;
  bool have_triangle_hole = false;
  for (int fi : holes)
    if (s.g.faces[fi].size() == 3) have_triangle_hole = true;

  if (cfg.prune_fix_edge) {
    // One hole suffices: the shortest, earliest one.
    int best = holes[0];
    for (int fi : holes)
      if (s.g.faces[fi].size() < s.g.faces[best].size()) best = fi;
    holes = {best};
  }

  const auto& order = seed_order_of(cfg);
  auto try_emit = [&](int fi, const Patch& patch, int phi,
                      const std::vector<int>& watch) {
    PartialPlaneGraph child;
    try {
      child = apply_patch(s, fi, patch, phi, cfg.max_vertices);
    } catch (const PatchError&) {
      return;  // duplicate edge or over budget: not a transition
    }
    if (cfg.prune_seeds && cfg.seed_rank >= 0 &&
        finishes_earlier_type(child, watch, cfg.seed_rank, order))
      return;
    out.push_back({Transition{patch, fi, phi}, std::move(child)});
  };

  for (int fi : holes) {
    const Face& hole = s.g.faces[fi];
    int n = static_cast<int>(hole.size());
    if (force_triangle && have_triangle_hole) {
      // Only the completion of a triangle hole survives.
      if (n == 3) try_emit(fi, cached_patch(3, 3, 3), 0, hole);
      continue;
    }
    int cap = cfg.prune_face_len ? cfg.max_face_len : cfg.max_vertices;
    if (cfg.prune_added_len && cfg.seed_face_cap > 0)
      cap = std::min(cap, cfg.seed_face_cap);
    int room = cfg.max_vertices - s.g.nv;
    for (const PatchShape& sh : patch_shapes(n, cap, room)) {
      if (sh.completing) {
        try_emit(fi, cached_patch(n, n, n), 0, hole);
        continue;
      }
      const Patch& patch = cached_patch(n, sh.m, sh.k);
      std::vector<int> starts;
      if (cfg.prune_fix_edge) {
        // Only arcs through the hole edge at positions (0, 1).
        for (int t = 0; t <= sh.k - 2; ++t) starts.push_back(imod(2 - sh.k + t, n));
      } else {
        for (int t = 0; t < n; ++t) starts.push_back(t);
      }
      for (int s0 : starts) {
        std::vector<int> watch;  // arc vertices are the only ones that can finish
        for (int t = 0; t < sh.k; ++t) watch.push_back(hole[imod(s0 + t, n)]);
        try_emit(fi, patch, imod(n - sh.k - s0, n), watch);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Transition> transitions(const PartialPlaneGraph& s,
                                    const EnumConfig& config) {
  std::vector<Transition> out;
  for (Expansion& e : expand(s, config)) out.push_back(std::move(e.t));
  return out;
}

// --- Initial states ----------------------------------------------------------

namespace {

PartialPlaneGraph two_face_state(int n) {
  Face inner(n), outer(n);
  std::iota(inner.begin(), inner.end(), 0);
  for (int j = 0; j < n; ++j) outer[j] = n - 1 - j;
  PartialPlaneGraph s;
  s.g = make_plane_graph({inner, outer});
  s.complete = {true, false};
  return s;
}

// Cyclic sequences of face lengths up to rotation and reflection.
std::string bracelet_canon(std::string s) {
  std::string best = s;
  for (int shift = 0; shift < static_cast<int>(s.size()); ++shift) {
    std::rotate(s.begin(), s.begin() + 1, s.end());
    best = std::min(best, s);
  }
  std::reverse(s.begin(), s.end());
  for (int shift = 0; shift < static_cast<int>(s.size()); ++shift) {
    std::rotate(s.begin(), s.begin() + 1, s.end());
    best = std::min(best, s);
  }
  return best;
}

std::vector<std::string> wheel_arrangements(int p, int q) {
  std::string s = std::string(p, '3') + std::string(q, '4');
  std::set<std::string> canon;
  do {
    canon.insert(bracelet_canon(s));
  } while (std::next_permutation(s.begin(), s.end()));
  return std::vector<std::string>(canon.begin(), canon.end());
}

// p triangles and q quadrilaterals around hub 0 in the given cyclic order,
// the outer face incomplete.  The hub is finished with vertex type (p, q).
PartialPlaneGraph wheel_state(const std::string& arrangement) {
  int d = static_cast<int>(arrangement.size());
  std::vector<Face> faces;
  std::vector<int> rim;  // outer boundary, forward
  int fresh = d + 1;     // quad corners away from the hub
  for (int i = 0; i < d; ++i) {
    int a = 1 + i;
    int b = 1 + (i + 1) % d;
    if (arrangement[i] == '3') {
      faces.push_back({0, a, b});
      rim.push_back(a);
    } else {
      int e = fresh++;
      faces.push_back({0, a, e, b});
      rim.push_back(a);
      rim.push_back(e);
    }
  }
  std::reverse(rim.begin(), rim.end());
  faces.push_back(rim);
  PartialPlaneGraph s;
  s.g = make_plane_graph(std::move(faces));
  s.complete.assign(s.g.faces.size(), true);
  s.complete.back() = false;
  return s;
}

}  // namespace

std::vector<Seed> initial_seeds(const EnumConfig& config) {
  if (config.max_vertices < 3)
    throw std::invalid_argument("enumerate: need a vertex budget of at least 3");
  if (config.max_face_len < 3)
    throw std::invalid_argument("enumerate: need a face length cap of at least 3");
  int cap = config.max_vertices;
  if (config.prune_face_len) cap = std::min(cap, config.max_face_len);
  std::vector<Seed> out;
  int lo = config.prune_seeds ? 5 : 3;
  for (int n = lo; n <= cap; ++n)
    out.push_back({two_face_state(n), "I_" + std::to_string(n), n, -1});
  if (!config.prune_seeds) return out;
  const auto& order = seed_order_of(config);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [p, q] = order[i];
    if (q > 0 && cap < 4) continue;  // wheels with quads need quads allowed
    auto arrs = wheel_arrangements(p, q);
    for (std::size_t j = 0; j < arrs.size(); ++j) {
      PartialPlaneGraph st = wheel_state(arrs[j]);
      if (st.g.nv > config.max_vertices) continue;
      std::string name = "I_{" + std::to_string(p) + "," + std::to_string(q) +
                         "}" + std::string(j, '\'');
      out.push_back({std::move(st), std::move(name), 4, static_cast<int>(i)});
    }
  }
  return out;
}

std::vector<PartialPlaneGraph> initial_states(const EnumConfig& config) {
  EnumConfig all = config;
  all.prune_seeds = false;
  std::vector<PartialPlaneGraph> out;
  for (Seed& s : initial_seeds(all)) out.push_back(std::move(s.state));
  if (config.prune_seeds)
    for (Seed& s : initial_seeds(config))
      if (s.rank >= 0) out.push_back(std::move(s.state));
  return out;
}

// --- Enumeration --------------------------------------------------------------

namespace {

struct LevelItem {
  bool terminal = false;
  std::string terminal_code;
  std::vector<std::pair<std::string, PartialPlaneGraph>> children;
};

void expand_level(const std::vector<PartialPlaneGraph>& frontier,
                  const EnumConfig& cfg, std::vector<LevelItem>& items) {
  items.assign(frontier.size(), {});
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(frontier.size());
  if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const PartialPlaneGraph& s = frontier[i];
      if (s.terminal()) {
        items[i].terminal = true;
        items[i].terminal_code = canonical_code(s.g).code;
        continue;
      }
      for (Expansion& e : expand(s, cfg))
        items[i].children.emplace_back(partial_code(e.child),
                                       std::move(e.child));
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const PartialPlaneGraph& s = frontier[i];
      if (s.terminal()) {
        items[i].terminal = true;
        items[i].terminal_code = canonical_code(s.g).code;
        continue;
      }
      for (Expansion& e : expand(s, cfg))
        items[i].children.emplace_back(partial_code(e.child),
                                       std::move(e.child));
    }
  }
}

}  // namespace

Archive enumerate_tame(const EnumConfig& config) {
  if (config.tame_filter && config.max_face_len > 8)
    throw std::invalid_argument(
        "enumerate: tame terminals have faces of length at most 8");
  Archive a;
  std::map<std::string, PlaneGraph> terminals;  // canonical code -> graph
  std::vector<LevelItem> items;

  for (const Seed& seed : initial_seeds(config)) {
    EnumConfig cfg = config;
    cfg.seed_face_cap = seed.face_cap;
    cfg.seed_rank = seed.rank;

    std::unordered_set<std::string> visited;
    std::vector<PartialPlaneGraph> frontier;
    visited.insert(partial_code(seed.state));
    frontier.push_back(seed.state);

    while (!frontier.empty()) {
      if (config.max_states > 0) {
        long room = config.max_states - a.states_explored;
        if (room < static_cast<long>(frontier.size())) {
          a.complete = false;
          if (room <= 0) break;
          frontier.resize(static_cast<std::size_t>(room));
        }
      }
      expand_level(frontier, cfg, items);
      std::vector<PartialPlaneGraph> next;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        ++a.states_explored;
        LevelItem& item = items[i];
        if (item.terminal) {
          ++a.terminals_seen;
          terminals.emplace(std::move(item.terminal_code),
                            std::move(frontier[i].g));
          continue;
        }
        a.transitions_applied += static_cast<long>(item.children.size());
        for (auto& [code, child] : item.children)
          if (visited.insert(code).second) next.push_back(std::move(child));
      }
      frontier = std::move(next);
    }
    if (!a.complete) break;
  }

  std::vector<std::pair<std::string, PlaneGraph>> cand;
  cand.reserve(terminals.size());
  for (auto& [code, g] : terminals) cand.emplace_back(code, std::move(g));
  std::vector<char> keep(cand.size(), 1);
  if (config.tame_filter) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cand.size());
    if (config.parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < n; ++i)
        keep[i] = check_tame(cand[i].second).tame ? 1 : 0;
    } else {
      for (std::ptrdiff_t i = 0; i < n; ++i)
        keep[i] = check_tame(cand[i].second).tame ? 1 : 0;
    }
  }
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (!keep[i]) continue;
    a.codes.push_back(std::move(cand[i].first));
    a.graphs.push_back(std::move(cand[i].second));
  }
  return a;
}

std::string format_archive(const Archive& archive) {
  std::string out =
      "# plane graph archive: " + std::to_string(archive.graphs.size()) +
      " graphs\n";
  if (!archive.complete)
    out += "# INCOMPLETE: state budget exhausted before the search finished\n";
  for (const PlaneGraph& g : archive.graphs) {
    out += format_graph(g);
    out += '\n';
  }
  return out;
}

// --- Archive comparison ---------------------------------------------------------

ArchiveDiff archive_match(const std::vector<PlaneGraph>& generated,
                          const std::vector<PlaneGraph>& reference,
                          bool cross_check) {
  std::map<std::string, const PlaneGraph*> gen, ref;
  for (const PlaneGraph& g : generated) gen.emplace(canonical_code(g).code, &g);
  for (const PlaneGraph& g : reference) ref.emplace(canonical_code(g).code, &g);
  ArchiveDiff diff;
  for (const auto& [code, g] : ref)
    if (!gen.count(code)) diff.missing.push_back(code);
  for (const auto& [code, g] : gen)
    if (!ref.count(code)) diff.extra.push_back(code);
  if (cross_check) {
    // Confirm every verdict with the search-based matcher.
    for (const auto& [code, g] : gen) {
      auto it = ref.find(code);
      if (it != ref.end() && !isomorphic_search(*g, *it->second))
        throw std::runtime_error(
            "archive match: equal codes on non-isomorphic graphs");
    }
    for (const std::string& code : diff.missing)
      for (const PlaneGraph& g : generated)
        if (isomorphic_search(g, *ref.at(code)))
          throw std::runtime_error(
              "archive match: missing graph has an isomorphic partner");
    for (const std::string& code : diff.extra)
      for (const PlaneGraph& g : reference)
        if (isomorphic_search(g, *gen.at(code)))
          throw std::runtime_error(
              "archive match: extra graph has an isomorphic partner");
  }
  return diff;
}

}  // namespace tame
