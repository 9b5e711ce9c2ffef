#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "tame/constants.hpp"
#include "tame/enumerate.hpp"
#include "tame/planegraph.hpp"
#include "tame/weightlp.hpp"
#include "test_util.hpp"

using namespace tame;
using namespace tame::testutil;

namespace {

EnumConfig all_off(int n) {
  EnumConfig c;
  c.max_vertices = n;
  c.prune_triangle = false;
  c.prune_face_len = false;
  c.prune_dsum = false;
  c.prune_fix_edge = false;
  c.prune_added_len = false;
  c.prune_seeds = false;
  c.tame_filter = false;
  return c;
}

PartialPlaneGraph two_face(int n) {
  Face inner(n), outer(n);
  for (int j = 0; j < n; ++j) {
    inner[j] = j;
    outer[j] = n - 1 - j;
  }
  PartialPlaneGraph s;
  s.g = make_plane_graph({inner, outer});
  s.complete = {true, false};
  return s;
}

std::set<std::string> code_set(const Archive& a) {
  return std::set<std::string>(a.codes.begin(), a.codes.end());
}

std::string code_of(const std::vector<Face>& faces) {
  return canonical_code(make_plane_graph(faces)).code;
}

// Patch shape of a transition: complete-face length, shared-vertex count,
// and the identification offset.
std::tuple<int, int, int> shape_of(const Transition& t) {
  const Face& f1 = t.patch.p.g.faces[t.patch.f1];
  const Face& f2 = t.patch.p.g.faces[t.patch.f2];
  std::set<int> on_f1(f1.begin(), f1.end());
  int k = 0;
  for (int v : f2) k += on_f1.count(v);
  return {static_cast<int>(f2.size()), k, t.phi};
}

bool is_completion(const Transition& t) {
  return t.patch.p.g.faces.size() == 2;
}

std::uint64_t ekey(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

// Random valid plane graph with at most max_nv vertices, grown from a small
// cycle sphere by stellations and chord splits.
PlaneGraph random_small_graph(std::mt19937& rng, int max_nv) {
  int start = 3 + static_cast<int>(rng() % 4);  // 3..6-gon sphere
  Face inner(start), outer(start);
  for (int j = 0; j < start; ++j) {
    inner[j] = j;
    outer[j] = start - 1 - j;
  }
  PlaneGraph g = make_plane_graph({inner, outer});
  int ops = 3 + static_cast<int>(rng() % 4);
  for (int t = 0; t < ops; ++t) {
    std::set<std::uint64_t> edges;
    for (const Face& f : g.faces)
      for (std::size_t j = 0; j < f.size(); ++j)
        edges.insert(ekey(f[j], f[(j + 1) % f.size()]));
    struct Chord {
      int face, i, j;
    };
    std::vector<Chord> chords;
    for (std::size_t fi = 0; fi < g.faces.size(); ++fi) {
      const Face& f = g.faces[fi];
      int l = static_cast<int>(f.size());
      for (int i = 0; i < l; ++i)
        for (int j = i + 2; j < l; ++j) {
          if (i == 0 && j == l - 1) continue;  // adjacent on the cycle
          if (edges.count(ekey(f[i], f[j]))) continue;
          chords.push_back({static_cast<int>(fi), i, j});
        }
    }
    bool can_stellate = g.nv < max_nv;
    if (chords.empty() && !can_stellate) break;
    bool do_chord = !chords.empty() && (!can_stellate || rng() % 2 == 0);
    std::vector<Face> faces = g.faces;
    if (do_chord) {
      Chord c = chords[rng() % chords.size()];
      Face f = faces[c.face];
      Face a(f.begin() + c.i, f.begin() + c.j + 1);
      Face b(f.begin() + c.j, f.end());
      b.insert(b.end(), f.begin(), f.begin() + c.i + 1);
      faces[c.face] = a;
      faces.push_back(b);
    } else {
      std::size_t fi = rng() % faces.size();
      Face f = faces[fi];
      int c = g.nv;
      faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(fi));
      for (std::size_t j = 0; j < f.size(); ++j)
        faces.push_back({f[j], f[(j + 1) % f.size()], c});
    }
    g = make_plane_graph(std::move(faces));
  }
  return g;
}

}  // namespace

TEST_CASE("initial states and seeds") {
  EnumConfig tiny;
  tiny.max_vertices = 3;
  auto states3 = initial_states(tiny);
  REQUIRE(states3.size() == 1);
  CHECK(states3[0].g.nv == 3);
  CHECK(states3[0].g.faces.size() == 2);
  CHECK(states3[0].incomplete_count() == 1);
  CHECK(partial_code(states3[0]) == partial_code(two_face(3)));

  EnumConfig eight;  // defaults: N = 8, all strategies on
  auto states8 = initial_states(eight);
  CHECK(states8.size() == 20);  // I_3..I_8 plus 14 wheel arrangements
  for (const auto& s : states8) {
    CHECK_NOTHROW(validate_partial(s));
    CHECK(s.incomplete_count() == 1);
    CHECK(s.g.nv <= 8);
  }

  EnumConfig twelve;
  twelve.max_vertices = 12;
  auto states12 = initial_states(twelve);
  CHECK(states12.size() == 23);  // I_3..I_8 plus 17 wheel arrangements

  auto seeds12 = initial_seeds(twelve);
  CHECK(seeds12.size() == 21);  // I_5..I_8 plus the 17 wheels
  int n32 = 0;
  for (const Seed& s : seeds12) {
    CHECK_NOTHROW(validate_partial(s.state));
    if (s.name == "I_{3,2}" || s.name == "I_{3,2}'") {
      ++n32;
      CHECK(s.state.g.nv == 8);  // hub + 3 + 2 spokes + 2 quad corners
    }
  }
  CHECK(n32 == 2);  // two arrangements of three triangles and two quads

  // Wheel seeds finish their hub with the advertised vertex type.
  for (const Seed& s : seeds12) {
    if (s.rank < 0) continue;
    auto [p, q] = constants().b_table_entries()[static_cast<std::size_t>(s.rank)];
    VertexType t = vertex_type(s.state.g, 0);
    CHECK(t.p == p);
    CHECK(t.q == q);
    CHECK(t.r == 0);
    CHECK(s.state.g.nv == 1 + p + 2 * q);
    CHECK(static_cast<int>(s.state.g.faces.back().size()) == p + 2 * q);
    CHECK(s.face_cap == 4);
  }

  // The two I_{2,2} arrangements are genuinely different states.
  std::vector<std::string> codes22;
  for (const Seed& s : seeds12)
    if (s.name.rfind("I_{2,2}", 0) == 0) codes22.push_back(partial_code(s.state));
  REQUIRE(codes22.size() == 2);
  CHECK(codes22[0] != codes22[1]);

  // Triangle/quad mode: wheels only, I_3 and I_4 subsumed.
  EnumConfig triquad;
  triquad.max_vertices = 12;
  triquad.max_face_len = 4;
  CHECK(initial_seeds(triquad).size() == 17);
  CHECK(initial_states(triquad).size() == 19);  // I_3, I_4, and the wheels

  // Without the seeds strategy the I_n ladder is the whole list.
  EnumConfig plain;
  plain.prune_seeds = false;
  auto plain_seeds = initial_seeds(plain);
  REQUIRE(plain_seeds.size() == 6);
  for (int n = 3; n <= 8; ++n) {
    const Seed& s = plain_seeds[static_cast<std::size_t>(n - 3)];
    CHECK(s.name == "I_" + std::to_string(n));
    CHECK(s.face_cap == n);
    CHECK(s.rank == -1);
  }
}

TEST_CASE("patch construction") {
  Patch comp = make_patch(3, 3, 3);
  CHECK(comp.p.g.faces.size() == 2);
  CHECK(comp.p.g.nv == 3);
  CHECK_FALSE(comp.p.complete[comp.f1]);
  CHECK(comp.p.complete[comp.f2]);

  Patch p432 = make_patch(4, 3, 2);
  CHECK(p432.p.g.nv == 5);
  REQUIRE(p432.p.g.faces.size() == 3);
  CHECK(p432.p.g.faces[2].size() == 5);  // leftover hole 4 + 3 - 4 + 2

  Patch p433 = make_patch(4, 3, 3);  // chord patch, no fresh vertices
  CHECK(p433.p.g.nv == 4);
  CHECK(p433.p.g.faces[2].size() == 3);

  CHECK(make_patch(5, 4, 4).p.g.faces[2].size() == 3);
  CHECK(make_patch(3, 8, 2).p.g.faces[2].size() == 9);
  CHECK(make_patch(3, 8, 2).p.g.nv == 9);
  CHECK(make_patch(8, 8, 8).p.g.faces.size() == 2);

  CHECK_THROWS_AS(make_patch(2, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_patch(3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_patch(3, 4, 4), std::invalid_argument);  // k > n
  CHECK_THROWS_AS(make_patch(3, 3, 1), std::invalid_argument);  // k < 2

  // Bad distinguished faces are rejected.
  Patch bad = make_patch(4, 3, 2);
  bad.f2 = bad.f1;
  CHECK_THROWS_AS(validate_patch(bad), std::invalid_argument);
  bad = make_patch(4, 3, 2);
  std::swap(bad.f1, bad.f2);  // gluing face must be the incomplete one
  CHECK_THROWS_AS(validate_patch(bad), std::invalid_argument);
  bad = make_patch(4, 3, 2);
  bad.p.complete[2] = true;  // a second complete face
  CHECK_THROWS_AS(validate_patch(bad), std::invalid_argument);

  // Shape listing: completion first, then (m, k) lexicographic.
  auto shapes = patches_for(4, 8, 100);
  CHECK(shapes.size() == 17);
  CHECK(shapes[0].p.g.faces.size() == 2);
  for (const Patch& p : shapes) CHECK_NOTHROW(validate_patch(p));
  CHECK(patches_for(4, 8, 0).size() == 2);  // completion and the chord patch
  CHECK(patches_for(3, 4, 1).size() == 3);
}

TEST_CASE("gluing patches into holes") {
  // Completing the hole of I_3 gives the two-face triangle sphere.
  PartialPlaneGraph i3 = two_face(3);
  PartialPlaneGraph done = apply_patch(i3, 1, make_patch(3, 3, 3), 0);
  CHECK(done.terminal());
  CHECK(done.g.nv == 3);
  CHECK(done.g.faces.size() == 2);
  CHECK(canonical_code(done.g).code == code_of({{0, 1, 2}, {2, 1, 0}}));

  // Splitting the hole of I_4 with a chord: the complete square, a complete
  // triangle, and an incomplete triangle remain.
  PartialPlaneGraph i4 = two_face(4);
  PartialPlaneGraph split = apply_patch(i4, 1, make_patch(4, 3, 3), 0);
  CHECK(split.g.nv == 4);
  REQUIRE(split.g.faces.size() == 3);
  CHECK(split.incomplete_count() == 1);
  std::multiset<int> complete_lens, open_lens;
  for (std::size_t i = 0; i < split.g.faces.size(); ++i)
    (split.complete[i] ? complete_lens : open_lens)
        .insert(static_cast<int>(split.g.faces[i].size()));
  CHECK(complete_lens == std::multiset<int>{3, 4});
  CHECK(open_lens == std::multiset<int>{3});

  // Every identification of a valid patch yields a valid partial graph.
  for (int phi = 0; phi < 4; ++phi) {
    PartialPlaneGraph child = apply_patch(i4, 1, make_patch(4, 3, 2), phi);
    CHECK_NOTHROW(validate_partial(child));
    CHECK(child.g.nv == 5);
  }

  // Length mismatch.
  try {
    apply_patch(i4, 1, make_patch(3, 3, 3), 0);
    FAIL("expected a length mismatch");
  } catch (const PatchError& e) {
    CHECK(e.kind == PatchError::kLengthMismatch);
  }

  // Vertex budget.
  try {
    apply_patch(i4, 1, make_patch(4, 3, 2), 0, 4);
    FAIL("expected a budget overflow");
  } catch (const PatchError& e) {
    CHECK(e.kind == PatchError::kVertexBudgetExceeded);
  }

  // Misuse is invalid_argument, not PatchError.
  CHECK_THROWS_AS(apply_patch(i4, 0, make_patch(4, 3, 3), 0),
                  std::invalid_argument);  // face already complete
  CHECK_THROWS_AS(apply_patch(i4, 7, make_patch(4, 3, 3), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_patch(i4, 1, make_patch(4, 3, 3), 4),
                  std::invalid_argument);  // phi out of range

  // A chord duplicating an existing edge violates the invariant.  The state
  // is two complete triangles sharing edge 0-2 with a quadrilateral hole;
  // one diagonal of the hole is the shared edge, the other is free.
  PartialPlaneGraph tri2;
  tri2.g = make_plane_graph({{0, 1, 2}, {0, 2, 3}, {1, 0, 3, 2}});
  tri2.complete = {true, true, false};
  CHECK_NOTHROW(validate_partial(tri2));
  try {
    apply_patch(tri2, 2, make_patch(4, 3, 3), 0);
    FAIL("expected a duplicate edge");
  } catch (const PatchError& e) {
    CHECK(e.kind == PatchError::kInvariantViolated);
  }
  PartialPlaneGraph toward_tetra = apply_patch(tri2, 2, make_patch(4, 3, 3), 1);
  CHECK(toward_tetra.incomplete_count() == 1);
  PartialPlaneGraph tetra = apply_patch(toward_tetra, 3, make_patch(3, 3, 3), 0);
  CHECK(tetra.terminal());
  CHECK(canonical_code(tetra.g).code == code_of(tetrahedron_faces()));
}

TEST_CASE("transitions out of a state") {
  // An incomplete triangle admits exactly its completion.
  PartialPlaneGraph tri_hole =
      apply_patch(two_face(4), 1, make_patch(4, 3, 3), 0);
  REQUIRE(tri_hole.g.faces.size() == 3);
  EnumConfig pruned;  // defaults: everything on
  auto out = transitions(tri_hole, pruned);
  REQUIRE(out.size() == 1);
  CHECK(is_completion(out[0]));
  CHECK(apply_patch(tri_hole, out[0].face, out[0].patch, out[0].phi).terminal());

  // Two-face states are exempt: the hole circuit of I_3 already bounds the
  // complete face on its far side, so the hole may be subdivided.
  PartialPlaneGraph i3 = two_face(3);
  CHECK(transitions(i3, pruned).size() > 1);

  // Two hexagons already squander the whole target: no transitions.
  PartialPlaneGraph hexes;
  hexes.g = make_plane_graph({{0, 1, 2, 3, 4, 5},
                              {1, 0, 6, 7, 8, 9},
                              {2, 1, 9, 8, 7, 6, 0, 5, 4, 3}});
  hexes.complete = {true, true, false};
  CHECK_NOTHROW(validate_partial(hexes));
  EnumConfig wide;
  wide.max_vertices = 12;
  CHECK(transitions(hexes, wide).empty());
  EnumConfig no_dsum = wide;
  no_dsum.prune_dsum = false;
  CHECK_FALSE(transitions(hexes, no_dsum).empty());

  // Unpruned transitions match a brute-force sweep over every patch and
  // every identification, filtered by gluing validity.
  PartialPlaneGraph i4 = two_face(4);
  EnumConfig raw = all_off(6);
  auto got = transitions(i4, raw);
  int completions = 0;
  std::multiset<std::tuple<int, int, int>> got_shapes;
  for (const Transition& t : got) {
    CHECK(t.face == 1);
    if (is_completion(t)) {
      ++completions;
      continue;
    }
    got_shapes.insert(shape_of(t));
  }
  CHECK(completions == 1);  // all identifications of the completion agree
  std::multiset<std::tuple<int, int, int>> want_shapes;
  for (int m = 3; m <= 12; ++m)
    for (int k = 2; k <= std::min(4, m); ++k) {
      if (m == 4 && k == 4) continue;
      Patch patch;
      try {
        patch = make_patch(4, m, k);
      } catch (const std::invalid_argument&) {
        continue;
      }
      for (int phi = 0; phi < 4; ++phi) {
        try {
          apply_patch(i4, 1, patch, phi, raw.max_vertices);
        } catch (const PatchError&) {
          continue;
        }
        want_shapes.insert({m, k, phi});
      }
    }
  CHECK(got_shapes == want_shapes);
  CHECK(got.size() == 29);

  // Fixing one edge keeps only arcs through hole positions (0, 1).
  EnumConfig fixed = all_off(6);
  fixed.prune_fix_edge = true;
  auto few = transitions(i4, fixed);
  CHECK(few.size() == 15);
  for (const Transition& t : few) {
    CHECK(t.face == 1);
    if (is_completion(t)) continue;
    auto [m, k, phi] = shape_of(t);
    int s0 = ((4 - k - phi) % 4 + 4) % 4;
    CHECK(((0 - s0) % 4 + 4) % 4 < k);  // position 0 on the arc
    CHECK(((1 - s0) % 4 + 4) % 4 < k);  // position 1 on the arc
  }

  // A seed face cap limits the added face lengths.
  EnumConfig capped = all_off(6);
  capped.prune_added_len = true;
  capped.seed_face_cap = 3;
  auto small = transitions(i4, capped);
  CHECK(small.size() == 8);  // (3,2) and (3,3) patches, four offsets each
  for (const Transition& t : small) {
    CHECK_FALSE(is_completion(t));
    CHECK(std::get<0>(shape_of(t)) == 3);
  }

  // With several holes, fixing a face picks the shortest, earliest one.
  PartialPlaneGraph octa;
  octa.g = make_plane_graph(octahedron_faces());
  octa.complete.assign(octa.g.faces.size(), true);
  // Faces 0 and 6 of the fixture are vertex-disjoint opposite triangles.
  {
    std::set<int> a(octa.g.faces[0].begin(), octa.g.faces[0].end());
    bool disjoint = true;
    for (int v : octa.g.faces[6]) disjoint = disjoint && !a.count(v);
    REQUIRE(disjoint);
  }
  octa.complete[0] = false;
  octa.complete[6] = false;
  CHECK_NOTHROW(validate_partial(octa));
  EnumConfig two_holes = all_off(8);
  two_holes.prune_triangle = true;
  auto both = transitions(octa, two_holes);
  CHECK(both.size() == 2);  // one completion per triangle hole
  two_holes.prune_fix_edge = true;
  auto one = transitions(octa, two_holes);
  REQUIRE(one.size() == 1);
  CHECK(one[0].face == 0);

  // The seed-order strategy blocks transitions that finish a vertex of an
  // earlier type.  Completing the rim of the (4, 0) wheel finishes rim
  // vertices with type (2, 1), which precedes (4, 0) in the table order.
  EnumConfig cfg12;
  cfg12.max_vertices = 12;
  Seed wheel40;
  for (Seed& s : initial_seeds(cfg12))
    if (s.name == "I_{4,0}") wheel40 = std::move(s);
  REQUIRE(wheel40.rank >= 0);
  EnumConfig blocked = cfg12;
  blocked.seed_face_cap = wheel40.face_cap;
  blocked.seed_rank = wheel40.rank;
  bool has_completion = false;
  for (const Transition& t : transitions(wheel40.state, blocked))
    has_completion = has_completion || is_completion(t);
  CHECK_FALSE(has_completion);
  int rank21 = -1;
  const auto& order = constants().b_table_entries();
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == std::make_pair(2, 1)) rank21 = static_cast<int>(i);
  REQUIRE(rank21 >= 0);
  EnumConfig allowed = blocked;
  allowed.seed_rank = rank21;  // (2, 1) no longer precedes the seed
  has_completion = false;
  for (const Transition& t : transitions(wheel40.state, allowed))
    has_completion = has_completion || is_completion(t);
  CHECK(has_completion);
  EnumConfig unseeded = blocked;
  unseeded.prune_seeds = false;
  has_completion = false;
  for (const Transition& t : transitions(wheel40.state, unseeded))
    has_completion = has_completion || is_completion(t);
  CHECK(has_completion);

  // Every emitted transition preserves the partial-graph invariant.
  for (const Transition& t : transitions(two_face(5), all_off(7))) {
    PartialPlaneGraph child = apply_patch(two_face(5), t.face, t.patch, t.phi);
    CHECK_NOTHROW(validate_partial(child));
  }
}

TEST_CASE("strategy names toggle configuration") {
  auto names = prune_strategy_names();
  REQUIRE(names.size() == 6);
  EnumConfig c;
  for (const std::string& name : names) CHECK(set_prune(c, name, false));
  CHECK_FALSE(c.prune_triangle);
  CHECK_FALSE(c.prune_face_len);
  CHECK_FALSE(c.prune_dsum);
  CHECK_FALSE(c.prune_fix_edge);
  CHECK_FALSE(c.prune_added_len);
  CHECK_FALSE(c.prune_seeds);
  CHECK(set_prune(c, "d-sum", true));
  CHECK(c.prune_dsum);
  CHECK_FALSE(set_prune(c, "unknown", true));
}

TEST_CASE("small exhaustive archives") {
  // Three vertices: only the triangle sphere exists.
  Archive a3 = enumerate_tame(all_off(3));
  REQUIRE(a3.codes.size() == 1);
  CHECK(a3.codes[0] == code_of({{0, 1, 2}, {2, 1, 0}}));
  CHECK(a3.complete);
  CHECK(a3.states_explored == 2);
  CHECK(a3.transitions_applied == 1);
  CHECK(a3.terminals_seen == 1);

  // Four vertices: the four plane graphs on at most four vertices.
  Archive a4 = enumerate_tame(all_off(4));
  std::set<std::string> want = {
      code_of({{0, 1, 2}, {2, 1, 0}}),
      code_of({{0, 1, 2, 3}, {3, 2, 1, 0}}),
      code_of({{0, 1, 2}, {0, 2, 3}, {1, 0, 3, 2}}),
      code_of(tetrahedron_faces()),
  };
  CHECK(code_set(a4) == want);

  // None of them is tame.
  EnumConfig tame4 = all_off(4);
  tame4.tame_filter = true;
  CHECK(enumerate_tame(tame4).codes.empty());

  // Archives are deterministic and identical for serial and parallel runs.
  EnumConfig six = all_off(6);
  std::string text = format_archive(enumerate_tame(six));
  CHECK(text == format_archive(enumerate_tame(six)));
  EnumConfig six_par = six;
  six_par.parallel = true;
  CHECK(text == format_archive(enumerate_tame(six_par)));

  Archive a6 = enumerate_tame(six);
  CHECK(code_set(a6).count(code_of(octahedron_faces())) == 1);
  CHECK(code_set(a6).size() == a6.codes.size());  // no duplicates
  CHECK(std::is_sorted(a6.codes.begin(), a6.codes.end()));
  for (const PlaneGraph& g : a6.graphs) CHECK_NOTHROW(validate_plane_graph(g));
}

TEST_CASE("pruning keeps every reachable graph and every tame terminal") {
  // One unpruned run at seven vertices is the reference for both halves.
  Archive raw = enumerate_tame(all_off(7));
  CHECK(raw.complete);
  std::set<std::string> raw_codes = code_set(raw);

  // Fifty random valid plane graphs all appear among the raw terminals.
  std::mt19937 rng(20260816u);
  for (int trial = 0; trial < 50; ++trial) {
    PlaneGraph g = random_small_graph(rng, 7);
    CHECK_NOTHROW(validate_plane_graph(g));
    REQUIRE(g.nv <= 7);
    CHECK(raw_codes.count(canonical_code(g).code) == 1);
  }

  // The tame subset of the raw terminals equals the fully pruned archive.
  std::set<std::string> raw_tame;
  for (std::size_t i = 0; i < raw.graphs.size(); ++i)
    if (check_tame(raw.graphs[i]).tame) raw_tame.insert(raw.codes[i]);
  EnumConfig pruned;
  pruned.max_vertices = 7;
  Archive fast = enumerate_tame(pruned);
  CHECK(code_set(fast) == raw_tame);
}

TEST_CASE("each pruning strategy alone preserves the tame archive") {
  EnumConfig base;
  base.max_vertices = 8;
  std::set<std::string> reference = code_set(enumerate_tame(base));
  for (const std::string& name : prune_strategy_names()) {
    EnumConfig c = base;
    REQUIRE(set_prune(c, name, false));
    Archive a = enumerate_tame(c);
    INFO("strategy off: ", name);
    CHECK(code_set(a) == reference);
  }
}

TEST_CASE("triangle and quadrilateral archive at twelve vertices") {
  EnumConfig cfg;
  cfg.max_vertices = 12;
  cfg.max_face_len = 4;
  Archive a = enumerate_tame(cfg);
  CHECK(a.complete);
  CHECK_FALSE(a.codes.empty());
  CHECK(std::is_sorted(a.codes.begin(), a.codes.end()));
  CHECK(code_set(a).size() == a.codes.size());

  std::set<std::string> codes = code_set(a);
  CHECK(codes.count(code_of(cuboctahedron_faces())) == 1);
  CHECK(codes.count(code_of(hcp_kissing_faces())) == 1);
  CHECK(codes.count(code_of(pentprism_faces())) == 1);
  CHECK(codes.count(code_of(icosahedron_faces())) == 1);
  CHECK(codes.count(code_of(octahedron_faces())) == 1);

  // Every emitted graph is a valid plane graph, passes the tameness checker,
  // and stays within the configured shape.
  for (const PlaneGraph& g : a.graphs) {
    CHECK_NOTHROW(validate_plane_graph(g));
    CHECK(g.nv <= 12);
    for (const Face& f : g.faces) CHECK(f.size() <= 4);
    CHECK(check_tame(g).tame);
  }
}

TEST_CASE("archive matching") {
  std::vector<PlaneGraph> ref = {make_plane_graph(tetrahedron_faces()),
                                 make_plane_graph(octahedron_faces()),
                                 make_plane_graph(cube_faces())};
  ArchiveDiff same = archive_match(ref, ref, true);
  CHECK(same.match());

  std::vector<PlaneGraph> missing_one = {ref[0], ref[2]};
  ArchiveDiff d = archive_match(missing_one, ref, true);
  CHECK_FALSE(d.match());
  REQUIRE(d.missing.size() == 1);
  CHECK(d.missing[0] == code_of(octahedron_faces()));
  CHECK(d.extra.empty());
  ArchiveDiff e = archive_match(ref, missing_one, true);
  CHECK(e.missing.empty());
  REQUIRE(e.extra.size() == 1);
  CHECK(e.extra[0] == code_of(octahedron_faces()));

  // A relabeled copy still matches by canonical code, and the search-based
  // matcher confirms it.
  std::vector<Face> relabeled;
  for (const Face& f : tetrahedron_faces()) {
    Face r;
    for (int v : f) r.push_back((v + 2) % 4);
    relabeled.push_back(r);
  }
  ArchiveDiff iso = archive_match({make_plane_graph(relabeled)},
                                  {make_plane_graph(tetrahedron_faces())}, true);
  CHECK(iso.match());

  // Round trip through the text format.
  Archive a4 = enumerate_tame(all_off(4));
  std::vector<PlaneGraph> back = read_archive_text(format_archive(a4));
  CHECK(archive_match(back, a4.graphs, true).match());
}

TEST_CASE("state budget cuts the search with an explicit marker") {
  EnumConfig cfg;
  cfg.max_vertices = 12;
  cfg.max_face_len = 4;
  cfg.max_states = 40;
  Archive a = enumerate_tame(cfg);
  CHECK_FALSE(a.complete);
  CHECK(a.states_explored <= 40);
  std::string text = format_archive(a);
  CHECK(text.find("INCOMPLETE") != std::string::npos);
  Archive again = enumerate_tame(cfg);
  CHECK(format_archive(again) == text);

  EnumConfig roomy = all_off(4);
  roomy.max_states = 100000;
  CHECK(enumerate_tame(roomy).complete);
  CHECK(format_archive(enumerate_tame(roomy)).find("INCOMPLETE") ==
        std::string::npos);
}
