#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "lp_oracle.hpp"
#include "tame/constants.hpp"
#include "tame/planegraph.hpp"
#include "tame/weightlp.hpp"
#include "test_util.hpp"

using namespace tame;
using namespace tame::testutil;

namespace {

// Direct substitution: does w satisfy every bound and row of the model?
bool admissible_point(const LPModel& lp, const std::vector<double>& w,
                      double tol = 1e-9) {
  if (w.size() != lp.vars.size()) return false;
  for (std::size_t j = 0; j < lp.vars.size(); ++j)
    if (w[j] < lp.vars[j].lower - tol || w[j] > lp.vars[j].upper + tol)
      return false;
  for (const LPRow& r : lp.rows) {
    double lhs = 0.0;
    for (const auto& [j, c] : r.coeffs) lhs += c * w[j];
    bool ok = true;
    switch (r.rel) {
      case Relation::kLe: ok = lhs <= r.rhs + tol; break;
      case Relation::kGe: ok = lhs >= r.rhs - tol; break;
      case Relation::kEq: ok = std::fabs(lhs - r.rhs) <= tol; break;
    }
    if (!ok) return false;
  }
  return true;
}

// Brute-force separated-set oracle: test all vertex subsets against the four
// defining conditions directly.
std::vector<std::vector<int>> separated_oracle(const PlaneGraph& g) {
  std::vector<std::set<int>> adj(g.nv);
  std::vector<std::vector<int>> at(g.nv);
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    const Face& face = g.faces[f];
    for (std::size_t i = 0; i < face.size(); ++i) {
      adj[face[i]].insert(face[(i + 1) % face.size()]);
      adj[face[(i + 1) % face.size()]].insert(face[i]);
      at[face[i]].push_back(static_cast<int>(f));
    }
  }
  auto qualifies = [&](int v) {
    if (at[v].size() != 5) return false;
    for (int f : at[v])
      if (g.faces[f].size() >= 5) return true;
    return false;
  };
  auto common_quad = [&](int u, int v) {
    for (int f : at[u])
      if (g.faces[f].size() == 4 &&
          std::find(at[v].begin(), at[v].end(), f) != at[v].end())
        return true;
    return false;
  };
  std::vector<std::vector<int>> out;
  REQUIRE(g.nv <= 20);
  for (unsigned mask = 0; mask < (1u << g.nv); ++mask) {
    std::vector<int> verts;
    for (int v = 0; v < g.nv; ++v)
      if (mask >> v & 1) verts.push_back(v);
    bool ok = true;
    for (int v : verts) ok &= qualifies(v);
    for (std::size_t i = 0; i < verts.size() && ok; ++i)
      for (std::size_t j = i + 1; j < verts.size() && ok; ++j)
        ok &= !adj[verts[i]].count(verts[j]) &&
              !common_quad(verts[i], verts[j]);
    if (ok) out.push_back(std::move(verts));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Pentagonal pyramid: hub 0 over ring 1..5, pentagonal base.
std::vector<Face> wheel5_faces() {
  return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
          {1, 5, 4, 3, 2}};
}

// Two 9-gons glued along their boundary.
std::vector<Face> nonagon_drum_faces() {
  return {{0, 1, 2, 3, 4, 5, 6, 7, 8}, {8, 7, 6, 5, 4, 3, 2, 1, 0}};
}

// A 12-vertex sphere with one pentagon and one quadrilateral meeting along a
// two-edge path.  The diagonal pair {0, 2} of the quadrilateral has degree 5
// and lies on the pentagon, so both qualify for separated sets but conflict
// through the common quadrilateral.
std::vector<Face> pentagon_quad_sphere_faces() {
  std::vector<Face> fs;
  fs.push_back({0, 1, 2, 3, 4});  // pentagon
  fs.push_back({0, 5, 2, 1});     // quadrilateral sharing path 2-1-0
  const int a[5] = {0, 4, 3, 2, 5};   // free boundary of the two caps
  const int l[5] = {6, 7, 8, 9, 10};  // lower ring
  for (int i = 0; i < 5; ++i) {
    int j = (i + 1) % 5;
    fs.push_back({a[i], a[j], l[i]});
    fs.push_back({a[j], l[j], l[i]});
  }
  for (int i = 0; i < 5; ++i) {
    int j = (i + 1) % 5;
    fs.push_back({l[i], l[j], 11});  // south cap
  }
  return fs;
}

// Gyroelongated n-gonal bipyramid: an antiprism band capped by two apexes.
// All faces are triangles; the 2n ring vertices have five triangles each.
std::vector<Face> gyro_bipyramid_faces(int n) {
  std::vector<Face> fs;
  auto a = [&](int i) { return 1 + (i % n); };
  auto b = [&](int i) { return 1 + n + (i % n); };
  const int top = 0, bottom = 2 * n + 1;
  for (int i = 0; i < n; ++i) {
    fs.push_back({top, a(i), a(i + 1)});
    fs.push_back({a(i), b(i), a(i + 1)});
    fs.push_back({a(i + 1), b(i), b(i + 1)});
    fs.push_back({bottom, b(i + 1), b(i)});
  }
  return fs;
}

// Cube with one face replaced by a three-spoke wheel: the new vertex sits
// inside the old quadrilateral, joined to three of its corners.
std::vector<Face> cube_three_spoke_faces() {
  std::vector<Face> fs = cube_faces();
  Face quad;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (fs[i].size() == 4) {
      quad = fs[i];
      fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  const int x = 8;
  fs.push_back({quad[0], quad[1], x});
  fs.push_back({quad[1], quad[2], x});
  fs.push_back({quad[2], quad[3], quad[0], x});
  return fs;
}

double row_rhs(const LPModel& lp, const std::string& tag_prefix) {
  for (const LPRow& r : lp.rows)
    if (r.tag.rfind(tag_prefix, 0) == 0) return r.rhs;
  return -1.0;
}

}  // namespace

TEST_CASE("cuboctahedron: quadrilateral bounds give the minimum weight") {
  PlaneGraph g = make_plane_graph(cuboctahedron_faces());
  SolveOptions opts;
  opts.rational_recheck = true;
  WeightResult r = min_total_weight(g, opts);
  const ConstantTable& ct = constants();
  REQUIRE(r.feasible);
  // Lower bound: the six quadrilaterals alone must carry 6 d(4); the point
  // with d(4) on quadrilaterals and zero on triangles attains it.
  CHECK(r.total == doctest::Approx(6.0 * ct.d_of(4)).epsilon(1e-12));
  CHECK(r.total == doctest::Approx(14.268).epsilon(1e-12));
  CHECK(r.lp.rational_checked);
  CHECK(r.lp.rational_agrees);
  WeightModel wm = build_weight_lp(g);
  CHECK(admissible_point(wm.lp, r.weights));
  std::vector<double> hand(g.faces.size(), 0.0);
  for (std::size_t f = 0; f < g.faces.size(); ++f)
    if (g.faces[f].size() == 4) hand[f] = ct.d_of(4);
  CHECK(admissible_point(wm.lp, hand));
  CHECK(!r.subset_rows_truncated);
}

TEST_CASE("triangular orthobicupola matches the cuboctahedron optimum") {
  PlaneGraph g = make_plane_graph(hcp_kissing_faces());
  WeightResult r = min_total_weight(g);
  REQUIRE(r.feasible);
  CHECK(r.total == doctest::Approx(14.268).epsilon(1e-12));
  TameReport rep = check_tame(g);
  CHECK(rep.tame);
}

TEST_CASE("tetrahedron: weight optimum forced far above the target") {
  PlaneGraph g = make_plane_graph(tetrahedron_faces());
  SolveOptions opts;
  opts.rational_recheck = true;
  WeightResult r = min_total_weight(g, opts);
  REQUIRE(r.feasible);
  // Four vertex rows, each summing three of the four faces: the optimum is
  // 4 * 14.8 / 3.
  CHECK(r.total == doctest::Approx(4.0 * 14.8 / 3.0).epsilon(1e-12));
  CHECK(r.lp.rational_agrees);
  testutil::OracleResult o = brute_force_lp(build_weight_lp(g).lp);
  REQUIRE(o.feasible);
  CHECK(r.total == doctest::Approx(o.value).epsilon(1e-10));

  TameReport rep = check_tame(g);
  CHECK(rep.prop[0].pass);
  CHECK(rep.prop[1].pass);
  CHECK(rep.prop[2].pass);
  CHECK(rep.prop[3].pass);
  CHECK(rep.prop[4].pass);
  CHECK(!rep.prop[5].pass);  // c-sum is 4
  CHECK(rep.c_sum == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(!rep.prop[6].pass);
  CHECK(!rep.tame);
  for (const PropertyVerdict& p : rep.prop) CHECK(!p.witness.empty());
}

TEST_CASE("icosahedron: tame, with binding pair covers") {
  PlaneGraph g = make_plane_graph(icosahedron_faces());
  SolveOptions opts;
  opts.rational_recheck = true;
  TameReport rep = check_tame(g, opts);
  CHECK(rep.tame);
  for (const PropertyVerdict& p : rep.prop) CHECK(p.pass);
  REQUIRE(rep.weight.feasible);
  CHECK(rep.weight.lp.rational_agrees);
  // Any four five-triangle vertices force 2.2 somewhere, and the uniform
  // assignment 0.2 is admissible, so the optimum lies in [2.2, 4.0].
  CHECK(rep.weight.total >= 2.2 - 1e-9);
  CHECK(rep.weight.total <= 4.0 + 1e-9);
  CHECK(rep.weight.total < constants().squander_target - 1e-9);

  WeightModel wm = build_weight_lp(g);
  std::vector<double> uniform(g.faces.size(), 0.2);
  CHECK(admissible_point(wm.lp, uniform));
  // 0.11 satisfies the singleton rows but not an adjacent pair: the two
  // stars overlap in two faces, so eight faces must carry 1.1.
  std::vector<double> low(g.faces.size(), 0.11);
  CHECK(!admissible_point(wm.lp, low));
}

TEST_CASE("pentahedral prism: tame with weight 12.99") {
  PlaneGraph g = make_plane_graph(pentprism_faces());
  SolveOptions opts;
  opts.rational_recheck = true;
  TameReport rep = check_tame(g, opts);
  CHECK(rep.tame);
  REQUIRE(rep.weight.feasible);
  // Five quadrilateral bounds plus the two disjoint apex covers.
  CHECK(rep.weight.total ==
        doctest::Approx(5.0 * constants().d_of(4) + 2.0 * 0.55)
            .epsilon(1e-12));
  CHECK(rep.weight.total == doctest::Approx(12.99).epsilon(1e-12));
  CHECK(rep.weight.lp.rational_agrees);
  CHECK(rep.c_sum == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("pentagonal antiprism: fails only the c-sum property") {
  PlaneGraph g = make_plane_graph(pentantiprism_faces());
  TameReport rep = check_tame(g);
  CHECK(rep.prop[0].pass);
  CHECK(rep.prop[1].pass);
  CHECK(rep.prop[2].pass);
  CHECK(rep.prop[3].pass);
  CHECK(rep.prop[4].pass);
  CHECK(!rep.prop[5].pass);
  CHECK(rep.c_sum == doctest::Approx(10.0 - 2.0 * 1.03).epsilon(1e-12));
  // No vertex rows apply (every vertex touches the pentagons), so the
  // optimum is the sum of the two pentagon bounds.
  CHECK(rep.prop[6].pass);
  CHECK(rep.weight.total ==
        doctest::Approx(2.0 * constants().d_of(5)).epsilon(1e-12));
  CHECK(!rep.tame);
  testutil::OracleResult o = brute_force_lp(build_weight_lp(g).lp);
  REQUIRE(o.feasible);
  CHECK(rep.weight.total == doctest::Approx(o.value).epsilon(1e-10));
}

TEST_CASE("cube: vertex rows push the optimum above the face bounds") {
  PlaneGraph g = make_plane_graph(cube_faces());
  SolveOptions opts;
  opts.rational_recheck = true;
  WeightResult r = min_total_weight(g, opts);
  REQUIRE(r.feasible);
  // Eight b(0,3) rows, each face counted four times: optimum 2 b(0,3),
  // slightly above the 6 d(4) face bounds.
  CHECK(r.total == doctest::Approx(2.0 * 7.135).epsilon(1e-12));
  CHECK(r.lp.rational_agrees);
  testutil::OracleResult o = brute_force_lp(build_weight_lp(g).lp);
  REQUIRE(o.feasible);
  CHECK(r.total == doctest::Approx(o.value).epsilon(1e-10));
  TameReport rep = check_tame(g);
  CHECK(rep.prop[6].pass);   // 14.27 < 14.8
  CHECK(!rep.prop[5].pass);  // c-sum 0
  CHECK(!rep.tame);
}

TEST_CASE("square antiprism: oracle agreement with shared triangle rows") {
  PlaneGraph g = make_plane_graph(squareantiprism_faces());
  SolveOptions opts;
  opts.rational_recheck = true;
  WeightResult r = min_total_weight(g, opts);
  REQUIRE(r.feasible);
  CHECK(r.lp.rational_agrees);
  testutil::OracleResult o = brute_force_lp(build_weight_lp(g).lp);
  REQUIRE(o.feasible);
  CHECK(r.total == doctest::Approx(o.value).epsilon(1e-10));
  WeightModel wm = build_weight_lp(g);
  CHECK(admissible_point(wm.lp, r.weights));
}

TEST_CASE("wheel: single hub row and the pentagon bound") {
  PlaneGraph g = make_plane_graph(wheel5_faces());
  WeightResult r = min_total_weight(g);
  REQUIRE(r.feasible);
  // Pentagon bound d(5) plus the hub cover 0.55 on disjoint support.
  CHECK(r.total ==
        doctest::Approx(constants().d_of(5) + 0.55).epsilon(1e-12));
  testutil::OracleResult o = brute_force_lp(build_weight_lp(g).lp);
  REQUIRE(o.feasible);
  CHECK(r.total == doctest::Approx(o.value).epsilon(1e-10));
}

TEST_CASE("separated sets: qualifying pairs and conflicts") {
  // No degree-5 vertices at all.
  PlaneGraph cubocta = make_plane_graph(cuboctahedron_faces());
  CHECK(separated_sets(cubocta) == separated_oracle(cubocta));
  CHECK(separated_sets(cubocta).size() == 1);  // only the empty set

  // Degree-5 vertices but no exceptional faces.
  PlaneGraph icosa = make_plane_graph(icosahedron_faces());
  CHECK(separated_sets(icosa) == separated_oracle(icosa));
  CHECK(separated_sets(icosa).size() == 1);

  // Degree-4 vertices on pentagons.
  PlaneGraph anti = make_plane_graph(pentantiprism_faces());
  CHECK(separated_sets(anti) == separated_oracle(anti));
  CHECK(separated_sets(anti).size() == 1);

  // Two qualifying vertices in conflict through a common quadrilateral.
  PlaneGraph pq = make_plane_graph(pentagon_quad_sphere_faces());
  std::vector<std::vector<int>> sets = separated_sets(pq);
  CHECK(sets == separated_oracle(pq));
  CHECK(sets == std::vector<std::vector<int>>{{}, {0}, {2}});

  // The pentahedral prism has degree-5 apexes but no exceptional faces.
  PlaneGraph pent = make_plane_graph(pentprism_faces());
  CHECK(separated_sets(pent) == separated_oracle(pent));
  CHECK(separated_sets(pent).size() == 1);
}

TEST_CASE("pentagon-quad sphere: separated rows shape the optimum") {
  PlaneGraph g = make_plane_graph(pentagon_quad_sphere_faces());
  WeightModel wm = build_weight_lp(g);
  const ConstantTable& ct = constants();
  // Vertex 0 sits on the pentagon, the quadrilateral, and three triangles
  // with a(3) = 1.4 of required excess.
  double rhs = row_rhs(wm.lp, "separated {0}");
  CHECK(rhs == doctest::Approx(ct.a_of(3) + ct.d_of(5) + ct.d_of(4))
                   .epsilon(1e-12));
  CHECK(row_rhs(wm.lp, "separated {2}") == doctest::Approx(rhs));
  CHECK(row_rhs(wm.lp, "vertex 5 b(3,1)") ==
        doctest::Approx(3.642).epsilon(1e-12));

  SolveOptions opts;
  opts.rational_recheck = true;
  TameReport rep = check_tame(g, opts);
  for (int i = 0; i < 6; ++i) CHECK(rep.prop[i].pass);
  REQUIRE(rep.weight.feasible);
  CHECK(rep.weight.lp.rational_agrees);
  // The separated row and the south-cap cover have disjoint supports.
  CHECK(rep.weight.total >= rhs + 0.55 - 1e-9);
  CHECK(admissible_point(wm.lp, rep.weight.weights));
  CHECK(rep.tame == rep.prop[6].pass);
}

TEST_CASE("five-triangle subset rows are truncated past twenty vertices") {
  PlaneGraph small = make_plane_graph(gyro_bipyramid_faces(4));
  WeightModel full = build_weight_lp(small);
  CHECK(!full.subset_rows_truncated);

  PlaneGraph big = make_plane_graph(gyro_bipyramid_faces(11));
  WeightModel wm = build_weight_lp(big);
  CHECK(wm.subset_rows_truncated);
  CHECK(wm.note.find("truncated") != std::string::npos);
  WeightResult r = min_total_weight(big);
  CHECK(r.subset_rows_truncated);
  TameReport rep = check_tame(big);
  CHECK(rep.prop[6].witness.find("truncated") != std::string::npos);
  CHECK(!rep.prop[3].pass);  // the apexes have degree 11
}

TEST_CASE("adding a row never lowers the optimum; scaling is homogeneous") {
  PlaneGraph g = make_plane_graph(cube_faces());
  WeightModel wm = build_weight_lp(g);
  double base = solve(wm.lp).value;

  LPModel plus = wm.lp;
  plus.add_row("extra", {{0, 1.0}, {1, 1.0}}, Relation::kGe, 9.0);
  CHECK(solve(plus).value >= base - 1e-9);
  CHECK(solve(plus).value >= 9.0 - 1e-9);

  LPModel total = wm.lp;
  std::vector<std::pair<int, double>> all;
  for (std::size_t j = 0; j < total.vars.size(); ++j)
    all.emplace_back(static_cast<int>(j), 1.0);
  total.add_row("extra", std::move(all), Relation::kGe, 20.0);
  CHECK(solve(total).value == doctest::Approx(20.0).epsilon(1e-12));

  LPModel scaled = wm.lp;
  const double lambda = 2.5;
  for (LPVariable& v : scaled.vars) v.lower *= lambda;
  for (LPRow& r : scaled.rows) r.rhs *= lambda;
  CHECK(solve(scaled).value == doctest::Approx(lambda * base).epsilon(1e-12));

  // Permuting rows must not change the optimum.
  LPModel shuffled = wm.lp;
  std::mt19937 rng(7);
  std::shuffle(shuffled.rows.begin(), shuffled.rows.end(), rng);
  CHECK(solve(shuffled).value == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("tameness is orientation-insensitive") {
  std::vector<std::vector<Face>> fixtures = {
      tetrahedron_faces(), cube_faces(),          octahedron_faces(),
      cuboctahedron_faces(), hcp_kissing_faces(), icosahedron_faces(),
      pentprism_faces(),   pentantiprism_faces()};
  for (const std::vector<Face>& fs : fixtures) {
    PlaneGraph g = make_plane_graph(fs);
    TameReport a = check_tame(g);
    TameReport b = check_tame(opposite(g));
    for (int i = 0; i < 7; ++i) CHECK(a.prop[i].pass == b.prop[i].pass);
    CHECK(a.tame == b.tame);
    CHECK(a.c_sum == doctest::Approx(b.c_sum).epsilon(1e-12));
    CHECK(a.weight.total == doctest::Approx(b.weight.total).epsilon(1e-9));
  }
}

TEST_CASE("score heuristics") {
  const ConstantTable& ct = constants();
  ScoreHeuristics cubocta =
      contravening_score_heuristics(make_plane_graph(cuboctahedron_faces()));
  CHECK(cubocta.face_lengths_ok);
  CHECK(cubocta.c_sum == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(cubocta.c_sum_pt == doctest::Approx(ct.eight_pt).epsilon(1e-12));
  CHECK(cubocta.c_sum_pt == doctest::Approx(0.442989).epsilon(1e-5));
  CHECK(cubocta.d_sum == doctest::Approx(14.268).epsilon(1e-12));

  ScoreHeuristics wheel =
      contravening_score_heuristics(make_plane_graph(wheel5_faces()));
  CHECK(wheel.face_lengths_ok);
  CHECK(wheel.c_sum == doctest::Approx(5.0 - 1.03).epsilon(1e-12));
  CHECK(wheel.d_sum == doctest::Approx(ct.d_of(5)).epsilon(1e-12));

  ScoreHeuristics drum =
      contravening_score_heuristics(make_plane_graph(nonagon_drum_faces()));
  CHECK(!drum.face_lengths_ok);
  CHECK(drum.c_sum == 0.0);
  CHECK(drum.d_sum == 0.0);

  TameReport rep = check_tame(make_plane_graph(nonagon_drum_faces()));
  CHECK(!rep.prop[0].pass);
  CHECK(!rep.tame);
}

TEST_CASE("three-spoke interior is accepted and flagged") {
  PlaneGraph g = make_plane_graph(cube_three_spoke_faces());
  TameReport rep = check_tame(g);
  CHECK(rep.prop[2].pass);
  CHECK(rep.used_three_spoke_interior);

  TameReport plain = check_tame(make_plane_graph(cuboctahedron_faces()));
  CHECK(!plain.used_three_spoke_interior);
  TameReport octa = check_tame(make_plane_graph(octahedron_faces()));
  CHECK(octa.prop[2].pass);  // four-spoke interiors at the poles
  CHECK(!octa.used_three_spoke_interior);
}

TEST_CASE("archive kernels agree and the TSV is stable") {
  std::vector<PlaneGraph> gs = {
      make_plane_graph(cuboctahedron_faces()),
      make_plane_graph(hcp_kissing_faces()),
      make_plane_graph(tetrahedron_faces()),
      make_plane_graph(pentprism_faces()),
      make_plane_graph(pentantiprism_faces()),
  };
  std::vector<GraphCheck> serial = check_graphs_serial(gs);
  std::vector<GraphCheck> parallel = check_graphs_parallel(gs);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].code == parallel[i].code);
    CHECK(serial[i].report.tame == parallel[i].report.tame);
    CHECK(serial[i].report.weight.total == parallel[i].report.weight.total);
    for (int p = 0; p < 7; ++p)
      CHECK(serial[i].report.prop[p].pass == parallel[i].report.prop[p].pass);
  }

  std::string tsv = tame_check_tsv(serial);
  CHECK(tsv.rfind("code\tp1\tp2\tp3\tp4\tp5\tp6\tp7\ttame\tmin_weight\n",
                  0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 1 + gs.size());
  CHECK(tsv.find("pass\tpass\tpass\tpass\tpass\tpass\tpass\ttame") !=
        std::string::npos);
  CHECK(tsv.find("not-tame") != std::string::npos);
  CHECK(tsv.find("14.268000000") != std::string::npos);
  CHECK(tame_check_tsv(serial) == tsv);
}
