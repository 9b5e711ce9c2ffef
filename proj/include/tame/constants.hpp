#pragma once
// Scoring and squander constants for tame plane graph classification.
//
// Everything numeric in the toolkit funnels through this table so that a
// constant is written down exactly once.  Printed decimal constants are kept
// as decimal strings and parsed once at startup; transcendental values (pt,
// zeta, the tetrahedral/octahedral density excesses) are recomputed from
// closed forms.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tame {

struct ConstantTable {
  // Truncation parameter and derived lengths.
  double t0 = 0;        // 1.255
  double two_t0 = 0;    // 2.51
  double sqrt2 = 0;
  double sqrt8 = 0;     // 2*sqrt(2), the upright-diagonal upper limit

  // Score units.
  double delta_tet = 0;  // sqrt(8) * arctan(sqrt(2)/5), density excess of the
                         // regular tetrahedron's orthoscheme decomposition
  double delta_oct = 0;  // pi/sqrt(8) - delta_tet/2
  double pt = 0;         // -pi/3 + sqrt(2)*delta_tet  ~ 0.0553736
  double eight_pt = 0;   // 8*pt                       ~ 0.442989
  double zeta = 0;       // 1/(2 * arctan(sqrt(2)/5)), squander conversion rate

  // Total squander target: a graph is interesting only if an admissible
  // weight assignment stays strictly below this.
  double squander_target = 0;  // 14.8, also (4*pi*zeta - 8) rounded up
  // Score threshold in pt units: a contravening graph scores at least
  // score_target * pt, so its c-sum must reach score_target.
  double score_target = 0;  // 8

  // Per-face-size squander lower bounds d(n) and score upper bounds c(n)
  // (in units of pt), n = face length.
  // c: 1 (n=3), 0 (n=4), -1.03 (n=5), -2.06 (n=6), -3.03 otherwise.
  // d: 0, 2.378, 4.896, 7.414, 9.932, 10.916 for n=3..8, 14.8 otherwise.
  double c_of(int n) const;
  double d_of(int n) const;

  // Vertex-environment squander lower bounds: a(number of triangles at a
  // vertex) and b(p, q) for a vertex surrounded by p triangles and q
  // quadrilaterals and nothing else.  Entries not tabulated default to the
  // squander target.
  double a_of(int n) const;
  double b_of(int p, int q) const;
  // The tabulated (p, q) pairs with b(p, q) < squander_target, in row-major
  // order of the table; this doubles as the seed order for enumeration.
  const std::vector<std::pair<int, int>>& b_table_entries() const;

  // Weight forced on the faces meeting a set of k five-triangle vertices
  // (k <= 4): 0.55 per vertex.
  double five_triangle_cover = 0;  // 0.55

  // Squander and score bounds for refined standard regions: t_n and s_n
  // index exceptional-region totals by side count n.
  double t_of(int n) const;  // n in 4..8
  double s_of(int n) const;  // n in 5..8

  // Aggregate bounds D(n, k) = t_{n+k} - 0.06585*k (0 <= k <= n,
  // 4 <= n+k <= 8) and Z(n, k) = s_{n+k} - k*eps_Z with the single special
  // value Z(3, 1) = eps_Z.
  double big_D(int n, int k) const;
  double big_Z(int n, int k) const;
  bool big_D_defined(int n, int k) const;
  bool big_Z_defined(int n, int k) const;
  double eps_Z = 0;  // 0.00005

  // Loop corrections for (n, k) aggregates around an upright diagonal.
  double delta_loop(int n, int k) const;  // defined for six (n, k) pairs
  bool delta_loop_defined(int n, int k) const;
  double z_loop_4_2 = 0;  // -0.08582, the only tabulated z_loop entry

  // Erasure penalties for upright quarters (by diagonal height range) and
  // loop vertices.
  double xi_gamma = 0;        // 0.01561, diagonal in [2t0, 2.57]
  double xi_gamma_prime = 0;  // 0.00935, diagonal in [2.57, sqrt8]
  double xi_v = 0;            // 0.003521

  // Angle thresholds: every internal angle of a standard region is at least
  // angle_min_triangle; non-triangular regions obey the larger bound.  An
  // angle below flat_angle_threshold forces the opposite edge under sqrt8.
  double angle_min_triangle = 0;     // 0.8638
  double angle_min_nontriangle = 0;  // 1.153
  double flat_angle_threshold = 0;   // 1.32

  // Branching thresholds.
  double triangle_ysum_split = 0;   // 6.25 on y1+y2+y3 of a triangle
  double upright_height_split = 0;  // 2.696 on an upright diagonal
  double anchor_split = 0;          // 2.45 anchor distance
  double flat_y1_split = 0;         // 2.2 flat-quarter corner height
  double flat_diag_split = 0;       // 2.7 flat-quarter diagonal
  double type_a_edge_split = 0;     // 2.77 subregion edge
  double quad_diag_cap = 0;         // 3.0 quad subregion diagonal

  // Flat key=value view of every constant, for `constants dump` and audits.
  std::map<std::string, double> derived_constants() const;
};

// The shared immutable table (constructed on first use).
const ConstantTable& constants();

// Construct a fresh table; tests use this to build perturbed copies.
ConstantTable make_constant_table();

}  // namespace tame
