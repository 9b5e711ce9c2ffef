#include "tame/constants.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace tame {
namespace {

// Printed decimals are parsed from strings so the source shows exactly the
// published digits.
double dec(const char* s) { return std::strtod(s, nullptr); }

void check(bool ok, const char* what) {
  if (!ok) throw std::out_of_range(what);
}

}  // namespace

double ConstantTable::c_of(int n) const {
  check(n >= 3, "c(n): face length must be at least 3");
  switch (n) {
    case 3: return dec("1");
    case 4: return dec("0");
    case 5: return dec("-1.03");
    case 6: return dec("-2.06");
    default: return dec("-3.03");
  }
}

double ConstantTable::d_of(int n) const {
  check(n >= 3, "d(n): face length must be at least 3");
  switch (n) {
    case 3: return dec("0");
    case 4: return dec("2.378");
    case 5: return dec("4.896");
    case 6: return dec("7.414");
    case 7: return dec("9.932");
    case 8: return dec("10.916");
    default: return squander_target;
  }
}

double ConstantTable::a_of(int n) const {
  check(n >= 0, "a(n): triangle count must be nonnegative");
  switch (n) {
    case 0:
    case 1:
    case 2: return squander_target;
    case 3: return dec("1.4");
    case 4: return dec("1.5");
    default: return dec("0");
  }
}

namespace {
// b(p, q) entries below the squander target, row-major by (p, q).
struct BEntry {
  int p, q;
  const char* value;
};
constexpr BEntry kBTable[] = {
    {0, 3, "7.135"},  {0, 4, "10.649"}, {1, 2, "6.95"},  {1, 3, "7.135"},
    {2, 1, "8.5"},    {2, 2, "4.756"},  {2, 3, "12.981"},
    {3, 1, "3.642"},  {3, 2, "8.334"},
    {4, 0, "4.139"},  {4, 1, "3.781"},
    {5, 0, "0.55"},   {5, 1, "11.22"},
    {6, 0, "6.339"},
};
}  // namespace

double ConstantTable::b_of(int p, int q) const {
  check(p >= 0 && q >= 0, "b(p, q): counts must be nonnegative");
  for (const BEntry& e : kBTable)
    if (e.p == p && e.q == q) return dec(e.value);
  return squander_target;
}

const std::vector<std::pair<int, int>>& ConstantTable::b_table_entries() const {
  static const std::vector<std::pair<int, int>> entries = [] {
    std::vector<std::pair<int, int>> v;
    for (const BEntry& e : kBTable) v.emplace_back(e.p, e.q);
    return v;
  }();
  return entries;
}

double ConstantTable::t_of(int n) const {
  switch (n) {
    case 4: return dec("0.1317");
    case 5: return dec("0.27113");
    case 6: return dec("0.41056");
    case 7: return dec("0.54999");
    case 8: return dec("0.6045");
    default: check(false, "t(n): n must be in 4..8"); return 0;
  }
}

double ConstantTable::s_of(int n) const {
  switch (n) {
    case 5: return dec("-0.05704");
    case 6: return dec("-0.11408");
    case 7: return dec("-0.17112");
    case 8: return dec("-0.22816");
    default: check(false, "s(n): n must be in 5..8"); return 0;
  }
}

bool ConstantTable::big_D_defined(int n, int k) const {
  return k >= 0 && k <= n && n + k >= 4 && n + k <= 8;
}

double ConstantTable::big_D(int n, int k) const {
  check(big_D_defined(n, k), "D(n, k): need 0 <= k <= n and 4 <= n+k <= 8");
  return t_of(n + k) - dec("0.06585") * k;
}

bool ConstantTable::big_Z_defined(int n, int k) const {
  if (n == 3 && k == 1) return true;
  return k >= 0 && k <= n && n + k >= 5 && n + k <= 8;
}

double ConstantTable::big_Z(int n, int k) const {
  check(big_Z_defined(n, k), "Z(n, k): need 0 <= k <= n and 5 <= n+k <= 8");
  if (n == 3 && k == 1) return eps_Z;
  return s_of(n + k) - k * eps_Z;
}

bool ConstantTable::delta_loop_defined(int n, int k) const {
  return (n == 4 && k >= 0 && k <= 3) || (n == 5 && (k == 0 || k == 1));
}

double ConstantTable::delta_loop(int n, int k) const {
  check(delta_loop_defined(n, k), "delta_loop(n, k): untabulated pair");
  if (n == 4) {
    switch (k) {
      case 0: return dec("0.0045");
      case 1: return dec("0.00272");
      case 2: return dec("0.12034");
      case 3: return dec("0.29426");
    }
  }
  return k == 0 ? dec("0.09537") : dec("0.24939");
}

ConstantTable make_constant_table() {
  ConstantTable t;
  t.t0 = dec("1.255");
  t.two_t0 = dec("2.51");
  t.sqrt2 = std::sqrt(2.0);
  t.sqrt8 = std::sqrt(8.0);

  const double pi = std::numbers::pi;
  const double theta = std::atan(t.sqrt2 / 5.0);
  t.delta_tet = t.sqrt8 * theta;
  t.delta_oct = pi / t.sqrt8 - t.delta_tet / 2.0;
  t.pt = -pi / 3.0 + t.sqrt2 * t.delta_tet;
  t.eight_pt = 8.0 * t.pt;
  t.zeta = 1.0 / (2.0 * theta);

  t.squander_target = dec("14.8");
  t.score_target = dec("8");
  t.five_triangle_cover = dec("0.55");
  t.eps_Z = dec("0.00005");
  t.z_loop_4_2 = dec("-0.08582");

  t.xi_gamma = dec("0.01561");
  t.xi_gamma_prime = dec("0.00935");
  t.xi_v = dec("0.003521");

  t.angle_min_triangle = dec("0.8638");
  t.angle_min_nontriangle = dec("1.153");
  t.flat_angle_threshold = dec("1.32");

  t.triangle_ysum_split = dec("6.25");
  t.upright_height_split = dec("2.696");
  t.anchor_split = dec("2.45");
  t.flat_y1_split = dec("2.2");
  t.flat_diag_split = dec("2.7");
  t.type_a_edge_split = dec("2.77");
  t.quad_diag_cap = dec("3.0");
  return t;
}

const ConstantTable& constants() {
  static const ConstantTable table = make_constant_table();
  return table;
}

std::map<std::string, double> ConstantTable::derived_constants() const {
  std::map<std::string, double> m;
  m["t0"] = t0;
  m["two_t0"] = two_t0;
  m["sqrt2"] = sqrt2;
  m["sqrt8"] = sqrt8;
  m["delta_tet"] = delta_tet;
  m["delta_oct"] = delta_oct;
  m["pt"] = pt;
  m["eight_pt"] = eight_pt;
  m["zeta"] = zeta;
  m["four_pi_zeta_minus_eight"] = 4.0 * std::numbers::pi * zeta - 8.0;
  m["squander_target"] = squander_target;
  m["score_target"] = score_target;
  m["five_triangle_cover"] = five_triangle_cover;
  m["eps_Z"] = eps_Z;
  m["z_loop_4_2"] = z_loop_4_2;
  m["xi_gamma"] = xi_gamma;
  m["xi_gamma_prime"] = xi_gamma_prime;
  m["xi_v"] = xi_v;
  m["angle_min_triangle"] = angle_min_triangle;
  m["angle_min_nontriangle"] = angle_min_nontriangle;
  m["flat_angle_threshold"] = flat_angle_threshold;
  m["triangle_ysum_split"] = triangle_ysum_split;
  m["upright_height_split"] = upright_height_split;
  m["anchor_split"] = anchor_split;
  m["flat_y1_split"] = flat_y1_split;
  m["flat_diag_split"] = flat_diag_split;
  m["type_a_edge_split"] = type_a_edge_split;
  m["quad_diag_cap"] = quad_diag_cap;
  for (int n = 3; n <= 9; ++n) {
    m["c_" + std::to_string(n)] = c_of(n);
    m["d_" + std::to_string(n)] = d_of(n);
  }
  for (int n = 0; n <= 5; ++n) m["a_" + std::to_string(n)] = a_of(n);
  for (const auto& [p, q] : b_table_entries())
    m["b_" + std::to_string(p) + "_" + std::to_string(q)] = b_of(p, q);
  for (int n = 4; n <= 8; ++n) m["t_" + std::to_string(n)] = t_of(n);
  for (int n = 5; n <= 8; ++n) m["s_" + std::to_string(n)] = s_of(n);
  for (int n = 3; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      if (big_D_defined(n, k))
        m["D_" + std::to_string(n) + "_" + std::to_string(k)] = big_D(n, k);
      if (big_Z_defined(n, k))
        m["Z_" + std::to_string(n) + "_" + std::to_string(k)] = big_Z(n, k);
      if (delta_loop_defined(n, k))
        m["delta_loop_" + std::to_string(n) + "_" + std::to_string(k)] =
            delta_loop(n, k);
    }
  return m;
}

}  // namespace tame
