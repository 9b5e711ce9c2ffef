#pragma once
// Euclidean geometry of a 3-simplex with one distinguished vertex at the
// origin.  Edges are numbered so that y1, y2, y3 run from the origin to the
// other three vertices v1, v2, v3, and y4, y5, y6 are the opposite edges:
//
//   y4 = |v2 - v3|   (opposite y1)
//   y5 = |v1 - v3|   (opposite y2)
//   y6 = |v1 - v2|   (opposite y3)
//
// x_i denotes the squared length y_i^2.  All angles are in radians.

#include <array>

namespace tame {

// Discriminant polynomial of the squared edge lengths.  A length assignment
// with realizable faces embeds in R^3 iff delta6 >= 0, and the volume of the
// embedded simplex is sqrt(delta6)/12.  The polynomial is shared between the
// double and interval evaluations, so both always agree term for term.
template <class T>
T delta6_poly(const T& x1, const T& x2, const T& x3, const T& x4, const T& x5,
              const T& x6) {
  return x1 * x4 * (x2 + x3 + x5 + x6 - x1 - x4) +
         x2 * x5 * (x1 + x3 + x4 + x6 - x2 - x5) +
         x3 * x6 * (x1 + x2 + x4 + x5 - x3 - x6) - x2 * x3 * x4 -
         x1 * x3 * x5 - x1 * x2 * x6 - x4 * x5 * x6;
}

// Partial derivative of delta6_poly with respect to x4.
template <class T>
T delta6_x4_poly(const T& x1, const T& x2, const T& x3, const T& x4,
                 const T& x5, const T& x6) {
  return x1 * (x2 + x3 + x5 + x6 - x1 - x4 - x4) + x2 * x5 + x3 * x6 -
         x2 * x3 - x5 * x6;
}

// Every partial derivative of delta6_poly is delta6_x4_poly with permuted
// arguments, because relabeling the simplex vertices permutes the x_i while
// fixing delta6 and can move any slot into the fourth one.  Row i of this
// table lists the arguments (as 0-based slots) realizing d(delta6)/dx_{i+1}.
inline constexpr std::array<std::array<int, 6>, 6> kDelta6PartialSlots{{
    {{3, 1, 5, 0, 4, 2}},
    {{4, 0, 5, 1, 3, 2}},
    {{5, 1, 3, 2, 4, 0}},
    {{0, 1, 2, 3, 4, 5}},
    {{1, 0, 2, 4, 3, 5}},
    {{2, 0, 1, 5, 3, 4}},
}};

// d(delta6)/dx_{i+1} for 0 <= i < 6.
template <class T>
T delta6_partial_poly(int i, const std::array<T, 6>& x) {
  const std::array<int, 6>& p = kDelta6PartialSlots[i];
  return delta6_x4_poly(x[p[0]], x[p[1]], x[p[2]], x[p[3]], x[p[4]], x[p[5]]);
}

// d(delta6_x4)/dx_{i+1} for 0 <= i < 6; delta6_x4_poly is quadratic, so
// these are linear.
template <class T>
T delta6_x4_partial_poly(int i, const std::array<T, 6>& x) {
  switch (i) {
    case 0:
      return x[1] + x[2] + x[4] + x[5] - x[0] - x[0] - x[3] - x[3];
    case 1:
      return x[0] + x[4] - x[2];
    case 2:
      return x[0] + x[5] - x[1];
    case 3:
      return -(x[0] + x[0]);
    case 4:
      return x[0] + x[1] - x[5];
    default:
      return x[0] + x[2] - x[4];
  }
}

// 16 times the squared area of a triangle whose squared side lengths are
// a, b, c (Heron's formula in squared sides); positive iff the triangle is
// nondegenerate.  Satisfies the factorization
//   4 x1 delta6 + delta6_x4^2 = heron16(x1,x2,x6) * heron16(x1,x3,x5),
// which keeps the dihedral-angle gradient free of delta6_x4.
template <class T>
T heron16_poly(const T& a, const T& b, const T& c) {
  return T(2.0) * (a * b + b * c + c * a) - a * a - b * b - c * c;
}

double delta6(double x1, double x2, double x3, double x4, double x5,
              double x6);
double delta6_x4(double x1, double x2, double x3, double x4, double x5,
                 double x6);

// Edge lengths of a simplex, ordered y1..y6 as above.
struct Simplex {
  std::array<double, 6> y{};
};

inline Simplex simplex(double y1, double y2, double y3, double y4, double y5,
                       double y6) {
  return Simplex{{y1, y2, y3, y4, y5, y6}};
}

// Dihedral angle along the first edge (origin, v1), computed from squared
// lengths as pi/2 - arctan(delta6_x4 / sqrt(4 x1 delta6)).  Degenerate
// simplices (delta6 == 0) get the limiting value 0 or pi depending on the
// sign of delta6_x4.  Throws std::domain_error when delta6 < 0.
double dih_x(double x1, double x2, double x3, double x4, double x5, double x6);

double dih(const Simplex& s);   // dihedral angle along y1
double dih2(const Simplex& s);  // along y2
double dih3(const Simplex& s);  // along y3

// Solid angle at the origin: dih + dih2 + dih3 - pi.
double sol(const Simplex& s);

// Circumradius of a triangle with side lengths a, b, c.  Throws
// std::domain_error for degenerate triangles.
double eta(double a, double b, double c);

// Angle of a triangle between the sides of lengths a and b, facing the side
// of length c.  Arguments violating the triangle inequality by no more than
// roundoff are clamped to the degenerate angles 0 / pi.
double arc(double a, double b, double c);

// Embeds the simplex in R^3 and returns the four vertices, the first at the
// origin.  The embedding is the reference ground truth for the closed forms
// above: v1 on the positive x-axis, v2 in the upper half plane z = 0, v3
// with z >= 0.  Throws std::domain_error when the lengths are not
// realizable (a face violates the triangle inequality or delta6 < 0).
std::array<std::array<double, 3>, 4> place_simplex(const Simplex& s);

// Dihedral angle along (v0, v1) measured from placed coordinates, and solid
// angle at v0 by the planar-excess formula on the placed triangle fan.
// Independent of the closed forms; used to cross-check them.
double dih_from_points(const std::array<std::array<double, 3>, 4>& p);
double sol_from_points(const std::array<std::array<double, 3>, 4>& p);

}  // namespace tame
