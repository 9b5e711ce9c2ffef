#pragma once
// Closed-interval arithmetic with outward rounding.  Every operation returns
// an interval that contains all pointwise results over its argument
// intervals.  Endpoints computed with correctly rounded IEEE operations
// (+, -, *, /, sqrt) are nudged one ulp outward; libm transcendentals
// (atan, acos), which are only faithfully rounded, get a wider fixed pad.
//
// The interval overloads of the simplex functions mirror the double API in
// geometry.hpp: same names, same argument conventions, same underlying
// polynomials (instantiated from the shared templates), so the two
// evaluations cannot drift apart.

#include <array>

#include "tame/geometry.hpp"

namespace tame {

struct Interval {
  double lo = 0, hi = 0;

  Interval() = default;
  explicit Interval(double v) : Interval(v, v) {}
  Interval(double l, double h);  // throws std::invalid_argument if l > h/NaN
};

inline double width(const Interval& a) { return a.hi - a.lo; }
inline double mid(const Interval& a) { return 0.5 * (a.lo + a.hi); }
inline bool contains(const Interval& a, double v) {
  return a.lo <= v && v <= a.hi;
}
inline bool subset(const Interval& a, const Interval& b) {
  return b.lo <= a.lo && a.hi <= b.hi;
}

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
// Throws std::domain_error when b straddles or touches zero.
Interval operator/(const Interval& a, const Interval& b);

// Tighter than a * a: the square never goes negative.
Interval square(const Interval& a);
// Requires hi >= 0; the negative part of the argument, if any, is roundoff
// leakage from an enclosure of a nonnegative quantity and is clamped to 0.
Interval sqrt(const Interval& a);
Interval atan(const Interval& a);
// Argument is intersected with [-1, 1]; throws std::domain_error when the
// whole interval lies outside.
Interval acos(const Interval& a);

Interval pi_interval();
Interval pi_half_interval();

// Six edge-length intervals, ordered like Simplex::y.
struct IntervalBox {
  std::array<Interval, 6> y{};
};

// Polynomials on squared lengths, same conventions as the double versions.
Interval delta6(const Interval& x1, const Interval& x2, const Interval& x3,
                const Interval& x4, const Interval& x5, const Interval& x6);
Interval delta6_x4(const Interval& x1, const Interval& x2, const Interval& x3,
                   const Interval& x4, const Interval& x5, const Interval& x6);

// delta6 over the squared coordinates of a length box.
Interval delta6(const IntervalBox& b);

// Dihedral angle along y1 over squared-length intervals.  When delta6 can
// reach 0 inside the box the formula degenerates; the enclosure then falls
// back to [0, pi], sharpened to one end when the sign of delta6_x4 is
// constant (the flat limit is 0 for positive delta6_x4 and pi for negative).
// Throws std::domain_error when delta6 < 0 over the whole box (no simplex).
Interval dih_x(const Interval& x1, const Interval& x2, const Interval& x3,
               const Interval& x4, const Interval& x5, const Interval& x6);

Interval dih(const IntervalBox& b);   // along y1
Interval dih2(const IntervalBox& b);  // along y2
Interval dih3(const IntervalBox& b);  // along y3
Interval sol(const IntervalBox& b);   // solid angle at the origin

Interval eta(const Interval& a, const Interval& b, const Interval& c);
Interval arc(const Interval& a, const Interval& b, const Interval& c);

}  // namespace tame
