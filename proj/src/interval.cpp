#include "tame/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tame {

namespace {

// One-ulp outward nudges for correctly rounded operations.
double down(double v) {
  return std::nextafter(v, -std::numeric_limits<double>::infinity());
}
double up(double v) {
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}

// libm atan/acos are faithfully rounded but not correctly rounded; pad their
// results by a few ulps to absorb the last-digit uncertainty.
constexpr int kLibmPadUlps = 4;

double pad_down(double v) {
  for (int i = 0; i < kLibmPadUlps; ++i) v = down(v);
  return v;
}
double pad_up(double v) {
  for (int i = 0; i < kLibmPadUlps; ++i) v = up(v);
  return v;
}

}  // namespace

Interval::Interval(double l, double h) : lo(l), hi(h) {
  if (!(l <= h))
    throw std::invalid_argument("Interval: endpoints out of order or NaN");
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = down(a.lo + b.lo);
  r.hi = up(a.hi + b.hi);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = down(a.lo - b.hi);
  r.hi = up(a.hi - b.lo);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r;
  r.lo = -a.hi;
  r.hi = -a.lo;
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Interval r;
  r.lo = down(std::min(std::min(p1, p2), std::min(p3, p4)));
  r.hi = up(std::max(std::max(p1, p2), std::max(p3, p4)));
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0 && b.hi >= 0)
    throw std::domain_error("interval division: denominator contains zero");
  const double q1 = a.lo / b.lo, q2 = a.lo / b.hi;
  const double q3 = a.hi / b.lo, q4 = a.hi / b.hi;
  Interval r;
  r.lo = down(std::min(std::min(q1, q2), std::min(q3, q4)));
  r.hi = up(std::max(std::max(q1, q2), std::max(q3, q4)));
  return r;
}

Interval square(const Interval& a) {
  Interval r;
  if (a.lo >= 0) {
    r.lo = down(a.lo * a.lo);
    r.hi = up(a.hi * a.hi);
  } else if (a.hi <= 0) {
    r.lo = down(a.hi * a.hi);
    r.hi = up(a.lo * a.lo);
  } else {
    r.lo = 0;
    r.hi = up(std::max(a.lo * a.lo, a.hi * a.hi));
  }
  return r;
}

Interval sqrt(const Interval& a) {
  if (a.hi < 0) throw std::domain_error("interval sqrt: negative interval");
  Interval r;
  r.lo = a.lo <= 0 ? 0.0 : down(std::sqrt(a.lo));
  r.hi = up(std::sqrt(a.hi));
  return r;
}

Interval atan(const Interval& a) {
  Interval r;
  r.lo = pad_down(std::atan(a.lo));
  r.hi = pad_up(std::atan(a.hi));
  return r;
}

Interval acos(const Interval& a) {
  const double lo = std::max(a.lo, -1.0), hi = std::min(a.hi, 1.0);
  if (lo > hi) throw std::domain_error("interval acos: outside [-1, 1]");
  Interval r;
  r.lo = std::max(0.0, pad_down(std::acos(hi)));
  r.hi = std::min(pad_up(std::acos(lo)), up(std::acos(-1.0)));
  return r;
}

Interval pi_interval() {
  const double pi = std::acos(-1.0);
  return Interval(down(pi), up(pi));
}

Interval pi_half_interval() {
  const double h = std::acos(0.0);
  return Interval(down(h), up(h));
}

namespace {

using XBox = std::array<Interval, 6>;

// Both arguments enclose the same set of real values, so the intersection is
// nonempty and encloses it as well.
Interval meet(const Interval& a, const Interval& b) {
  return Interval(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
}

XBox center_of(const XBox& x) {
  XBox m;
  for (int i = 0; i < 6; ++i) m[i] = Interval(mid(x[i]));
  return m;
}

// Mean value form around the box midpoint: for convex X and differentiable f,
// f(x) lies in f(m) + sum_i f_i(X) (X_i - m_i).  Its overestimation shrinks
// quadratically with the box width, while plain polynomial evaluation only
// improves linearly, so the meet of the two stays tight at every scale.
Interval mean_value_delta6(const XBox& x) {
  const XBox m = center_of(x);
  Interval acc = delta6_poly(m[0], m[1], m[2], m[3], m[4], m[5]);
  for (int i = 0; i < 6; ++i)
    acc = acc + delta6_partial_poly(i, x) * (x[i] - m[i]);
  return acc;
}

Interval mean_value_delta6_x4(const XBox& x) {
  const XBox m = center_of(x);
  Interval acc = delta6_x4_poly(m[0], m[1], m[2], m[3], m[4], m[5]);
  for (int i = 0; i < 6; ++i)
    acc = acc + delta6_x4_partial_poly(i, x) * (x[i] - m[i]);
  return acc;
}

}  // namespace

Interval delta6(const Interval& x1, const Interval& x2, const Interval& x3,
                const Interval& x4, const Interval& x5, const Interval& x6) {
  const XBox x{x1, x2, x3, x4, x5, x6};
  return meet(delta6_poly(x1, x2, x3, x4, x5, x6), mean_value_delta6(x));
}

Interval delta6_x4(const Interval& x1, const Interval& x2, const Interval& x3,
                   const Interval& x4, const Interval& x5,
                   const Interval& x6) {
  const XBox x{x1, x2, x3, x4, x5, x6};
  return meet(delta6_x4_poly(x1, x2, x3, x4, x5, x6),
              mean_value_delta6_x4(x));
}

Interval delta6(const IntervalBox& b) {
  return delta6(square(b.y[0]), square(b.y[1]), square(b.y[2]),
                square(b.y[3]), square(b.y[4]), square(b.y[5]));
}

Interval dih_x(const Interval& x1, const Interval& x2, const Interval& x3,
               const Interval& x4, const Interval& x5, const Interval& x6) {
  const Interval d = delta6(x1, x2, x3, x4, x5, x6);
  if (d.hi < 0)
    throw std::domain_error("interval dih_x: no simplex in the box");
  const Interval d4 = delta6_x4(x1, x2, x3, x4, x5, x6);
  const Interval s = sqrt(Interval(4.0) * x1 * d);
  const Interval pi = pi_interval();

  if (d.lo > 0 && s.lo > 0) {
    Interval enc = pi_half_interval() - atan(d4 / s);
    // Mean value form for the angle itself.  Differentiating
    // pi/2 - atan(delta6_x4 / sqrt(4 x1 delta6)) and clearing
    // 4 x1 delta6 + delta6_x4^2 = heron16(x1,x2,x6) heron16(x1,x3,x5) from
    // the denominator gives, with D = delta6, D4 = delta6_x4, and D_i, D4_i
    // their partial derivatives,
    //   d(dih)/dx_1 = -(2 x1 D D4_1 - D D4 - x1 D_1 D4) / (sqrt(x1 D) u u')
    //   d(dih)/dx_i = -sqrt(x1) (2 D D4_i - D4 D_i) / (sqrt(D) u u').
    const Interval u126 = heron16_poly(x1, x2, x6);
    const Interval u135 = heron16_poly(x1, x3, x5);
    if (x1.lo > 0 && u126.lo > 0 && u135.lo > 0) {
      const XBox x{x1, x2, x3, x4, x5, x6};
      const XBox m = center_of(x);
      const Interval dm = delta6_poly(m[0], m[1], m[2], m[3], m[4], m[5]);
      const Interval pm = Interval(4.0) * m[0] * dm;
      if (dm.lo > 0 && pm.lo > 0) {
        const Interval d4m =
            delta6_x4_poly(m[0], m[1], m[2], m[3], m[4], m[5]);
        Interval acc = pi_half_interval() - atan(d4m / sqrt(pm));
        const Interval uu = u126 * u135;
        const Interval denom1 = sqrt(x1 * d) * uu;
        const Interval denom = sqrt(d) * uu;
        const Interval rx1 = sqrt(x1);
        const Interval two(2.0);
        for (int i = 0; i < 6; ++i) {
          const Interval di = delta6_partial_poly(i, x);
          const Interval d4i = delta6_x4_partial_poly(i, x);
          const Interval g =
              i == 0
                  ? -((two * x1 * d * d4i - d * d4 - x1 * di * d4) / denom1)
                  : -(rx1 * (two * d * d4i - d4 * di) / denom);
          acc = acc + g * (x[i] - m[i]);
        }
        enc = meet(enc, acc);
      }
    }
    return Interval(std::max(0.0, enc.lo), std::min(enc.hi, pi.hi));
  }

  // delta6 can vanish inside the box.  As delta6 -> 0 the angle tends to 0
  // where delta6_x4 > 0 and to pi where delta6_x4 < 0, so a constant sign
  // still pins one end of the enclosure via the monotone bound
  // atan(d4 / s) >= atan(d4.lo / s.hi) (d4 > 0), and symmetrically below.
  if (d4.lo > 0 && s.hi > 0) {
    const Interval t = pi_half_interval() -
                       atan(Interval(d4.lo) / Interval(s.hi));
    return Interval(0.0, std::max(0.0, t.hi));
  }
  if (d4.hi < 0 && s.hi > 0) {
    const Interval t = pi_half_interval() -
                       atan(Interval(d4.hi) / Interval(s.hi));
    return Interval(std::min(t.lo, pi.hi), pi.hi);
  }
  return Interval(0.0, pi.hi);
}

Interval dih(const IntervalBox& b) {
  return dih_x(square(b.y[0]), square(b.y[1]), square(b.y[2]),
               square(b.y[3]), square(b.y[4]), square(b.y[5]));
}

Interval dih2(const IntervalBox& b) {
  return dih_x(square(b.y[1]), square(b.y[0]), square(b.y[2]),
               square(b.y[4]), square(b.y[3]), square(b.y[5]));
}

Interval dih3(const IntervalBox& b) {
  return dih_x(square(b.y[2]), square(b.y[0]), square(b.y[1]),
               square(b.y[5]), square(b.y[3]), square(b.y[4]));
}

Interval sol(const IntervalBox& b) {
  const Interval s = dih(b) + dih2(b) + dih3(b) - pi_interval();
  return Interval(std::max(0.0, s.lo), s.hi);
}

Interval eta(const Interval& a, const Interval& b, const Interval& c) {
  const Interval u =
      (a + b + c) * (b + c - a) * (a + c - b) * (a + b - c);
  if (u.lo <= 0)
    throw std::domain_error("interval eta: possibly degenerate triangle");
  return a * b * c / sqrt(u);
}

Interval arc(const Interval& a, const Interval& b, const Interval& c) {
  if (a.lo <= 0 || b.lo <= 0)
    throw std::domain_error("interval arc: sides must be positive");
  const Interval t = (square(a) + square(b) - square(c)) /
                     (Interval(2.0) * a * b);
  return acos(t);
}

}  // namespace tame
