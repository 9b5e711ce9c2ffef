#include "tame/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace tame {

double delta6(double x1, double x2, double x3, double x4, double x5,
              double x6) {
  return delta6_poly(x1, x2, x3, x4, x5, x6);
}

double delta6_x4(double x1, double x2, double x3, double x4, double x5,
                 double x6) {
  return delta6_x4_poly(x1, x2, x3, x4, x5, x6);
}

double dih_x(double x1, double x2, double x3, double x4, double x5,
             double x6) {
  const double d = delta6(x1, x2, x3, x4, x5, x6);
  const double d4 = delta6_x4(x1, x2, x3, x4, x5, x6);
  if (d < 0) throw std::domain_error("dih_x: delta6 < 0, not a simplex");
  const double s = std::sqrt(4.0 * x1 * d);
  if (s == 0) {
    // Flat simplex: the dihedral angle closes to 0 or opens to pi.
    if (d4 > 0) return 0.0;
    if (d4 < 0) return std::acos(-1.0);
    return std::acos(0.0);
  }
  return std::acos(0.0) - std::atan(d4 / s);
}

double dih(const Simplex& s) {
  const auto& y = s.y;
  return dih_x(y[0] * y[0], y[1] * y[1], y[2] * y[2], y[3] * y[3], y[4] * y[4],
               y[5] * y[5]);
}

// dih2 and dih3 reuse dih_x under the permutations that move the edge of
// interest into the first position while keeping opposite pairs opposite.
double dih2(const Simplex& s) {
  const auto& y = s.y;
  return dih_x(y[1] * y[1], y[0] * y[0], y[2] * y[2], y[4] * y[4], y[3] * y[3],
               y[5] * y[5]);
}

double dih3(const Simplex& s) {
  const auto& y = s.y;
  return dih_x(y[2] * y[2], y[0] * y[0], y[1] * y[1], y[5] * y[5], y[3] * y[3],
               y[4] * y[4]);
}

double sol(const Simplex& s) {
  return dih(s) + dih2(s) + dih3(s) - std::acos(-1.0);
}

double eta(double a, double b, double c) {
  const double u = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
  if (u <= 0) throw std::domain_error("eta: degenerate triangle");
  return a * b * c / std::sqrt(u);
}

double arc(double a, double b, double c) {
  if (a <= 0 || b <= 0) throw std::domain_error("arc: side must be positive");
  double t = (a * a + b * b - c * c) / (2.0 * a * b);
  if (t > 1) t = 1;
  if (t < -1) t = -1;
  return std::acos(t);
}

namespace {

double face_height_sq(double want, const char* who) {
  // Squared coordinate left after accounting for the components already
  // placed; tolerate tiny negative roundoff, reject genuine impossibility.
  if (want < 0) {
    if (want < -1e-9) throw std::domain_error(std::string(who) +
                                              ": lengths are not realizable");
    return 0.0;
  }
  return want;
}

}  // namespace

std::array<std::array<double, 3>, 4> place_simplex(const Simplex& s) {
  const double y1 = s.y[0], y2 = s.y[1], y3 = s.y[2];
  const double y4 = s.y[3], y5 = s.y[4], y6 = s.y[5];
  if (y1 <= 0 || y2 <= 0 || y3 <= 0 || y4 < 0 || y5 < 0 || y6 < 0)
    throw std::domain_error("place_simplex: edge lengths must be positive");

  // v1 on the x-axis.
  const std::array<double, 3> v0{0, 0, 0};
  const std::array<double, 3> v1{y1, 0, 0};

  // v2 in the plane z = 0: |v2| = y2 and |v2 - v1| = y6.
  const double ax = (y1 * y1 + y2 * y2 - y6 * y6) / (2.0 * y1);
  const double ay =
      std::sqrt(face_height_sq(y2 * y2 - ax * ax, "place_simplex"));
  if (ay == 0 && std::abs(y2 * y2 - ax * ax) > 1e-9)
    throw std::domain_error("place_simplex: face (y1, y2, y6) degenerate");
  const std::array<double, 3> v2{ax, ay, 0};

  // v3 from |v3| = y3, |v3 - v1| = y5, |v3 - v2| = y4.
  const double bx = (y1 * y1 + y3 * y3 - y5 * y5) / (2.0 * y1);
  if (ay == 0)
    throw std::domain_error("place_simplex: base triangle is degenerate");
  const double by = (y2 * y2 + y3 * y3 - y4 * y4 - 2.0 * bx * ax) / (2.0 * ay);
  const double bz =
      std::sqrt(face_height_sq(y3 * y3 - bx * bx - by * by, "place_simplex"));
  const std::array<double, 3> v3{bx, by, bz};

  return {v0, v1, v2, v3};
}

namespace {

std::array<double, 3> sub3(const std::array<double, 3>& a,
                           const std::array<double, 3>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<double, 3> cross3(const std::array<double, 3>& a,
                             const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm3(const std::array<double, 3>& a) { return std::sqrt(dot3(a, a)); }

}  // namespace

double dih_from_points(const std::array<std::array<double, 3>, 4>& p) {
  // Angle between the components of (v2 - v0) and (v3 - v0) orthogonal to
  // the edge direction (v1 - v0).
  const auto e = sub3(p[1], p[0]);
  const double elen = norm3(e);
  if (elen == 0) throw std::domain_error("dih_from_points: zero edge");
  const std::array<double, 3> u{e[0] / elen, e[1] / elen, e[2] / elen};
  auto perp = [&](const std::array<double, 3>& v) {
    const double t = dot3(v, u);
    return std::array<double, 3>{v[0] - t * u[0], v[1] - t * u[1],
                                 v[2] - t * u[2]};
  };
  const auto w2 = perp(sub3(p[2], p[0]));
  const auto w3 = perp(sub3(p[3], p[0]));
  return std::atan2(norm3(cross3(w2, w3)), dot3(w2, w3));
}

double sol_from_points(const std::array<std::array<double, 3>, 4>& p) {
  // Van Oosterom-Strackee: tan(solid/2) = |det[abc]| / (|a||b||c| +
  // (a.b)|c| + (a.c)|b| + (b.c)|a|), with the angle taken in [0, 2 pi).
  const auto a = sub3(p[1], p[0]);
  const auto b = sub3(p[2], p[0]);
  const auto c = sub3(p[3], p[0]);
  const double det = std::abs(dot3(a, cross3(b, c)));
  const double na = norm3(a), nb = norm3(b), nc = norm3(c);
  const double denom =
      na * nb * nc + dot3(a, b) * nc + dot3(a, c) * nb + dot3(b, c) * na;
  return 2.0 * std::atan2(det, denom);
}

}  // namespace tame
