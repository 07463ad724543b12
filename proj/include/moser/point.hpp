#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <utility>

#include "rational.hpp"

namespace moser {

namespace detail {
inline Rational frac(Integer num, Integer den) {
    Rational r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}
}  // namespace detail

// Lattice point a + b*w1 + c*w3 + d*w1*w3 with w1 = 1/2 + i*sqrt(3)/2 and
// w3 = 5/6 + i*sqrt(11)/6. Because {1, sqrt(3), sqrt(11), sqrt(33)} is
// linearly independent over Q, the coefficient quadruple identifies the
// point; coefficient equality is geometric equality.
struct Point {
    std::int64_t a = 0, b = 0, c = 0, d = 0;

    friend constexpr Point operator+(Point p, Point q) {
        return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d};
    }
    friend constexpr Point operator-(Point p, Point q) {
        return {p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d};
    }
    constexpr Point operator-() const { return {-a, -b, -c, -d}; }

    constexpr auto operator<=>(const Point&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, Point p) {
    return os << "(" << p.a << "," << p.b << "," << p.c << "," << p.d << ")";
}

inline constexpr Point kOne{1, 0, 0, 0};
inline constexpr Point kOmega1{0, 1, 0, 0};
inline constexpr Point kOmega3{0, 0, 1, 0};
inline constexpr Point kOmega13{0, 0, 0, 1};

// The eight coefficient unit vectors; each has modulus 1.
inline constexpr std::array<Point, 8> kUnitSteps{
    Point{1, 0, 0, 0},  Point{-1, 0, 0, 0}, Point{0, 1, 0, 0}, Point{0, -1, 0, 0},
    Point{0, 0, 1, 0},  Point{0, 0, -1, 0}, Point{0, 0, 0, 1}, Point{0, 0, 0, -1}};

// Multiplication by w1. Closure follows from w1^2 = w1 - 1.
constexpr Point rot60(Point p) { return {-p.b, p.a + p.b, -p.d, p.c + p.d}; }

// Coordinates of the embedded point over the basis {1, sqrt(33)} for the
// real part and {sqrt(3), sqrt(11)} for the imaginary part:
//   re = re0 + re33*sqrt(33),  im = im3*sqrt(3) + im11*sqrt(11).
struct ComplexParts {
    Rational re0, re33, im3, im11;
    bool operator==(const ComplexParts&) const = default;
};

inline ComplexParts to_complex(Point p) {
    using detail::frac;
    return {frac(12 * p.a + 6 * p.b + 10 * p.c + 5 * p.d, 12), frac(-p.d, 12),
            frac(6 * p.b + 5 * p.d, 12), frac(2 * p.c + p.d, 12)};
}

inline std::pair<double, double> to_xy(Point p) {
    ComplexParts z = to_complex(p);
    return {z.re0.get_d() + z.re33.get_d() * std::sqrt(33.0),
            z.im3.get_d() * std::sqrt(3.0) + z.im11.get_d() * std::sqrt(11.0)};
}

// Value u + v*sqrt(33) in Q(sqrt(33)). The representation is unique, so
// equality is componentwise; ordering is decided exactly by sign analysis.
struct QuadValue {
    Rational u, v;

    bool operator==(const QuadValue&) const = default;

    // Sign of u + v*sqrt(33): when u and v disagree in sign the comparison
    // reduces to u^2 vs 33 v^2 (squaring is monotone on same-signed reals).
    int sign() const {
        int su = sgn(u), sv = sgn(v);
        if (sv == 0) return su;
        if (su == 0) return sv;
        if (su == sv) return su;
        int c = cmp(Rational(u * u), Rational(33 * v * v));
        if (c == 0) return 0;
        // |u| > sqrt(33)|v| means u's sign wins, otherwise v's.
        return c > 0 ? su : sv;
    }

    double to_double() const { return u.get_d() + v.get_d() * std::sqrt(33.0); }
};

inline int compare(const QuadValue& x, const QuadValue& y) {
    return QuadValue{x.u - y.u, x.v - y.v}.sign();
}

inline bool operator<(const QuadValue& x, const QuadValue& y) { return compare(x, y) < 0; }

inline std::ostream& operator<<(std::ostream& os, const QuadValue& q) {
    return os << q.u.get_str() << (sgn(q.v) < 0 ? "" : "+") << q.v.get_str() << "*sqrt(33)";
}

// Exact squared distance |p - q|^2 as an element of Q(sqrt(33)).
// With D = p - q and part numerators over the common denominator 12,
//   n0 = 12a+6b+10c+5d, n33 = -d, n3 = 6b+5d, n11 = 2c+d,
// the squared modulus is
//   (n0^2 + 33 n33^2 + 3 n3^2 + 11 n11^2)/144 + (2 n0 n33 + 2 n3 n11)/144 * sqrt(33).
inline QuadValue sq_dist(Point p, Point q) {
    Point t = p - q;
    Integer n0 = 12 * t.a + 6 * t.b + 10 * t.c + 5 * t.d;
    Integer n33 = -t.d;
    Integer n3 = 6 * t.b + 5 * t.d;
    Integer n11 = 2 * t.c + t.d;
    return {detail::frac(n0 * n0 + 33 * n33 * n33 + 3 * n3 * n3 + 11 * n11 * n11, 144),
            detail::frac(2 * (n0 * n33 + n3 * n11), 144)};
}

inline bool is_unit_distance(Point p, Point q) {
    QuadValue s = sq_dist(p, q);
    return s.u == 1 && sgn(s.v) == 0;
}

}  // namespace moser
