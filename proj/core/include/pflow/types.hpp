#pragma once

#include <array>
#include <cmath>

namespace pflow {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

/// Symmetric 2x2 tensor; the Frobenius norm counts the off-diagonal twice.
struct Sym2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;

    Sym2 operator+(Sym2 o) const { return {xx + o.xx, xy + o.xy, yy + o.yy}; }
    Sym2 operator-(Sym2 o) const { return {xx - o.xx, xy - o.xy, yy - o.yy}; }
    Sym2 operator*(double s) const { return {xx * s, xy * s, yy * s}; }
    double contract(Sym2 o) const { return xx * o.xx + 2.0 * xy * o.xy + yy * o.yy; }
    double norm2() const { return contract(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

struct Mat2 {
    // row-major: a(i,j)
    double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;

    Vec2 apply(Vec2 v) const { return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y}; }
    double norm() const { return std::sqrt(a00 * a00 + a01 * a01 + a10 * a10 + a11 * a11); }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 rotation(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c, -s, s, c};
    }
};

/// Q D Q^T for a rotation Q and symmetric D.
inline Sym2 rotate(const Mat2& q, Sym2 d) {
    const double b00 = q.a00 * d.xx + q.a01 * d.xy;
    const double b01 = q.a00 * d.xy + q.a01 * d.yy;
    const double b10 = q.a10 * d.xx + q.a11 * d.xy;
    const double b11 = q.a10 * d.xy + q.a11 * d.yy;
    return {b00 * q.a00 + b01 * q.a01, b00 * q.a10 + b01 * q.a11, b10 * q.a10 + b11 * q.a11};
}

}  // namespace pflow
