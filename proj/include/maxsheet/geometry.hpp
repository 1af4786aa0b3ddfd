#pragma once

#include <cmath>
#include <numbers>

namespace maxsheet {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double a) const { return {a * x, a * y}; }
    Vec2 operator/(double a) const { return {x / a, y / a}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double a, const Vec2& v) { return {a * v.x, a * v.y}; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
// z-component of the 3D cross product of planar vectors
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
// anti-clockwise rotation by pi/2
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }
inline Vec2 unit_dir(double angle) { return {std::cos(angle), std::sin(angle)}; }

// residual of angle against the nearest multiple of 2*pi, in [-pi, pi]
inline double mod_two_pi_centered(double angle) {
    return angle - kTwoPi * std::round(angle / kTwoPi);
}

// i-th point of the R2 quasi-random lattice in [0,1)^2 (deterministic)
inline Vec2 quasi_random_01(int i) {
    constexpr double g = 1.32471795724474602596;
    const double x = std::fmod(0.5 + (i + 1) / g, 1.0);
    const double y = std::fmod(0.5 + (i + 1) / (g * g), 1.0);
    return {x, y};
}

} // namespace maxsheet
