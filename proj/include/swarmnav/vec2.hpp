#pragma once

#include <cmath>

namespace swarmnav {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

// Zero vector when v is zero-length.
inline Vec2 unit(const Vec2& v) {
    const double n = v.norm();
    return n > 0.0 ? v / n : Vec2{};
}

// Scales v down to max_norm if it is longer; shorter vectors pass through.
inline Vec2 clamp_norm(const Vec2& v, double max_norm) {
    const double n = v.norm();
    return n > max_norm ? v * (max_norm / n) : v;
}

inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

}  // namespace swarmnav
