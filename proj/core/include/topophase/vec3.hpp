#pragma once

#include <cmath>

namespace topophase {

// 3-vector in natural units (c = hbar = 1, Heaviside-Lorentz fields).
// Used for positions, velocities, field values and dipole moments alike.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    double& operator[](int i) { return (i == 0) ? x : (i == 1) ? y : z; }
    double operator[](int i) const { return (i == 0) ? x : (i == 1) ? y : z; }

    Vec3 operator+(const Vec3& v) const { return {x + v.x, y + v.y, z + v.z}; }
    Vec3 operator-(const Vec3& v) const { return {x - v.x, y - v.y, z - v.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

    Vec3& operator+=(const Vec3& v) {
        x += v.x; y += v.y; z += v.z;
        return *this;
    }
    Vec3& operator-=(const Vec3& v) {
        x -= v.x; y -= v.y; z -= v.z;
        return *this;
    }
    Vec3& operator*=(double s) {
        x *= s; y *= s; z *= s;
        return *this;
    }
    Vec3& operator/=(double s) {
        x /= s; y /= s; z /= s;
        return *this;
    }

    bool operator==(const Vec3& v) const { return x == v.x && y == v.y && z == v.z; }

    double dot(const Vec3& v) const { return x * v.x + y * v.y + z * v.z; }

    Vec3 cross(const Vec3& v) const {
        return {y * v.z - z * v.y, z * v.x - x * v.z, x * v.y - y * v.x};
    }

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    // Returns the zero vector when the norm is below eps.
    Vec3 normalized(double eps = 1e-12) const {
        double n = norm();
        return (n > eps) ? (*this / n) : Vec3{0, 0, 0};
    }

    bool is_zero(double eps = 1e-12) const { return norm2() < eps * eps; }

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.dot(b); }
inline Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }
inline double norm(const Vec3& v) { return v.norm(); }

} // namespace topophase
