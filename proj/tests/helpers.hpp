#pragma once

// Shared builders and independent oracles for the test suites. The quadrature
// oracle here is deliberately separate from the adaptive integrator in the
// library: it composites a fixed-order Gauss rule over the spline segments and
// only touches the public evaluation API.

#include "topophase/field.hpp"
#include "topophase/path.hpp"
#include "topophase/scenario.hpp"
#include "topophase/vec3.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace testutil {

using topophase::Path;
using topophase::Region;
using topophase::Scenario;
using topophase::Vec3;
using topophase::VectorField;

inline constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Geometry builders
// ---------------------------------------------------------------------------

inline std::vector<Vec3> circle_points(int n, double radius, Vec3 center = {0, 0, 0},
                                       int winding = 1) {
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * kPi * winding * k / n;
        pts.push_back(center + Vec3{radius * std::cos(th), radius * std::sin(th), 0.0});
    }
    return pts;
}

// Circle in a plane tilted about the x-axis.
inline std::vector<Vec3> tilted_circle_points(int n, double radius, double tilt) {
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * kPi * k / n;
        pts.push_back({radius * std::cos(th), radius * std::sin(th) * std::cos(tilt),
                       radius * std::sin(th) * std::sin(tilt)});
    }
    return pts;
}

// Arc of a circle around the z-axis, inclusive endpoints, z = 0.
inline std::vector<Vec3> arc_points(double radius, double th0, double th1, int n) {
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        double th = th0 + (th1 - th0) * k / (n - 1.0);
        pts.push_back({radius * std::cos(th), radius * std::sin(th), 0.0});
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Scenario builders
// ---------------------------------------------------------------------------

// Line charge lambda = 2 on the z-axis, uniform B0 = 3 z_hat, alpha = 1e-3.
// Loop phase of any coaxial enclosing loop: alpha * lambda * B0 = 6e-3.
inline Scenario wire_scenario(int loop_pts = 512, int arm_pts = 513) {
    Scenario s;
    s.particle.mass = 1.0;
    s.particle.alpha = 1e-3;
    s.e_components.push_back(topophase::catalog_field("line_charge_E", {{"lambda", 2.0}}));
    s.b_components.push_back(topophase::catalog_field("uniform", {{"strength", 3.0}}));
    s.paths.emplace_back("loop", circle_points(loop_pts, 1.0), true, 0.01);
    s.paths.emplace_back("arm_up", arc_points(1.0, 0.0, kPi, arm_pts), false, 0.01);
    s.paths.emplace_back("arm_down", arc_points(1.0, 0.0, -kPi, arm_pts), false, 0.01);
    s.excluded_region = Region::cylinder({0, 0, 0}, {0, 0, 1}, 0.05);
    return s;
}

// Uniform E and B only; every loop phase vanishes.
inline Scenario uniform_scenario() {
    Scenario s;
    s.particle.mass = 1.0;
    s.particle.alpha = 1e-3;
    s.e_components.push_back(
        topophase::catalog_field("uniform", {{"strength", 1.0}}, {0, 0, 0}, {1, 0, 0}));
    s.b_components.push_back(topophase::catalog_field("uniform", {{"strength", 3.0}}));
    s.paths.emplace_back("loop", circle_points(128, 1.0), true, 0.01);
    return s;
}

// ---------------------------------------------------------------------------
// Independent quadrature oracle (composite fixed-order Gauss-Legendre)
// ---------------------------------------------------------------------------

namespace detail {
// 8-point Gauss-Legendre rule on [0, 1].
inline constexpr double kNode[8] = {0.01985507175123188, 0.10166676129318664,
                                    0.2372337950418355,  0.40828267875217505,
                                    0.59171732124782495, 0.7627662049581645,
                                    0.89833323870681336, 0.98014492824876812};
inline constexpr double kWeight[8] = {0.05061426814518813, 0.11119051722668724,
                                      0.15685332293894364, 0.18134189168918099,
                                      0.18134189168918099, 0.15685332293894364,
                                      0.11119051722668724, 0.05061426814518813};
} // namespace detail

// Line integral of F . dr along the path.
inline double oracle_line_integral(const VectorField& F, const Path& path, int subdiv = 64) {
    double total = 0.0;
    for (int seg = 0; seg < path.segment_count(); ++seg) {
        for (int j = 0; j < subdiv; ++j) {
            double a = static_cast<double>(j) / subdiv;
            double width = 1.0 / subdiv;
            for (int i = 0; i < 8; ++i) {
                double t = a + width * detail::kNode[i];
                total += detail::kWeight[i] * width *
                         dot(F(path.segment_position(seg, t)), path.segment_derivative(seg, t));
            }
        }
    }
    return total * path.orientation();
}

// Integral of f(x) ds along the path.
inline double oracle_scalar_integral(const std::function<double(const Vec3&)>& f,
                                     const Path& path, int subdiv = 64) {
    double total = 0.0;
    for (int seg = 0; seg < path.segment_count(); ++seg) {
        for (int j = 0; j < subdiv; ++j) {
            double a = static_cast<double>(j) / subdiv;
            double width = 1.0 / subdiv;
            for (int i = 0; i < 8; ++i) {
                double t = a + width * detail::kNode[i];
                total += detail::kWeight[i] * width * f(path.segment_position(seg, t)) *
                         path.segment_derivative(seg, t).norm();
            }
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Randomness (fixed seeds; keep the suites deterministic)
// ---------------------------------------------------------------------------

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    Vec3 in_box(double half = 1.0) {
        return {uniform(-half, half), uniform(-half, half), uniform(-half, half)};
    }
    Vec3 unit() {
        while (true) {
            Vec3 v = in_box(1.0);
            double n = v.norm();
            if (n > 1e-3 && n <= 1.0) return v / n;
        }
    }
};

// Rotation matrix as three rows (for the rigid-rotation invariance tests).
struct Rotation {
    Vec3 rows[3];
    Vec3 apply(const Vec3& v) const {
        return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)};
    }
};

inline Rotation random_rotation(Rng& rng) {
    // Gram-Schmidt on random vectors.
    Vec3 a = rng.unit();
    Vec3 b = rng.unit();
    b = (b - a * dot(a, b)).normalized();
    Vec3 c = cross(a, b);
    return {{a, b, c}};
}

} // namespace testutil
