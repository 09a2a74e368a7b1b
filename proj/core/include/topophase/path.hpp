#pragma once

#include "topophase/vec3.hpp"

#include <memory>
#include <string>
#include <vector>

namespace topophase {

// Beam path: a piecewise-cubic spline through ordered control points,
// traversed at constant physical speed v0 < 1.
//
// Closed paths use a periodic spline (C2 across the seam). Open paths are
// clamped with end slopes estimated from the boundary control points.
// position(u) exposes the constant-speed parametrization on [0,1] (arc
// length u * length()); segment_* expose the raw piecewise polynomial,
// which quadratures use because it is smooth inside a segment.
//
// reversed_copy() flips the traversal orientation without rebuilding the
// spline: position(u) maps to the original position(1-u) and line integrals
// negate exactly.
class Path {
public:
    Path(std::string name, std::vector<Vec3> points, bool closed, double speed);

    const std::string& name() const { return name_; }
    bool closed() const { return closed_; }
    double speed() const { return speed_; }
    const std::vector<Vec3>& control_points() const { return points_; }

    bool reversed() const { return reversed_; }
    double orientation() const { return reversed_ ? -1.0 : 1.0; }
    Path reversed_copy() const;

    int segment_count() const;
    double length() const;

    // Arc-length fraction at which control point i sits (0 <= i <= n for
    // closed paths, the seam appearing at both 0 and 1).
    double knot_fraction(int i) const;

    Vec3 position(double u) const;
    Vec3 derivative(double u) const; // d(position)/du, magnitude = length()
    Vec3 unit_tangent(double u) const;

    Vec3 start() const { return position(0.0); }
    Vec3 end() const { return position(1.0); }

    // Raw segment evaluation in the base (unreversed) orientation, local
    // parameter t in [0,1].
    Vec3 segment_position(int seg, double t) const;
    Vec3 segment_derivative(int seg, double t) const;
    double segment_length(int seg) const;

    struct Spline; // opaque piecewise-cubic representation

private:
    std::string name_;
    std::vector<Vec3> points_;
    bool closed_ = false;
    double speed_ = 0.0;
    bool reversed_ = false;
    std::shared_ptr<const Spline> spline_;
};

} // namespace topophase
