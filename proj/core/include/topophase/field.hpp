#pragma once

#include "topophase/errors.hpp"
#include "topophase/vec3.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace topophase {

// ---------------------------------------------------------------------------
// Singular sets
// ---------------------------------------------------------------------------

struct LineSingularity {
    Vec3 point;
    Vec3 dir; // unit direction
};

struct PointSingularity {
    Vec3 point;
};

// Infinite cylindrical shell around an axis (field discontinuity surface).
struct ShellSingularity {
    Vec3 point;
    Vec3 dir; // unit axis direction
    double radius = 0.0;
};

using Singularity = std::variant<LineSingularity, PointSingularity, ShellSingularity>;

double distance_to(const Singularity& s, const Vec3& x);
std::string describe(const Singularity& s);

// ---------------------------------------------------------------------------
// Vector fields
// ---------------------------------------------------------------------------

// Serializable identity of a catalog field: kind string, parameter map and
// axis geometry, exactly as they appear in the scenario file.
struct FieldDescriptor {
    std::string kind;
    std::map<std::string, double> params;
    Vec3 axis_point{0, 0, 0};
    Vec3 axis_dir{0, 0, 1};

    bool operator==(const FieldDescriptor&) const = default;
};

// Immutable position -> Vec3 map with a declared singular set. Catalog
// instances carry their descriptor; synthetic fields (tests, pointwise
// compositions) do not and cannot be serialized.
class VectorField {
public:
    using EvalFn = std::function<Vec3(const Vec3&)>;

    VectorField(); // identically zero field

    static VectorField synthetic(EvalFn f, std::vector<Singularity> singularities = {});

    // Evaluates the field. Throws SingularityError if the result is not
    // finite (the evaluation point was on or numerically at a singularity).
    Vec3 operator()(const Vec3& x) const;

    const std::vector<Singularity>& singularities() const { return singularities_; }
    const std::optional<FieldDescriptor>& descriptor() const { return descriptor_; }

    // Distance from x to the nearest declared singularity (+inf when the
    // singular set is empty).
    double singularity_distance(const Vec3& x) const;

private:
    friend VectorField catalog_field(const FieldDescriptor& d);
    friend VectorField superpose(const std::vector<VectorField>& fields);

    EvalFn eval_;
    std::vector<Singularity> singularities_;
    std::optional<FieldDescriptor> descriptor_;
};

// Analytic field catalog (Heaviside-Lorentz, c = 1). Kinds:
//   uniform         strength * normalized(axis_dir), everywhere
//   line_charge_E   lambda/(2 pi r) r_hat around the axis
//   current_wire_B  current/(2 pi r) phi_hat around the axis
//   monopole_line_B g/(2 pi r) r_hat around the axis (nonphysical test field)
//   solenoid_B      B0 * axis_hat inside radius R, zero outside
//   point_charge_E  q/(4 pi r^2) r_hat from axis_point
//   monopole_point_B g/(4 pi r^2) r_hat from axis_point (nonphysical)
// Throws Error on unknown kind, missing/unknown params or degenerate axis.
VectorField catalog_field(const FieldDescriptor& d);
VectorField catalog_field(const std::string& kind, const std::map<std::string, double>& params,
                          const Vec3& axis_point = {0, 0, 0}, const Vec3& axis_dir = {0, 0, 1});

// Pointwise sum; singular set is the union of the parts.
VectorField superpose(const std::vector<VectorField>& fields);

// Scalar companion of VectorField, used by gradient stencils.
struct ScalarField {
    std::function<double(const Vec3&)> eval;
    std::vector<Singularity> singularities;
};

// ---------------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------------

// Spatial membership predicate. Closed under complement.
class Region {
public:
    enum class Kind { all_space, cylinder, half_space, complement };

    static Region all_space();
    static Region nothing(); // complement of all space
    static Region cylinder(const Vec3& axis_point, const Vec3& axis_dir, double radius);
    // Contains x with (x - point) . normal >= 0.
    static Region half_space(const Vec3& point, const Vec3& normal);
    static Region complement(Region inner);

    Region() : Region(nothing()) {}

    bool contains(const Vec3& x) const;

    Kind kind() const { return kind_; }
    const Vec3& axis_point() const { return point_; }
    const Vec3& axis_dir() const { return dir_; }
    const Vec3& point() const { return point_; }
    const Vec3& normal() const { return dir_; }
    double radius() const { return radius_; }
    const Region& inner() const { return *inner_; }

    bool operator==(const Region& other) const;

private:
    Region(Kind k) : kind_(k) {}

    Kind kind_;
    Vec3 point_{0, 0, 0};
    Vec3 dir_{0, 0, 1};
    double radius_ = 0.0;
    std::shared_ptr<const Region> inner_;
};

} // namespace topophase
