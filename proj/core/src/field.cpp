#include "topophase/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace topophase {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double four_pi = 4.0 * std::numbers::pi;

std::string vec_str(const Vec3& v) {
    std::ostringstream os;
    os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
    return os.str();
}

// Decomposition of x relative to an axis (point p, unit direction n).
struct AxisFrame {
    Vec3 radial;  // component of x - p perpendicular to the axis
    double r;     // |radial|
};

AxisFrame axis_frame(const Vec3& x, const Vec3& p, const Vec3& n) {
    Vec3 rel = x - p;
    Vec3 radial = rel - n * dot(rel, n);
    return {radial, radial.norm()};
}

double require_param(const FieldDescriptor& d, const std::string& key) {
    auto it = d.params.find(key);
    if (it == d.params.end())
        throw Error("field kind '" + d.kind + "' requires parameter '" + key + "'");
    if (!std::isfinite(it->second))
        throw Error("field parameter '" + key + "' is not finite");
    return it->second;
}

void reject_unknown_params(const FieldDescriptor& d, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : d.params) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok)
            throw Error("field kind '" + d.kind + "' does not take parameter '" + key + "'");
        (void)value;
    }
}

Vec3 unit_axis(const FieldDescriptor& d) {
    double n = d.axis_dir.norm();
    if (n < 1e-12) throw Error("degenerate axis direction for field kind '" + d.kind + "'");
    return d.axis_dir / n;
}

} // namespace

double distance_to(const Singularity& s, const Vec3& x) {
    if (const auto* line = std::get_if<LineSingularity>(&s)) {
        Vec3 rel = x - line->point;
        return (rel - line->dir * dot(rel, line->dir)).norm();
    }
    if (const auto* pt = std::get_if<PointSingularity>(&s)) {
        return (x - pt->point).norm();
    }
    const auto& shell = std::get<ShellSingularity>(s);
    Vec3 rel = x - shell.point;
    double r = (rel - shell.dir * dot(rel, shell.dir)).norm();
    return std::abs(r - shell.radius);
}

std::string describe(const Singularity& s) {
    if (const auto* line = std::get_if<LineSingularity>(&s))
        return "line through " + vec_str(line->point) + " along " + vec_str(line->dir);
    if (const auto* pt = std::get_if<PointSingularity>(&s))
        return "point at " + vec_str(pt->point);
    const auto& shell = std::get<ShellSingularity>(s);
    return "cylindrical shell of radius " + std::to_string(shell.radius) + " around " +
           vec_str(shell.point) + " along " + vec_str(shell.dir);
}

// ---------------------------------------------------------------------------
// VectorField
// ---------------------------------------------------------------------------

VectorField::VectorField() : eval_([](const Vec3&) { return Vec3{0, 0, 0}; }) {}

VectorField VectorField::synthetic(EvalFn f, std::vector<Singularity> singularities) {
    VectorField v;
    v.eval_ = std::move(f);
    v.singularities_ = std::move(singularities);
    return v;
}

Vec3 VectorField::operator()(const Vec3& x) const {
    Vec3 value = eval_(x);
    if (!value.finite())
        throw SingularityError("field evaluation at " + vec_str(x) +
                               " produced a non-finite value");
    return value;
}

double VectorField::singularity_distance(const Vec3& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : singularities_)
        best = std::min(best, distance_to(s, x));
    return best;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

VectorField catalog_field(const FieldDescriptor& d) {
    VectorField f;
    f.descriptor_ = d;

    const Vec3 p = d.axis_point;
    if (!p.finite() || !d.axis_dir.finite())
        throw Error("non-finite axis geometry for field kind '" + d.kind + "'");

    if (d.kind == "uniform") {
        reject_unknown_params(d, {"strength"});
        double s = require_param(d, "strength");
        Vec3 value = unit_axis(d) * s;
        f.eval_ = [value](const Vec3&) { return value; };
    } else if (d.kind == "line_charge_E") {
        reject_unknown_params(d, {"lambda"});
        double lambda = require_param(d, "lambda");
        Vec3 n = unit_axis(d);
        f.eval_ = [lambda, p, n](const Vec3& x) {
            auto frame = axis_frame(x, p, n);
            return frame.radial * (lambda / (two_pi * frame.r * frame.r));
        };
        f.singularities_.push_back(LineSingularity{p, n});
    } else if (d.kind == "current_wire_B") {
        reject_unknown_params(d, {"current"});
        double current = require_param(d, "current");
        Vec3 n = unit_axis(d);
        f.eval_ = [current, p, n](const Vec3& x) {
            auto frame = axis_frame(x, p, n);
            return cross(n, frame.radial) * (current / (two_pi * frame.r * frame.r));
        };
        f.singularities_.push_back(LineSingularity{p, n});
    } else if (d.kind == "monopole_line_B") {
        reject_unknown_params(d, {"g"});
        double g = require_param(d, "g");
        Vec3 n = unit_axis(d);
        f.eval_ = [g, p, n](const Vec3& x) {
            auto frame = axis_frame(x, p, n);
            return frame.radial * (g / (two_pi * frame.r * frame.r));
        };
        f.singularities_.push_back(LineSingularity{p, n});
    } else if (d.kind == "solenoid_B") {
        reject_unknown_params(d, {"B0", "radius"});
        double b0 = require_param(d, "B0");
        double radius = require_param(d, "radius");
        if (radius <= 0) throw Error("solenoid_B requires radius > 0");
        Vec3 n = unit_axis(d);
        Vec3 inside = n * b0;
        f.eval_ = [inside, radius, p, n](const Vec3& x) {
            auto frame = axis_frame(x, p, n);
            return frame.r < radius ? inside : Vec3{0, 0, 0};
        };
        f.singularities_.push_back(ShellSingularity{p, n, radius});
    } else if (d.kind == "point_charge_E") {
        reject_unknown_params(d, {"q"});
        double q = require_param(d, "q");
        f.eval_ = [q, p](const Vec3& x) {
            Vec3 rel = x - p;
            double r = rel.norm();
            return rel * (q / (four_pi * r * r * r));
        };
        f.singularities_.push_back(PointSingularity{p});
    } else if (d.kind == "monopole_point_B") {
        reject_unknown_params(d, {"g"});
        double g = require_param(d, "g");
        f.eval_ = [g, p](const Vec3& x) {
            Vec3 rel = x - p;
            double r = rel.norm();
            return rel * (g / (four_pi * r * r * r));
        };
        f.singularities_.push_back(PointSingularity{p});
    } else {
        throw Error("unknown field kind '" + d.kind + "'");
    }
    return f;
}

VectorField catalog_field(const std::string& kind, const std::map<std::string, double>& params,
                          const Vec3& axis_point, const Vec3& axis_dir) {
    return catalog_field(FieldDescriptor{kind, params, axis_point, axis_dir});
}

VectorField superpose(const std::vector<VectorField>& fields) {
    if (fields.size() == 1) return fields.front();
    VectorField out;
    std::vector<VectorField::EvalFn> evals;
    evals.reserve(fields.size());
    for (const auto& f : fields) {
        evals.push_back(f.eval_);
        out.singularities_.insert(out.singularities_.end(), f.singularities_.begin(),
                                  f.singularities_.end());
    }
    out.eval_ = [evals = std::move(evals)](const Vec3& x) {
        Vec3 sum{0, 0, 0};
        for (const auto& e : evals) sum += e(x);
        return sum;
    };
    return out;
}

// ---------------------------------------------------------------------------
// Region
// ---------------------------------------------------------------------------

Region Region::all_space() { return Region(Kind::all_space); }

Region Region::nothing() { return complement(all_space()); }

Region Region::cylinder(const Vec3& axis_point, const Vec3& axis_dir, double radius) {
    double n = axis_dir.norm();
    if (n < 1e-12) throw Error("degenerate axis direction for cylinder region");
    if (!(radius >= 0)) throw Error("cylinder region requires radius >= 0");
    Region r(Kind::cylinder);
    r.point_ = axis_point;
    r.dir_ = axis_dir / n;
    r.radius_ = radius;
    return r;
}

Region Region::half_space(const Vec3& point, const Vec3& normal) {
    double n = normal.norm();
    if (n < 1e-12) throw Error("degenerate normal for half-space region");
    Region r(Kind::half_space);
    r.point_ = point;
    r.dir_ = normal / n;
    return r;
}

Region Region::complement(Region inner) {
    Region r(Kind::complement);
    r.inner_ = std::make_shared<Region>(std::move(inner));
    return r;
}

bool Region::contains(const Vec3& x) const {
    switch (kind_) {
    case Kind::all_space:
        return true;
    case Kind::cylinder: {
        Vec3 rel = x - point_;
        Vec3 radial = rel - dir_ * dot(rel, dir_);
        return radial.norm() <= radius_;
    }
    case Kind::half_space:
        return dot(x - point_, dir_) >= 0.0;
    case Kind::complement:
        return !inner_->contains(x);
    }
    return false;
}

bool Region::operator==(const Region& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
    case Kind::all_space:
        return true;
    case Kind::cylinder:
        return point_ == other.point_ && dir_ == other.dir_ && radius_ == other.radius_;
    case Kind::half_space:
        return point_ == other.point_ && dir_ == other.dir_;
    case Kind::complement:
        return *inner_ == *other.inner_;
    }
    return false;
}

} // namespace topophase
