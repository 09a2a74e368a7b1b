#include "topophase/fd.hpp"

#include "topophase/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace topophase {

namespace {

void check_order(const FDParams& p) {
    if (p.order != 2 && p.order != 4)
        throw Error("finite-difference scheme order must be 2 or 4");
    if (p.h < 0 || !std::isfinite(p.h))
        throw Error("finite-difference step must be a finite value >= 0");
}

void check_clearance(double dist, const Vec3& x, double reach) {
    if (dist <= reach) {
        std::ostringstream os;
        os << "finite-difference stencil at (" << x.x << ", " << x.y << ", " << x.z
           << ") reaches within " << reach << " of a field singularity (distance " << dist << ")";
        throw SingularityError(os.str());
    }
}

// d/dx_axis of F, central differences.
Vec3 partial(const VectorField& F, const Vec3& x, int axis, double h, int order) {
    Vec3 e{0, 0, 0};
    e[axis] = 1.0;
    if (order == 2) {
        Vec3 fp = F(x + e * h);
        Vec3 fm = F(x - e * h);
        return (fp - fm) / (2.0 * h);
    }
    Vec3 fp2 = F(x + e * (2.0 * h));
    Vec3 fp1 = F(x + e * h);
    Vec3 fm1 = F(x - e * h);
    Vec3 fm2 = F(x - e * (2.0 * h));
    return (fm2 - fp2 + (fp1 - fm1) * 8.0) / (12.0 * h);
}

double partial_scalar(const ScalarField& f, const Vec3& x, int axis, double h, int order) {
    Vec3 e{0, 0, 0};
    e[axis] = 1.0;
    auto sample = [&](const Vec3& pt) {
        double v = f.eval(pt);
        if (!std::isfinite(v))
            throw SingularityError("scalar field evaluation produced a non-finite value");
        return v;
    };
    if (order == 2) return (sample(x + e * h) - sample(x - e * h)) / (2.0 * h);
    return (sample(x - e * (2.0 * h)) - sample(x + e * (2.0 * h)) +
            8.0 * (sample(x + e * h) - sample(x - e * h))) /
           (12.0 * h);
}

} // namespace

double FDParams::step_at(const Vec3& x) const {
    return h > 0 ? h : 1e-4 * (1.0 + x.norm());
}

double FDParams::reach_at(const Vec3& x) const {
    return step_at(x) * (order == 4 ? 2.0 : 1.0);
}

double fd_div(const VectorField& F, const Vec3& x, const FDParams& p) {
    check_order(p);
    double h = p.step_at(x);
    check_clearance(F.singularity_distance(x), x, p.reach_at(x));
    double sum = 0.0;
    for (int axis = 0; axis < 3; ++axis) sum += partial(F, x, axis, h, p.order)[axis];
    return sum;
}

Vec3 fd_curl(const VectorField& F, const Vec3& x, const FDParams& p) {
    check_order(p);
    double h = p.step_at(x);
    check_clearance(F.singularity_distance(x), x, p.reach_at(x));
    Vec3 dx = partial(F, x, 0, h, p.order);
    Vec3 dy = partial(F, x, 1, h, p.order);
    Vec3 dz = partial(F, x, 2, h, p.order);
    return {dy.z - dz.y, dz.x - dx.z, dx.y - dy.x};
}

Vec3 advect(const Vec3& a, const VectorField& F, const Vec3& x, const FDParams& p) {
    check_order(p);
    if (a.is_zero()) return {0, 0, 0};
    double h = p.step_at(x);
    check_clearance(F.singularity_distance(x), x, p.reach_at(x));
    Vec3 out{0, 0, 0};
    for (int axis = 0; axis < 3; ++axis) out += partial(F, x, axis, h, p.order) * a[axis];
    return out;
}

Vec3 fd_grad(const ScalarField& f, const Vec3& x, const FDParams& p) {
    check_order(p);
    double h = p.step_at(x);
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& s : f.singularities) dist = std::min(dist, distance_to(s, x));
    check_clearance(dist, x, p.reach_at(x));
    return {partial_scalar(f, x, 0, h, p.order), partial_scalar(f, x, 1, h, p.order),
            partial_scalar(f, x, 2, h, p.order)};
}

} // namespace topophase
