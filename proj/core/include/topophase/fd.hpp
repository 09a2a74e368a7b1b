#pragma once

#include "topophase/field.hpp"
#include "topophase/vec3.hpp"

namespace topophase {

// Central-difference stencil parameters. With h = 0 the step is chosen
// automatically as 1e-4 * (1 + |x|). The order-2 scheme samples at distance
// h from the evaluation point, the order-4 scheme at 2h; the point must keep
// that clearance from every declared singularity or the operators throw.
struct FDParams {
    double h = 0.0;
    int order = 2; // 2 or 4

    double step_at(const Vec3& x) const;
    double reach_at(const Vec3& x) const;
};

double fd_div(const VectorField& F, const Vec3& x, const FDParams& p = {});
Vec3 fd_curl(const VectorField& F, const Vec3& x, const FDParams& p = {});

// Directional derivative (a . grad) F.
Vec3 advect(const Vec3& a, const VectorField& F, const Vec3& x, const FDParams& p = {});

Vec3 fd_grad(const ScalarField& f, const Vec3& x, const FDParams& p = {});

} // namespace topophase
