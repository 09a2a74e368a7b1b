#pragma once

#include "topophase/fd.hpp"
#include "topophase/scenario.hpp"
#include "topophase/vec3.hpp"

namespace topophase {

// Term-by-term decomposition of the lab-frame Lagrangian of a polarisable
// neutral particle,
//   L = 1/2 m v^2 + 1/2 alpha (E + v x B)^2            (uncorrected)
//   L = kinetic + potential + coupling + mass_shift + vB_term + Ev_term,
// where the corrected form adds Ev_term = -1/2 alpha (E.v)^2. `total` is the
// direct unexpanded evaluation; the named parts must sum to it.
struct LagrangianBreakdown {
    double kinetic = 0.0;    // 1/2 m v^2
    double coupling = 0.0;   // alpha v . (B x E)
    double potential = 0.0;  // 1/2 alpha E^2
    double mass_shift = 0.0; // 1/2 alpha B^2 v^2
    double vB_term = 0.0;    // -1/2 alpha (v . B)^2
    double Ev_term = 0.0;    // -1/2 alpha (E . v)^2, zero in the uncorrected form
    double total = 0.0;

    double sum_of_parts() const {
        return kinetic + coupling + potential + mass_shift + vB_term + Ev_term;
    }
    double interaction() const { return total - kinetic; }
};

// Classical force decomposition for L_int = v . T + U with static fields:
// force = v x curl T + grad U. A zero total certifies force-free motion.
// mass_shift_grad carries the gradient of the second-order-in-v piece; it is
// reported but excluded from the force-free total.
struct ForceResidual {
    Vec3 magnus;          // v x curl T
    Vec3 potential_grad;  // grad U
    Vec3 mass_shift_grad; // grad of 1/2 alpha v^2 B^2 (or the dual analogue)
    Vec3 total;           // magnus + potential_grad
};

// d = alpha (E + v x B), the rest-frame induced electric dipole moment.
Vec3 induced_dipole(const Vec3& E, const Vec3& B, const Vec3& v, double alpha);

// Uncorrected lab-frame Lagrangian (Ev_term forced to zero).
LagrangianBreakdown whw_lagrangian(const Scenario& s, const Vec3& x, const Vec3& v);

// Non-relativistic reduction including the -1/2 alpha (E.v)^2 term.
LagrangianBreakdown corrected_lagrangian(const Scenario& s, const Vec3& x, const Vec3& v);

ForceResidual force_residual(const Scenario& s, const Vec3& x, const Vec3& v,
                             const FDParams& p = {});

} // namespace topophase
