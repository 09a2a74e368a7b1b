#include "topophase/dipole.hpp"

#include "topophase/phase.hpp"

namespace topophase {

namespace {

LagrangianBreakdown breakdown(const Scenario& s, const Vec3& x, const Vec3& v, bool corrected) {
    const double alpha = s.particle.alpha;
    const double m = s.particle.mass;
    Vec3 E = s.electric()(x);
    Vec3 B = s.magnetic()(x);

    Vec3 rest_field = E + cross(v, B);
    double ev = dot(E, v);

    LagrangianBreakdown out;
    out.kinetic = 0.5 * m * v.norm2();
    out.coupling = alpha * dot(v, cross(B, E));
    out.potential = 0.5 * alpha * E.norm2();
    out.mass_shift = 0.5 * alpha * B.norm2() * v.norm2();
    out.vB_term = -0.5 * alpha * dot(v, B) * dot(v, B);
    out.Ev_term = corrected ? -0.5 * alpha * ev * ev : 0.0;
    out.total = out.kinetic + 0.5 * alpha * rest_field.norm2() + out.Ev_term;
    return out;
}

} // namespace

Vec3 induced_dipole(const Vec3& E, const Vec3& B, const Vec3& v, double alpha) {
    return (E + cross(v, B)) * alpha;
}

LagrangianBreakdown whw_lagrangian(const Scenario& s, const Vec3& x, const Vec3& v) {
    return breakdown(s, x, v, false);
}

LagrangianBreakdown corrected_lagrangian(const Scenario& s, const Vec3& x, const Vec3& v) {
    return breakdown(s, x, v, true);
}

ForceResidual force_residual(const Scenario& s, const Vec3& x, const Vec3& v, const FDParams& p) {
    PhaseVectorField T = phase_vector_field(s);
    VectorField E = s.electric();
    VectorField B = s.magnetic();

    // Polarization potential and its second-order-in-v companion, per kind.
    ScalarField potential;
    ScalarField shift;
    const double v2 = v.norm2();
    switch (s.phase_kind) {
    case PhaseKind::hmw_induced: {
        double alpha = s.particle.alpha;
        potential.eval = [E, alpha](const Vec3& pt) { return 0.5 * alpha * E(pt).norm2(); };
        potential.singularities = E.singularities();
        shift.eval = [B, alpha, v2](const Vec3& pt) { return 0.5 * alpha * v2 * B(pt).norm2(); };
        shift.singularities = B.singularities();
        break;
    }
    case PhaseKind::ac_induced: {
        double chi = s.particle.chi;
        potential.eval = [B, chi](const Vec3& pt) { return 0.5 * chi * B(pt).norm2(); };
        potential.singularities = B.singularities();
        shift.eval = [E, chi, v2](const Vec3& pt) { return 0.5 * chi * v2 * E(pt).norm2(); };
        shift.singularities = E.singularities();
        break;
    }
    case PhaseKind::permanent_electric: {
        Vec3 d = s.particle.spin * s.particle.d;
        potential.eval = [E, d](const Vec3& pt) { return dot(d, E(pt)); };
        potential.singularities = E.singularities();
        shift.eval = [](const Vec3&) { return 0.0; };
        break;
    }
    }

    ForceResidual out;
    out.magnus = cross(v, fd_curl(T.field, x, p));
    out.potential_grad = fd_grad(potential, x, p);
    out.mass_shift_grad = fd_grad(shift, x, p);
    out.total = out.magnus + out.potential_grad;
    return out;
}

} // namespace topophase
