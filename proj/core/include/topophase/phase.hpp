#pragma once

#include "topophase/fd.hpp"
#include "topophase/path.hpp"
#include "topophase/scenario.hpp"
#include "topophase/vec3.hpp"

namespace topophase {

// The phase vector field T whose line integral along the beam path is the
// quantum phase:
//   hmw_induced        T = alpha B x E
//   ac_induced         T = chi B x E
//   permanent_electric T = B x d, d = d * spin (constant)
struct PhaseVectorField {
    VectorField field;
    PhaseKind kind = PhaseKind::hmw_induced;
};

PhaseVectorField phase_vector_field(const Scenario& s);

struct PhaseResult {
    double value = 0.0;              // radians; no mod-2pi reduction
    double abs_error_estimate = 0.0; // quadrature error bound
    long subdivisions = 0;           // adaptive bisections performed
};

// Adaptive-Simpson line integral of T along the path; for closed paths this
// is the loop phase. If the subdivision budget is exhausted the best value is
// returned with abs_error_estimate above tol.
PhaseResult line_phase(const PhaseVectorField& T, const Path& path, double tol = 1e-9);

// curl(B x E) three ways at one point: the standard calculus identity
//   B div E - E div B + (E.grad) B - (B.grad) E
// assembled from divergence/advection stencils, the direct stencil curl of
// the pointwise cross product, and the variant with the advection terms'
// signs swapped (kept for documentation; the stencil arbitrates).
struct CurlCrossResult {
    Vec3 identity_value;
    Vec3 fd_value;
    Vec3 sign_variant;
};

CurlCrossResult curl_cross_identity(const VectorField& E, const VectorField& B, const Vec3& x,
                                    const FDParams& p = {});

// curl(B x d) for constant d: identity -d div B + (d.grad) B versus the
// stencil curl.
struct CurlDipoleResult {
    Vec3 identity_value;
    Vec3 fd_value;
};

CurlDipoleResult curl_constant_dipole(const VectorField& B, const Vec3& d, const Vec3& x,
                                      const FDParams& p = {});

// Compares the phases of two open paths sharing endpoints against the flux
// of curl T through the ruled surface spanned between them. When the surface
// meets a singular set the flux is unreliable: singular_crossing is set and
// phase_diff alone is authoritative.
struct StokesResult {
    double phase_diff = 0.0;   // line_phase(a) - line_phase(b)
    double surface_flux = 0.0; // flux of curl T through the ruled surface
    bool singular_crossing = false;
};

StokesResult stokes_check(const PhaseVectorField& T, const Path& path_a, const Path& path_b,
                          double tol = 1e-9);

// The neglected dynamical contribution along a path: integral of U ds / v0,
// with U the kind's polarization potential (1/2 alpha E^2 for hmw_induced,
// 1/2 chi B^2 for ac_induced, d spin.E for permanent_electric).
PhaseResult dynamical_phase(const Scenario& s, const Path& path, double tol = 1e-9);

} // namespace topophase
