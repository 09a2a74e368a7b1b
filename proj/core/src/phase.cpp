#include "topophase/phase.hpp"

#include "topophase/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace topophase {

namespace {

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature (fixed traversal order, deterministic)
// ---------------------------------------------------------------------------

struct QuadAccumulator {
    double value = 0.0;
    double err = 0.0;
    long subdivisions = 0;
    long evals = 0;
    long eval_budget = 4'000'000;
};

double simpson(double fa, double fm, double fb, double width) {
    return ((fa + fb) + 4.0 * fm) * (width / 6.0);
}

void adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
           double fb, double whole, double tol, int depth, QuadAccumulator& acc) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    acc.evals += 2;
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double delta = (left + right) - whole;
    bool budget_out = acc.evals > acc.eval_budget;
    if (std::abs(delta) <= 15.0 * tol || depth <= 0 || budget_out) {
        acc.value += left + right + delta / 15.0;
        acc.err += std::abs(delta) / 15.0;
        return;
    }
    acc.subdivisions += 1;
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
    adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

void integrate_segment(const std::function<double(double)>& f, double tol, QuadAccumulator& acc) {
    double fa = f(0.0);
    double fm = f(0.5);
    double fb = f(1.0);
    acc.evals += 3;
    double whole = simpson(fa, fm, fb, 1.0);
    adapt(f, 0.0, 1.0, fa, fm, fb, whole, tol, 48, acc);
}

// Integrates f(seg, t) dt over every spline segment of the path (base
// orientation), distributing tol by arc length.
PhaseResult integrate_over_segments(const Path& path,
                                    const std::function<double(int, double)>& f, double tol) {
    if (!(tol > 0)) throw Error("quadrature tolerance must be > 0");
    QuadAccumulator acc;
    const double total = path.length();
    for (int seg = 0; seg < path.segment_count(); ++seg) {
        double share = std::max(path.segment_length(seg) / total, 1e-6);
        integrate_segment([&](double t) { return f(seg, t); }, tol * share, acc);
    }
    return {acc.value, acc.err, acc.subdivisions};
}

// ---------------------------------------------------------------------------
// Surface helpers
// ---------------------------------------------------------------------------

// 8-point Gauss-Legendre rule on [0, 1].
constexpr std::array<double, 8> kGaussNode01 = {
    0.01985507175123188, 0.10166676129318664, 0.2372337950418355, 0.40828267875217505,
    0.59171732124782495, 0.7627662049581645,  0.89833323870681336, 0.98014492824876812};
constexpr std::array<double, 8> kGaussWeight01 = {
    0.05061426814518813, 0.11119051722668724, 0.15685332293894364, 0.18134189168918099,
    0.18134189168918099, 0.15685332293894364, 0.11119051722668724, 0.05061426814518813};

void orthonormal_basis(const Vec3& n, Vec3& e1, Vec3& e2) {
    Vec3 seed = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = cross(n, seed).normalized();
    e2 = cross(n, e1);
}

// Winding number of the closed loop (a followed by b reversed) around an
// infinite line. Nonzero winding means any surface bounded by the loop is
// pierced by the line.
int boundary_winding(const Path& a, const Path& b, const LineSingularity& line) {
    Vec3 e1, e2;
    orthonormal_basis(line.dir, e1, e2);
    constexpr int kSamples = 512;
    auto angle_at = [&](const Vec3& x) {
        Vec3 rel = x - line.point;
        return std::atan2(dot(rel, e2), dot(rel, e1));
    };
    double accum = 0.0;
    double prev = 0.0;
    bool first = true;
    auto feed = [&](const Vec3& x) {
        double ang = angle_at(x);
        if (!first) {
            double d = ang - prev;
            while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
            while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
            accum += d;
        }
        prev = ang;
        first = false;
    };
    for (int k = 0; k <= kSamples; ++k) feed(a.position(static_cast<double>(k) / kSamples));
    for (int k = 0; k <= kSamples; ++k) feed(b.position(1.0 - static_cast<double>(k) / kSamples));
    return static_cast<int>(std::lround(accum / (2.0 * std::numbers::pi)));
}

} // namespace

// ---------------------------------------------------------------------------
// Phase vector field
// ---------------------------------------------------------------------------

PhaseVectorField phase_vector_field(const Scenario& s) {
    VectorField E = s.electric();
    VectorField B = s.magnetic();
    std::vector<Singularity> sing = E.singularities();
    sing.insert(sing.end(), B.singularities().begin(), B.singularities().end());

    PhaseVectorField out;
    out.kind = s.phase_kind;
    switch (s.phase_kind) {
    case PhaseKind::hmw_induced: {
        double alpha = s.particle.alpha;
        out.field = VectorField::synthetic(
            [E, B, alpha](const Vec3& x) { return cross(B(x), E(x)) * alpha; }, std::move(sing));
        break;
    }
    case PhaseKind::ac_induced: {
        double chi = s.particle.chi;
        out.field = VectorField::synthetic(
            [E, B, chi](const Vec3& x) { return cross(B(x), E(x)) * chi; }, std::move(sing));
        break;
    }
    case PhaseKind::permanent_electric: {
        if (!(s.particle.d > 0))
            throw Error("permanent_electric phase needs a dipole magnitude d > 0");
        Vec3 d = s.particle.spin * s.particle.d;
        out.field = VectorField::synthetic([B, d](const Vec3& x) { return cross(B(x), d); },
                                           B.singularities());
        break;
    }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Line integrals
// ---------------------------------------------------------------------------

PhaseResult line_phase(const PhaseVectorField& T, const Path& path, double tol) {
    const VectorField& field = T.field;
    auto integrand = [&](int seg, double t) {
        return dot(field(path.segment_position(seg, t)), path.segment_derivative(seg, t));
    };
    PhaseResult r = integrate_over_segments(path, integrand, tol);
    r.value *= path.orientation();
    return r;
}

PhaseResult dynamical_phase(const Scenario& s, const Path& path, double tol) {
    VectorField E = s.electric();
    VectorField B = s.magnetic();
    std::function<double(const Vec3&)> potential;
    switch (s.phase_kind) {
    case PhaseKind::hmw_induced: {
        double alpha = s.particle.alpha;
        potential = [E, alpha](const Vec3& x) { return 0.5 * alpha * E(x).norm2(); };
        break;
    }
    case PhaseKind::ac_induced: {
        double chi = s.particle.chi;
        potential = [B, chi](const Vec3& x) { return 0.5 * chi * B(x).norm2(); };
        break;
    }
    case PhaseKind::permanent_electric: {
        Vec3 d = s.particle.spin * s.particle.d;
        potential = [E, d](const Vec3& x) { return dot(d, E(x)); };
        break;
    }
    }
    const double v0 = path.speed();
    auto integrand = [&](int seg, double t) {
        return potential(path.segment_position(seg, t)) *
               path.segment_derivative(seg, t).norm() / v0;
    };
    return integrate_over_segments(path, integrand, tol);
}

// ---------------------------------------------------------------------------
// Curl identities
// ---------------------------------------------------------------------------

CurlCrossResult curl_cross_identity(const VectorField& E, const VectorField& B, const Vec3& x,
                                    const FDParams& p) {
    std::vector<Singularity> sing = E.singularities();
    sing.insert(sing.end(), B.singularities().begin(), B.singularities().end());
    VectorField product = VectorField::synthetic(
        [&E, &B](const Vec3& pt) { return cross(B(pt), E(pt)); }, std::move(sing));

    Vec3 e = E(x);
    Vec3 b = B(x);
    double div_e = fd_div(E, x, p);
    double div_b = fd_div(B, x, p);
    Vec3 e_grad_b = advect(e, B, x, p);
    Vec3 b_grad_e = advect(b, E, x, p);

    CurlCrossResult out;
    out.identity_value = b * div_e - e * div_b + e_grad_b - b_grad_e;
    out.sign_variant = b * div_e - e * div_b + b_grad_e - e_grad_b;
    out.fd_value = fd_curl(product, x, p);
    return out;
}

CurlDipoleResult curl_constant_dipole(const VectorField& B, const Vec3& d, const Vec3& x,
                                      const FDParams& p) {
    VectorField product = VectorField::synthetic(
        [&B, d](const Vec3& pt) { return cross(B(pt), d); }, B.singularities());

    CurlDipoleResult out;
    out.identity_value = -d * fd_div(B, x, p) + advect(d, B, x, p);
    out.fd_value = fd_curl(product, x, p);
    return out;
}

// ---------------------------------------------------------------------------
// Stokes consistency
// ---------------------------------------------------------------------------

StokesResult stokes_check(const PhaseVectorField& T, const Path& path_a, const Path& path_b,
                          double tol) {
    if ((path_a.start() - path_b.start()).norm() > 1e-9 ||
        (path_a.end() - path_b.end()).norm() > 1e-9)
        throw Error("stokes_check: paths do not share endpoints");

    StokesResult out;
    out.phase_diff = line_phase(T, path_a, tol).value - line_phase(T, path_b, tol).value;

    // Ruled surface S(u,w) = (1-w) a(u) + w b(u), fixed 32x32 patches with an
    // 8x8 Gauss rule per patch.
    constexpr int kPatches = 32;
    const FDParams fd_params{};

    for (const auto& sing : T.field.singularities()) {
        if (const auto* line = std::get_if<LineSingularity>(&sing)) {
            if (boundary_winding(path_a, path_b, *line) != 0) out.singular_crossing = true;
        }
    }

    // Cache boundary curves on the tensor grid of quadrature nodes.
    constexpr int kNodes = 8;
    std::array<double, kPatches * kNodes> us{};
    for (int pu = 0; pu < kPatches; ++pu)
        for (int iu = 0; iu < kNodes; ++iu)
            us[pu * kNodes + iu] = (pu + kGaussNode01[iu]) / kPatches;

    std::vector<Vec3> a_pos(us.size()), a_der(us.size()), b_pos(us.size()), b_der(us.size());
    for (size_t i = 0; i < us.size(); ++i) {
        a_pos[i] = path_a.position(us[i]);
        a_der[i] = path_a.derivative(us[i]);
        b_pos[i] = path_b.position(us[i]);
        b_der[i] = path_b.derivative(us[i]);
    }

    double flux = 0.0;
    const double cell = 1.0 / kPatches;
    for (int pu = 0; pu < kPatches; ++pu) {
        for (int pw = 0; pw < kPatches; ++pw) {
            // patch diagonal estimate from its corners
            Vec3 c00 = (path_a.position(pu * cell) * (1.0 - pw * cell)) +
                       (path_b.position(pu * cell) * (pw * cell));
            Vec3 c11 = (path_a.position((pu + 1) * cell) * (1.0 - (pw + 1) * cell)) +
                       (path_b.position((pu + 1) * cell) * ((pw + 1) * cell));
            double diag = (c11 - c00).norm();

            double patch_sum = 0.0;
            for (int iu = 0; iu < kNodes; ++iu) {
                size_t ui = static_cast<size_t>(pu * kNodes + iu);
                for (int iw = 0; iw < kNodes; ++iw) {
                    double w = (pw + kGaussNode01[iw]) / kPatches;
                    Vec3 pos = a_pos[ui] * (1.0 - w) + b_pos[ui] * w;
                    Vec3 su = a_der[ui] * (1.0 - w) + b_der[ui] * w;
                    Vec3 sw = b_pos[ui] - a_pos[ui];
                    Vec3 normal = cross(su, sw);

                    double dist = T.field.singularity_distance(pos);
                    if (dist <= std::max(fd_params.reach_at(pos), diag)) {
                        out.singular_crossing = true;
                        if (dist <= fd_params.reach_at(pos)) continue; // stencil would blow up
                    }
                    Vec3 curl = fd_curl(T.field, pos, fd_params);
                    patch_sum += kGaussWeight01[iu] * kGaussWeight01[iw] * dot(curl, normal);
                }
            }
            flux += patch_sum * cell * cell;
        }
    }
    out.surface_flux = flux;
    return out;
}

} // namespace topophase
