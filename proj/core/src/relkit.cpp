#include "topophase/relkit.hpp"

#include "topophase/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace topophase {

// ---------------------------------------------------------------------------
// Minkowski algebra
// ---------------------------------------------------------------------------

FourVector boost(const FourVector& a, const Vec3& w) {
    double w2 = w.norm2();
    if (w2 == 0.0) return a;
    if (!(w2 < 1.0)) throw Error("boost velocity must satisfy |w| < 1");
    double gamma = 1.0 / std::sqrt(1.0 - w2);
    Vec3 r = a.spatial();
    double wr = dot(w, r);
    double t = gamma * (a.t - wr);
    Vec3 spatial = r + w * ((gamma - 1.0) * wr / w2) - w * (gamma * a.t);
    return {t, spatial};
}

Kinematics::Kinematics(const Vec3& velocity) : v(velocity) {
    double v2 = v.norm2();
    if (!(v2 < 1.0)) throw Error("particle velocity must satisfy |v| < 1");
    gamma = 1.0 / std::sqrt(1.0 - v2);
    u = FourVector(gamma, v * gamma);
}

double AntisymTensor2::contra(int mu, int nu) const {
    if (mu == nu) return 0.0;
    if (nu == 0) return e_[mu - 1];
    if (mu == 0) return -e_[nu - 1];
    // A^{ij} = -eps_{ijk} b_k
    int i = mu - 1, j = nu - 1;
    int k = 3 - i - j;
    double sign = ((j - i + 3) % 3 == 1) ? 1.0 : -1.0; // eps_{ijk} for the cyclic order
    return -sign * b_[k];
}

double AntisymTensor2::cov(int mu, int nu) const {
    // lowering flips the sign of mixed time-space slots only
    double value = contra(mu, nu);
    if ((mu == 0) != (nu == 0)) return -value;
    return value;
}

AntisymTensor2 AntisymTensor2::boosted(const Vec3& w) const {
    double w2 = w.norm2();
    if (w2 == 0.0) return *this;
    if (!(w2 < 1.0)) throw Error("boost velocity must satisfy |w| < 1");
    double gamma = 1.0 / std::sqrt(1.0 - w2);
    double proj = gamma * gamma / (gamma + 1.0);
    Vec3 e2 = (e_ + cross(w, b_)) * gamma - w * (proj * dot(w, e_));
    Vec3 b2 = (b_ - cross(w, e_)) * gamma - w * (proj * dot(w, b_));
    return {e2, b2};
}

AntisymTensor2 field_tensor(const Vec3& E, const Vec3& B) { return {E, B}; }

FourVector contract_left(const AntisymTensor2& A, const FourVector& u) {
    Vec3 us = u.spatial();
    return {dot(us, A.e()), A.e() * u.t + cross(us, A.b())};
}

FourVector contract_left_cov(const AntisymTensor2& A, const FourVector& u) {
    // u^mu A_{mu nu}: spatial part matches u_nu A^{mu nu}, time component flips
    Vec3 us = u.spatial();
    return {-dot(us, A.e()), A.e() * u.t + cross(us, A.b())};
}

double contract_full(const AntisymTensor2& A, const AntisymTensor2& C) {
    return 2.0 * (dot(A.b(), C.b()) - dot(A.e(), C.e()));
}

// ---------------------------------------------------------------------------
// Four-fields and the moments tensor
// ---------------------------------------------------------------------------

FourFields four_fields(const Vec3& E, const Vec3& B, const Kinematics& k) {
    AntisymTensor2 F = field_tensor(E, B);
    return {contract_left(F, k.u), contract_left(F.dual(), k.u)};
}

AntisymTensor2 moments_tensor(const Vec3& E, const Vec3& B, const Kinematics& k, double alpha,
                              double chi) {
    auto [E4, B4] = four_fields(E, B, k);
    Vec3 us = k.u.spatial();
    double u0 = k.u.t;
    Vec3 e = (E4.spatial() * u0 - us * E4.t) * alpha + cross(B4.spatial(), us) * chi;
    Vec3 b = cross(E4.spatial(), us) * (-alpha) + (B4.spatial() * u0 - us * B4.t) * chi;
    return {e, b};
}

double rel_lagrangian(const Vec3& E, const Vec3& B, const Kinematics& k, double alpha) {
    AntisymTensor2 F = field_tensor(E, B);
    AntisymTensor2 K = moments_tensor(E, B, k, alpha, 0.0);
    FourVector E4 = contract_left(F, k.u);

    Vec3 rest_field = E + cross(k.v, B);
    double ev = dot(E, k.v);
    double g2 = k.gamma * k.gamma;

    double via_contraction = -0.25 * contract_full(K, F);
    double via_four_field = -0.5 * alpha * dot(E4, E4);
    double closed_form = 0.5 * alpha * g2 * (rest_field.norm2() - ev * ev);

    double scale = 0.5 * std::abs(alpha) * g2 * (rest_field.norm2() + ev * ev);
    double tol = 1e-12 * std::max(scale, 1e-300);
    if (std::abs(via_contraction - via_four_field) > tol ||
        std::abs(via_contraction - closed_form) > tol)
        throw Error("rel_lagrangian: tensor convention consistency check failed");
    return closed_form;
}

double reduction_gap(const Vec3& E, const Vec3& B, const Kinematics& k, double alpha) {
    Vec3 rest_field = E + cross(k.v, B);
    double ev = dot(E, k.v);
    double reduced = 0.5 * alpha * (rest_field.norm2() - ev * ev);
    return rel_lagrangian(E, B, k, alpha) - reduced;
}

FourVector boost_spin(const Vec3& s_rest, const Kinematics& k) {
    if (std::abs(s_rest.norm() - 1.0) > 1e-6)
        throw Error("boost_spin: rest-frame spin direction must be a unit vector");
    double vs = dot(k.v, s_rest);
    double proj = k.gamma * k.gamma / (1.0 + k.gamma);
    return {k.gamma * vs, s_rest + k.v * (proj * vs)};
}

double intrinsic_dipole_lagrangian(double d, const Vec3& s_rest, const Vec3& E, const Vec3& B,
                                   const Kinematics& k) {
    FourVector s4 = boost_spin(s_rest, k);
    FourVector E4 = four_fields(E, B, k).E4;
    return -d * dot(s4, E4);
}

SpinRouteResult spin_route_check(const Vec3& E, const Vec3& B, const Kinematics& k, double alpha) {
    Vec3 rest_field = E + cross(k.v, B);
    double g2 = k.gamma * k.gamma;
    // d s -> alpha gamma (E + v x B) substituted into the intrinsic-dipole
    // form, with the 1/2 linear-response energy factor.
    double via_spin =
        0.5 * alpha * g2 * dot(rest_field, rest_field - k.v * dot(k.v, E));
    double via_tensor = rel_lagrangian(E, B, k, alpha);

    SpinRouteResult out;
    out.via_spin = via_spin;
    out.via_tensor = via_tensor;
    if (via_tensor != 0.0)
        out.ratio = via_spin / via_tensor;
    else
        out.ratio = (via_spin == 0.0) ? 1.0 : std::numeric_limits<double>::infinity();
    return out;
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

namespace {

// Old B field re-tagged as an electric field.
FieldDescriptor electric_image(const FieldDescriptor& d) {
    FieldDescriptor out = d;
    if (d.kind == "uniform") return out;
    if (d.kind == "monopole_line_B") {
        out.kind = "line_charge_E";
        out.params = {{"lambda", d.params.at("g")}};
        return out;
    }
    if (d.kind == "monopole_point_B") {
        out.kind = "point_charge_E";
        out.params = {{"q", d.params.at("g")}};
        return out;
    }
    throw Error("duality_map: field kind '" + d.kind + "' has no electric counterpart");
}

// Old E field negated and re-tagged as a magnetic field.
FieldDescriptor magnetic_image(const FieldDescriptor& d) {
    FieldDescriptor out = d;
    if (d.kind == "uniform") {
        out.params = {{"strength", -d.params.at("strength")}};
        return out;
    }
    if (d.kind == "line_charge_E") {
        out.kind = "monopole_line_B";
        out.params = {{"g", -d.params.at("lambda")}};
        return out;
    }
    if (d.kind == "point_charge_E") {
        out.kind = "monopole_point_B";
        out.params = {{"g", -d.params.at("q")}};
        return out;
    }
    throw Error("duality_map: field kind '" + d.kind + "' has no magnetic counterpart");
}

} // namespace

Scenario duality_map(const Scenario& s) {
    Scenario out = s;

    switch (s.phase_kind) {
    case PhaseKind::hmw_induced:
        out.phase_kind = PhaseKind::ac_induced;
        break;
    case PhaseKind::ac_induced:
        out.phase_kind = PhaseKind::hmw_induced;
        break;
    case PhaseKind::permanent_electric:
        throw Error("duality_map: permanent_electric scenarios have no induced-dipole dual");
    }

    out.particle.alpha = s.particle.chi;
    out.particle.chi = s.particle.alpha;

    out.e_components.clear();
    out.b_components.clear();
    for (const auto& f : s.b_components) {
        if (!f.descriptor())
            throw Error("duality_map: synthetic fields have no catalog counterpart");
        out.e_components.push_back(catalog_field(electric_image(*f.descriptor())));
    }
    for (const auto& f : s.e_components) {
        if (!f.descriptor())
            throw Error("duality_map: synthetic fields have no catalog counterpart");
        out.b_components.push_back(catalog_field(magnetic_image(*f.descriptor())));
    }
    return out;
}

} // namespace topophase
