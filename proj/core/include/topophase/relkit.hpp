#pragma once

#include "topophase/scenario.hpp"
#include "topophase/vec3.hpp"

namespace topophase {

// ---------------------------------------------------------------------------
// Minkowski algebra, metric (+,-,-,-), Levi-Civita eps_{0123} = +1
// ---------------------------------------------------------------------------

struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    FourVector() = default;
    constexpr FourVector(double t_, double x_, double y_, double z_)
        : t(t_), x(x_), y(y_), z(z_) {}
    FourVector(double t_, const Vec3& s) : t(t_), x(s.x), y(s.y), z(s.z) {}

    Vec3 spatial() const { return {x, y, z}; }

    FourVector operator+(const FourVector& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    FourVector operator-(const FourVector& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    FourVector operator*(double s) const { return {t * s, x * s, y * s, z * s}; }
};

// Metric contraction a_mu b^mu.
inline double dot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

// Components of a in the frame moving with velocity w (passive boost).
FourVector boost(const FourVector& a, const Vec3& w);

struct Kinematics {
    Vec3 v;
    double gamma = 1.0;
    FourVector u{1, 0, 0, 0}; // gamma (1, v)

    Kinematics() = default;
    explicit Kinematics(const Vec3& velocity); // requires |v| < 1
};

// Antisymmetric rank-2 tensor stored as its six independent contravariant
// slots: A^{i0} = e_i, A^{ij} = -eps_{ijk} b_k. For the field tensor e = E
// and b = B.
class AntisymTensor2 {
public:
    AntisymTensor2() = default;
    AntisymTensor2(const Vec3& e, const Vec3& b) : e_(e), b_(b) {}

    const Vec3& e() const { return e_; }
    const Vec3& b() const { return b_; }

    double contra(int mu, int nu) const; // A^{mu nu}
    double cov(int mu, int nu) const;    // A_{mu nu}

    // Hodge dual: e -> b, b -> -e (eps^{0123} = +1 convention).
    AntisymTensor2 dual() const { return {b_, -e_}; }

    // Component transformation into the frame moving with velocity w.
    AntisymTensor2 boosted(const Vec3& w) const;

    AntisymTensor2 operator+(const AntisymTensor2& o) const { return {e_ + o.e_, b_ + o.b_}; }
    AntisymTensor2 operator-(const AntisymTensor2& o) const { return {e_ - o.e_, b_ - o.b_}; }
    AntisymTensor2 operator*(double s) const { return {e_ * s, b_ * s}; }

private:
    Vec3 e_{0, 0, 0};
    Vec3 b_{0, 0, 0};
};

AntisymTensor2 field_tensor(const Vec3& E, const Vec3& B);

// u_nu A^{mu nu} (contravariant result).
FourVector contract_left(const AntisymTensor2& A, const FourVector& u);

// u^mu A_{mu nu} (covariant result; used by the Minkowski relation checks).
FourVector contract_left_cov(const AntisymTensor2& A, const FourVector& u);

// A^{mu nu} C_{mu nu} = 2 (a_b . c_b - a_e . c_e).
double contract_full(const AntisymTensor2& A, const AntisymTensor2& C);

// ---------------------------------------------------------------------------
// Four-fields, moments tensor, relativistic Lagrangian
// ---------------------------------------------------------------------------

// E4 = u_nu F^{mu nu} = gamma (E.v, E + v x B)
// B4 = u_nu Ftilde^{mu nu} = gamma (B.v, B - v x E)
struct FourFields {
    FourVector E4;
    FourVector B4;
};

FourFields four_fields(const Vec3& E, const Vec3& B, const Kinematics& k);

// Moments tensor of an induced dipole: satisfies the constitutive relations
//   u^mu K_{mu nu} = alpha u^mu F_{mu nu},
//   u^mu Ktilde_{mu nu} = chi u^mu Ftilde_{mu nu},
// with the electric slot carrying P = alpha E and the magnetic slot M = chi B
// in the rest frame.
AntisymTensor2 moments_tensor(const Vec3& E, const Vec3& B, const Kinematics& k, double alpha,
                              double chi);

// -1/4 K^{mu nu} F_{mu nu} with chi = 0. Evaluated three ways (tensor
// contraction, -1/2 alpha E4.E4, and the closed form
// 1/2 alpha gamma^2 {(E + v x B)^2 - (E.v)^2}); throws Error if they
// disagree, which would signal a convention bug.
double rel_lagrangian(const Vec3& E, const Vec3& B, const Kinematics& k, double alpha);

// rel_lagrangian minus the non-relativistic reduction
// 1/2 alpha {(E + v x B)^2 - (E.v)^2}; equals (gamma^2 - 1) times the
// reduction identically.
double reduction_gap(const Vec3& E, const Vec3& B, const Kinematics& k, double alpha);

// Four-spin of a rest-frame unit spin direction:
//   s = (gamma v.s', s' + (gamma^2/(1+gamma)) (v.s') v),
// satisfying s.u = 0 and s.s = -1.
FourVector boost_spin(const Vec3& s_rest, const Kinematics& k);

// Intrinsic-dipole interaction Lagrangian
//   L = d gamma s.(E + v x B - v (v.E)) = -d s_mu E4^mu
// with s the spatial part of the boosted spin.
double intrinsic_dipole_lagrangian(double d, const Vec3& s_rest, const Vec3& E, const Vec3& B,
                                   const Kinematics& k);

// Substitutes the induced dipole d s -> alpha gamma (E + v x B) into the
// intrinsic-dipole form, with the explicit 1/2 induced-energy factor, and
// compares against the tensor route. ratio = via_spin / via_tensor (1 when
// both vanish).
struct SpinRouteResult {
    double via_spin = 0.0;
    double via_tensor = 0.0;
    double ratio = 1.0;
};

SpinRouteResult spin_route_check(const Vec3& E, const Vec3& B, const Kinematics& k, double alpha);

// ---------------------------------------------------------------------------
// HMW <-> AC duality
// ---------------------------------------------------------------------------

// E' = old B fields re-tagged as electric, B' = old E fields negated,
// alpha' = chi, chi' = alpha, hmw_induced <-> ac_induced; paths and regions
// unchanged. Throws Error when a field kind has no catalog counterpart
// (current_wire_B, solenoid_B, synthetic fields).
Scenario duality_map(const Scenario& s);

} // namespace topophase
