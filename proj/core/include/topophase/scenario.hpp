#pragma once

#include "topophase/errors.hpp"
#include "topophase/field.hpp"
#include "topophase/path.hpp"
#include "topophase/vec3.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace topophase {

enum class PhaseKind { hmw_induced, ac_induced, permanent_electric };

std::string to_string(PhaseKind k);
PhaseKind phase_kind_from_string(std::string_view s);

struct ParticleProperties {
    double mass = 1.0;
    double alpha = 0.0; // electric polarisability
    double chi = 0.0;   // magnetic susceptibility
    double d = 0.0;     // intrinsic dipole magnitude
    Vec3 spin{0, 0, 1}; // rest-frame spin direction, meaningful when d > 0
    bool has_spin = false;
};

// Certification thresholds, overridable per scenario under the "checks" key.
struct CheckSettings {
    double orthogonality_cos = 1e-6;
    double mass_ratio = 1e-2;
    double curl_rel = 1e-5;
    double arm_balance_abs = 1e-9;
    double arm_balance_rel = 1e-6;
    double flux_zero = 1e-9;
    double tube_radius = 0.1;
    int n_samples = 256;
};

struct Diagnostic {
    std::string code;
    std::string message;
};

// Scenario parsed but violates its invariants; carries the full diagnostic
// list from validate().
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::vector<Diagnostic> diags)
        : Error(what), diagnostics_(std::move(diags)) {}
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

// The experiment data model: particle, static E and B fields, beam paths and
// the excluded region containing the phase-generating sources.
struct Scenario {
    ParticleProperties particle;
    std::vector<VectorField> e_components;
    std::vector<VectorField> b_components;
    std::vector<Path> paths;
    Region excluded_region = Region::nothing();
    PhaseKind phase_kind = PhaseKind::hmw_induced;
    CheckSettings checks;

    VectorField electric() const { return superpose(e_components); }
    VectorField magnetic() const { return superpose(b_components); }

    const Path* find_path(std::string_view name) const;
    const Path* first_closed_path() const;
};

// Parses and fully validates a UTF-8 JSON scenario document. Unknown keys are
// rejected. Throws ParseError on syntax/schema errors and ValidationError
// when the parsed scenario violates an invariant.
Scenario parse_scenario(const std::string& text);

std::string serialize_scenario(const Scenario& s);

// Non-throwing invariant check; empty result iff all invariants hold.
std::vector<Diagnostic> validate(const Scenario& s);

} // namespace topophase
