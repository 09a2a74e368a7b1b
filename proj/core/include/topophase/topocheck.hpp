#pragma once

#include "topophase/fd.hpp"
#include "topophase/phase.hpp"
#include "topophase/scenario.hpp"

#include <string>
#include <utility>
#include <vector>

namespace topophase {

struct ConditionResult {
    bool pass = false;
    bool vacuous = false; // no applicable samples (field vanished everywhere)
    double value = 0.0;   // the extremal quantity the threshold applies to
};

enum class Classification { topological, dynamical_contaminated, trivial, non_topological };

std::string to_string(Classification c);

struct TopologyReport {
    ConditionResult v_perp_B;      // max |v_hat . B_hat| over path samples
    ConditionResult v_perp_E;      // max |v_hat . E_hat|
    ConditionResult mass_condition; // max alpha B^2 / m
    ConditionResult curl_free;     // max |curl T| over the sampled tube
    ConditionResult arm_balance;   // max dynamical-phase difference over arm pairs
    double curl_scale = 0.0;       // |T| scale the curl threshold was applied to
    double enclosed_flux = 0.0;    // loop phase of the first closed path
    double enclosed_flux_error = 0.0;
    std::vector<std::pair<double, double>> arm_phases; // per declared open-arm pair
    Classification classification = Classification::non_topological;

    std::string to_text() const; // flat key: value block
    std::string to_json() const; // machine-readable mirror
};

struct OrthogonalityResult {
    ConditionResult v_perp_B;
    ConditionResult v_perp_E;
};

// Samples the unit tangent against the unit field directions along the path;
// points where a field magnitude is below 1e-12 of its sampled scale are
// skipped, and a check with no applicable samples passes vacuously.
OrthogonalityResult check_orthogonality(const Scenario& s, const Path& path, int n_samples);

// max over path samples of alpha B^2 / m against the configured threshold.
ConditionResult check_mass_condition(const Scenario& s, const Path& path);

// Samples the stencil curl of T on the path and on rings of tube_radius
// around it; pass iff max |curl| <= curl_rel * (max |T| along the path).
ConditionResult check_curl_free_tube(const PhaseVectorField& T, const Path& path,
                                     double tube_radius, int n_samples, const FDParams& p = {});

// Runs every condition, measures the enclosed flux on the first closed path
// and the dynamical-phase balance over consecutive pairs of open paths, then
// classifies:
//   |flux| <= flux_zero                  -> trivial
//   any geometric/mass/curl check fails  -> non_topological
//   arm balance fails                    -> dynamical_contaminated
//   otherwise                            -> topological
// Requires at least one closed path.
TopologyReport classify(const Scenario& s);

} // namespace topophase
