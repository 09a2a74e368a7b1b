#include "topophase/topocheck.hpp"

#include "topophase/errors.hpp"
#include "topophase/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace topophase {

namespace {

std::vector<double> sample_params(const Path& path, int n_samples) {
    std::vector<double> us(n_samples);
    // closed paths: endpoints coincide, so spread without the duplicate
    double denom = path.closed() ? n_samples : n_samples - 1;
    for (int k = 0; k < n_samples; ++k) us[k] = k / denom;
    return us;
}

void basis_perp(const Vec3& n, Vec3& e1, Vec3& e2) {
    Vec3 seed = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = cross(n, seed).normalized();
    e2 = cross(n, e1);
}

struct TubeDetail {
    ConditionResult result;
    double scale = 0.0;
};

TubeDetail curl_tube_detail(const PhaseVectorField& T, const Path& path, double tube_radius,
                            int n_samples, const FDParams& p, double curl_rel) {
    if (n_samples < 2) throw Error("check_curl_free_tube needs n_samples >= 2");
    auto us = sample_params(path, n_samples);

    TubeDetail out;
    double max_curl = 0.0;
    for (double u : us) {
        Vec3 x = path.position(u);
        double clearance = T.field.singularity_distance(x);
        if (clearance <= tube_radius + p.reach_at(x))
            throw SingularityError("curl tube of radius " + std::to_string(tube_radius) +
                                   " around path '" + path.name() +
                                   "' intersects the field's singular set");
        out.scale = std::max(out.scale, T.field(x).norm());

        Vec3 e1, e2;
        basis_perp(path.unit_tangent(u), e1, e2);
        for (int j = -1; j < 8; ++j) {
            Vec3 pt = x;
            if (j >= 0) {
                double ang = j * (std::numbers::pi / 4.0);
                pt = x + (e1 * std::cos(ang) + e2 * std::sin(ang)) * tube_radius;
            }
            max_curl = std::max(max_curl, fd_curl(T.field, pt, p).norm());
        }
    }
    out.result.value = max_curl;
    out.result.pass = max_curl <= curl_rel * out.scale;
    return out;
}

ConditionResult merge(const ConditionResult& a, const ConditionResult& b) {
    ConditionResult out;
    out.pass = a.pass && b.pass;
    out.vacuous = a.vacuous && b.vacuous;
    out.value = std::max(a.value, b.value);
    return out;
}

} // namespace

std::string to_string(Classification c) {
    switch (c) {
    case Classification::topological: return "topological";
    case Classification::dynamical_contaminated: return "dynamical-contaminated";
    case Classification::trivial: return "trivial";
    case Classification::non_topological: return "non-topological";
    }
    return "non-topological";
}

OrthogonalityResult check_orthogonality(const Scenario& s, const Path& path, int n_samples) {
    if (n_samples < 2) throw Error("check_orthogonality needs n_samples >= 2");
    VectorField E = s.electric();
    VectorField B = s.magnetic();
    auto us = sample_params(path, n_samples);

    std::vector<Vec3> tangents(us.size()), evals(us.size()), bvals(us.size());
    double escale = 0.0, bscale = 0.0;
    for (size_t k = 0; k < us.size(); ++k) {
        Vec3 x = path.position(us[k]);
        tangents[k] = path.unit_tangent(us[k]);
        evals[k] = E(x);
        bvals[k] = B(x);
        escale = std::max(escale, evals[k].norm());
        bscale = std::max(bscale, bvals[k].norm());
    }

    auto run = [&](const std::vector<Vec3>& field, double scale) {
        ConditionResult r;
        bool any = false;
        for (size_t k = 0; k < us.size(); ++k) {
            double fn = field[k].norm();
            if (fn <= 1e-12 * scale || fn == 0.0) continue; // field vanishes here
            any = true;
            r.value = std::max(r.value, std::abs(dot(tangents[k], field[k])) / fn);
        }
        r.vacuous = !any;
        r.pass = r.vacuous || r.value <= s.checks.orthogonality_cos;
        return r;
    };

    return {run(bvals, bscale), run(evals, escale)};
}

ConditionResult check_mass_condition(const Scenario& s, const Path& path) {
    VectorField B = s.magnetic();
    auto us = sample_params(path, s.checks.n_samples);
    ConditionResult r;
    for (double u : us) {
        double b2 = B(path.position(u)).norm2();
        r.value = std::max(r.value, s.particle.alpha * b2 / s.particle.mass);
    }
    r.pass = r.value < s.checks.mass_ratio;
    return r;
}

ConditionResult check_curl_free_tube(const PhaseVectorField& T, const Path& path,
                                     double tube_radius, int n_samples, const FDParams& p) {
    // default threshold scale; classify() passes the scenario's own setting
    return curl_tube_detail(T, path, tube_radius, n_samples, p, CheckSettings{}.curl_rel).result;
}

TopologyReport classify(const Scenario& s) {
    const Path* reference = s.first_closed_path();
    if (!reference) throw Error("classify requires at least one closed path");

    PhaseVectorField T = phase_vector_field(s);
    TopologyReport rep;

    bool first = true;
    for (const auto& path : s.paths) {
        auto orth = check_orthogonality(s, path, s.checks.n_samples);
        auto mass = check_mass_condition(s, path);
        auto tube = curl_tube_detail(T, path, s.checks.tube_radius, s.checks.n_samples, {},
                                     s.checks.curl_rel);
        if (first) {
            rep.v_perp_B = orth.v_perp_B;
            rep.v_perp_E = orth.v_perp_E;
            rep.mass_condition = mass;
            rep.curl_free = tube.result;
            rep.curl_scale = tube.scale;
            first = false;
        } else {
            rep.v_perp_B = merge(rep.v_perp_B, orth.v_perp_B);
            rep.v_perp_E = merge(rep.v_perp_E, orth.v_perp_E);
            rep.mass_condition = merge(rep.mass_condition, mass);
            rep.curl_free = merge(rep.curl_free, tube.result);
            rep.curl_scale = std::max(rep.curl_scale, tube.scale);
        }
    }

    auto flux = line_phase(T, *reference);
    rep.enclosed_flux = flux.value;
    rep.enclosed_flux_error = flux.abs_error_estimate;

    // Dynamical-phase balance over consecutive pairs of open paths, in
    // declaration order.
    std::vector<const Path*> arms;
    for (const auto& path : s.paths)
        if (!path.closed()) arms.push_back(&path);
    rep.arm_balance.pass = true;
    rep.arm_balance.vacuous = arms.size() < 2;
    for (size_t i = 0; i + 1 < arms.size(); i += 2) {
        double pa = dynamical_phase(s, *arms[i], 1e-10).value;
        double pb = dynamical_phase(s, *arms[i + 1], 1e-10).value;
        rep.arm_phases.emplace_back(pa, pb);
        double diff = std::abs(pa - pb);
        rep.arm_balance.value = std::max(rep.arm_balance.value, diff);
        double allowed = std::max(s.checks.arm_balance_abs,
                                  s.checks.arm_balance_rel * std::max(std::abs(pa), std::abs(pb)));
        if (diff > allowed) rep.arm_balance.pass = false;
    }

    bool hard_pass = rep.v_perp_B.pass && rep.v_perp_E.pass && rep.mass_condition.pass &&
                     rep.curl_free.pass;
    if (std::abs(rep.enclosed_flux) <= s.checks.flux_zero)
        rep.classification = Classification::trivial;
    else if (!hard_pass)
        rep.classification = Classification::non_topological;
    else if (!rep.arm_balance.pass)
        rep.classification = Classification::dynamical_contaminated;
    else
        rep.classification = Classification::topological;
    return rep;
}

std::string TopologyReport::to_text() const {
    auto line = [](const char* name, const ConditionResult& r) {
        std::string s = std::string(name) + ": " + (r.pass ? "pass" : "fail") +
                        " value=" + format_double(r.value);
        if (r.vacuous) s += " (vacuous)";
        return s + "\n";
    };
    std::ostringstream os;
    os << line("v_perp_B", v_perp_B);
    os << line("v_perp_E", v_perp_E);
    os << line("mass_condition", mass_condition);
    os << "curl_free: " << (curl_free.pass ? "pass" : "fail")
       << " value=" << format_double(curl_free.value) << " scale=" << format_double(curl_scale)
       << "\n";
    os << line("arm_balance", arm_balance);
    for (const auto& [a, b] : arm_phases)
        os << "arm_pair: " << format_double(a) << " " << format_double(b) << "\n";
    os << "enclosed_flux: " << format_double(enclosed_flux)
       << " error=" << format_double(enclosed_flux_error) << "\n";
    os << "classification: " << to_string(classification) << "\n";
    return os.str();
}

std::string TopologyReport::to_json() const {
    using nlohmann::ordered_json;
    auto cond = [](const ConditionResult& r) {
        ordered_json j;
        j["pass"] = r.pass;
        j["vacuous"] = r.vacuous;
        j["value"] = r.value;
        return j;
    };
    ordered_json j;
    j["v_perp_B"] = cond(v_perp_B);
    j["v_perp_E"] = cond(v_perp_E);
    j["mass_condition"] = cond(mass_condition);
    j["curl_free"] = cond(curl_free);
    j["curl_scale"] = curl_scale;
    j["arm_balance"] = cond(arm_balance);
    ordered_json pairs = ordered_json::array();
    for (const auto& [a, b] : arm_phases) pairs.push_back(ordered_json::array({a, b}));
    j["arm_phases"] = std::move(pairs);
    j["enclosed_flux"] = enclosed_flux;
    j["enclosed_flux_error"] = enclosed_flux_error;
    j["classification"] = to_string(classification);
    return j.dump(2) + "\n";
}

} // namespace topophase
