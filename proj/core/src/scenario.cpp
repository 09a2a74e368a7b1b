#include "topophase/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace topophase {

using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// JSON helpers (strict: unknown keys are errors)
// ---------------------------------------------------------------------------

void expect_keys(const ordered_json& obj, const std::string& where,
                 std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : keys)
            if (key == k) ok = true;
        if (!ok) throw ParseError("unknown key '" + key + "' in " + where);
        (void)value;
    }
}

double get_number(const ordered_json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + ": expected a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(where + ": value is not finite");
    return x;
}

Vec3 get_vec3(const ordered_json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3)
        throw ParseError(where + ": expected an array of 3 numbers");
    return {get_number(v[0], where), get_number(v[1], where), get_number(v[2], where)};
}

ordered_json vec3_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

// ---------------------------------------------------------------------------
// Component parsing
// ---------------------------------------------------------------------------

VectorField parse_field(const ordered_json& v, const std::string& where) {
    if (!v.is_object()) throw ParseError(where + ": expected a field descriptor object");
    expect_keys(v, where, {"kind", "params", "axis_point", "axis_dir"});
    FieldDescriptor d;
    if (!v.contains("kind") || !v["kind"].is_string())
        throw ParseError(where + ": field descriptor needs a 'kind' string");
    d.kind = v["kind"].get<std::string>();
    if (v.contains("params")) {
        if (!v["params"].is_object()) throw ParseError(where + ".params: expected an object");
        for (const auto& [key, value] : v["params"].items())
            d.params[key] = get_number(value, where + ".params." + key);
    }
    if (v.contains("axis_point")) d.axis_point = get_vec3(v["axis_point"], where + ".axis_point");
    if (v.contains("axis_dir")) d.axis_dir = get_vec3(v["axis_dir"], where + ".axis_dir");
    try {
        return catalog_field(d);
    } catch (const Error& e) {
        throw ParseError(where + ": " + e.what());
    }
}

Region parse_region(const ordered_json& v, const std::string& where) {
    if (!v.is_object()) throw ParseError(where + ": expected a region object");
    if (!v.contains("kind") || !v["kind"].is_string())
        throw ParseError(where + ": region needs a 'kind' string");
    std::string kind = v["kind"].get<std::string>();
    if (kind == "all_space") {
        expect_keys(v, where, {"kind"});
        return Region::all_space();
    }
    if (kind == "cylinder") {
        expect_keys(v, where, {"kind", "axis_point", "axis_dir", "radius"});
        if (!v.contains("radius")) throw ParseError(where + ": cylinder needs 'radius'");
        Vec3 p = v.contains("axis_point") ? get_vec3(v["axis_point"], where + ".axis_point")
                                          : Vec3{0, 0, 0};
        Vec3 dir =
            v.contains("axis_dir") ? get_vec3(v["axis_dir"], where + ".axis_dir") : Vec3{0, 0, 1};
        return Region::cylinder(p, dir, get_number(v["radius"], where + ".radius"));
    }
    if (kind == "half_space") {
        expect_keys(v, where, {"kind", "point", "normal"});
        if (!v.contains("normal")) throw ParseError(where + ": half_space needs 'normal'");
        Vec3 p = v.contains("point") ? get_vec3(v["point"], where + ".point") : Vec3{0, 0, 0};
        return Region::half_space(p, get_vec3(v["normal"], where + ".normal"));
    }
    if (kind == "complement") {
        expect_keys(v, where, {"kind", "region"});
        if (!v.contains("region")) throw ParseError(where + ": complement needs 'region'");
        return Region::complement(parse_region(v["region"], where + ".region"));
    }
    throw ParseError(where + ": unknown region kind '" + kind + "'");
}

ordered_json region_json(const Region& r) {
    ordered_json out;
    switch (r.kind()) {
    case Region::Kind::all_space:
        out["kind"] = "all_space";
        break;
    case Region::Kind::cylinder:
        out["kind"] = "cylinder";
        out["axis_point"] = vec3_json(r.axis_point());
        out["axis_dir"] = vec3_json(r.axis_dir());
        out["radius"] = r.radius();
        break;
    case Region::Kind::half_space:
        out["kind"] = "half_space";
        out["point"] = vec3_json(r.point());
        out["normal"] = vec3_json(r.normal());
        break;
    case Region::Kind::complement:
        out["kind"] = "complement";
        out["region"] = region_json(r.inner());
        break;
    }
    return out;
}

Path parse_path(const ordered_json& v, const std::string& where) {
    if (!v.is_object()) throw ParseError(where + ": expected a path object");
    expect_keys(v, where, {"name", "points", "closed", "speed"});
    if (!v.contains("name") || !v["name"].is_string())
        throw ParseError(where + ": path needs a 'name' string");
    std::string name = v["name"].get<std::string>();
    if (!v.contains("points") || !v["points"].is_array())
        throw ParseError(where + ": path needs a 'points' array");
    std::vector<Vec3> points;
    points.reserve(v["points"].size());
    int idx = 0;
    for (const auto& pt : v["points"])
        points.push_back(get_vec3(pt, where + ".points[" + std::to_string(idx++) + "]"));
    bool closed = false;
    if (v.contains("closed")) {
        if (!v["closed"].is_boolean()) throw ParseError(where + ".closed: expected a boolean");
        closed = v["closed"].get<bool>();
    }
    double speed = 0.01;
    if (v.contains("speed")) speed = get_number(v["speed"], where + ".speed");
    if (!(speed > 0)) throw ParseError(where + ".speed: must be > 0");
    try {
        return Path(std::move(name), std::move(points), closed, speed);
    } catch (const Error& e) {
        throw ParseError(where + ": " + e.what());
    }
}

// Coarse-then-refined minimum distance between a path and one singularity.
double path_singularity_distance(const Path& path, const Singularity& s) {
    auto dist = [&](int seg, double t) { return distance_to(s, path.segment_position(seg, t)); };
    constexpr int kCoarse = 32;
    double best = std::numeric_limits<double>::infinity();
    for (int seg = 0; seg < path.segment_count(); ++seg) {
        double d[kCoarse + 1];
        for (int k = 0; k <= kCoarse; ++k) {
            d[k] = dist(seg, static_cast<double>(k) / kCoarse);
            best = std::min(best, d[k]);
        }
        for (int k = 0; k <= kCoarse; ++k) {
            bool local_min = (k == 0 || d[k] <= d[k - 1]) && (k == kCoarse || d[k] <= d[k + 1]);
            if (!local_min) continue;
            double lo = (k == 0 ? 0.0 : (k - 1.0) / kCoarse);
            double hi = (k == kCoarse ? 1.0 : (k + 1.0) / kCoarse);
            constexpr double inv_phi = 0.6180339887498949;
            double a = hi - (hi - lo) * inv_phi;
            double b = lo + (hi - lo) * inv_phi;
            double fa = dist(seg, a), fb = dist(seg, b);
            for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
                if (fa < fb) {
                    hi = b;
                    b = a;
                    fb = fa;
                    a = hi - (hi - lo) * inv_phi;
                    fa = dist(seg, a);
                } else {
                    lo = a;
                    a = b;
                    fa = fb;
                    b = lo + (hi - lo) * inv_phi;
                    fb = dist(seg, b);
                }
            }
            best = std::min({best, fa, fb});
        }
    }
    return best;
}

CheckSettings parse_checks(const ordered_json& v, const std::string& where) {
    if (!v.is_object()) throw ParseError(where + ": expected an object");
    expect_keys(v, where,
                {"orthogonality_cos", "mass_ratio", "curl_rel", "arm_balance_abs",
                 "arm_balance_rel", "flux_zero", "tube_radius", "n_samples"});
    CheckSettings c;
    auto positive = [&](const char* key, double& slot) {
        if (!v.contains(key)) return;
        double x = get_number(v[key], where + "." + key);
        if (!(x > 0)) throw ParseError(where + "." + key + ": must be > 0");
        slot = x;
    };
    positive("orthogonality_cos", c.orthogonality_cos);
    positive("mass_ratio", c.mass_ratio);
    positive("curl_rel", c.curl_rel);
    positive("arm_balance_abs", c.arm_balance_abs);
    positive("arm_balance_rel", c.arm_balance_rel);
    positive("flux_zero", c.flux_zero);
    positive("tube_radius", c.tube_radius);
    if (v.contains("n_samples")) {
        if (!v["n_samples"].is_number_integer())
            throw ParseError(where + ".n_samples: expected an integer");
        int n = v["n_samples"].get<int>();
        if (n < 2) throw ParseError(where + ".n_samples: must be >= 2");
        c.n_samples = n;
    }
    return c;
}

} // namespace

std::string to_string(PhaseKind k) {
    switch (k) {
    case PhaseKind::hmw_induced: return "hmw_induced";
    case PhaseKind::ac_induced: return "ac_induced";
    case PhaseKind::permanent_electric: return "permanent_electric";
    }
    return "hmw_induced";
}

PhaseKind phase_kind_from_string(std::string_view s) {
    if (s == "hmw_induced") return PhaseKind::hmw_induced;
    if (s == "ac_induced") return PhaseKind::ac_induced;
    if (s == "permanent_electric") return PhaseKind::permanent_electric;
    throw ParseError("unknown phase_kind '" + std::string(s) + "'");
}

const Path* Scenario::find_path(std::string_view name) const {
    for (const auto& p : paths)
        if (p.name() == name) return &p;
    return nullptr;
}

const Path* Scenario::first_closed_path() const {
    for (const auto& p : paths)
        if (p.closed()) return &p;
    return nullptr;
}

Scenario parse_scenario(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("scenario: top level must be an object");
    expect_keys(doc, "scenario",
                {"particle", "fields", "paths", "excluded_region", "phase_kind", "checks"});

    Scenario s;

    if (doc.contains("particle")) {
        const auto& p = doc["particle"];
        if (!p.is_object()) throw ParseError("particle: expected an object");
        expect_keys(p, "particle", {"mass", "alpha", "chi", "d", "spin"});
        if (p.contains("mass")) s.particle.mass = get_number(p["mass"], "particle.mass");
        if (p.contains("alpha")) s.particle.alpha = get_number(p["alpha"], "particle.alpha");
        if (p.contains("chi")) s.particle.chi = get_number(p["chi"], "particle.chi");
        if (p.contains("d")) s.particle.d = get_number(p["d"], "particle.d");
        if (p.contains("spin")) {
            s.particle.spin = get_vec3(p["spin"], "particle.spin");
            s.particle.has_spin = true;
        }
    }

    if (doc.contains("fields")) {
        const auto& f = doc["fields"];
        if (!f.is_object()) throw ParseError("fields: expected an object");
        expect_keys(f, "fields", {"E", "B"});
        for (const char* side : {"E", "B"}) {
            if (!f.contains(side)) continue;
            if (!f[side].is_array())
                throw ParseError(std::string("fields.") + side + ": expected an array");
            int idx = 0;
            for (const auto& item : f[side]) {
                std::string where =
                    std::string("fields.") + side + "[" + std::to_string(idx++) + "]";
                auto field = parse_field(item, where);
                (side[0] == 'E' ? s.e_components : s.b_components).push_back(std::move(field));
            }
        }
    }

    if (doc.contains("paths")) {
        if (!doc["paths"].is_array()) throw ParseError("paths: expected an array");
        int idx = 0;
        for (const auto& item : doc["paths"])
            s.paths.push_back(parse_path(item, "paths[" + std::to_string(idx++) + "]"));
    }

    if (doc.contains("excluded_region")) {
        s.excluded_region = parse_region(doc["excluded_region"], "excluded_region");
    } else {
        // Default: a thin cylinder around the first declared singular axis.
        s.excluded_region = Region::nothing();
        bool found = false;
        for (const auto* side : {&s.e_components, &s.b_components}) {
            for (const auto& f : *side) {
                for (const auto& sing : f.singularities()) {
                    if (const auto* line = std::get_if<LineSingularity>(&sing)) {
                        s.excluded_region = Region::cylinder(line->point, line->dir, 0.05);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
    }

    if (doc.contains("phase_kind")) {
        if (!doc["phase_kind"].is_string()) throw ParseError("phase_kind: expected a string");
        s.phase_kind = phase_kind_from_string(doc["phase_kind"].get<std::string>());
    }

    if (doc.contains("checks")) s.checks = parse_checks(doc["checks"], "checks");

    auto diags = validate(s);
    if (!diags.empty()) {
        std::ostringstream os;
        os << "scenario violates invariants:";
        for (const auto& d : diags) os << "\n  [" << d.code << "] " << d.message;
        throw ValidationError(os.str(), std::move(diags));
    }
    return s;
}

std::string serialize_scenario(const Scenario& s) {
    ordered_json doc;

    ordered_json particle;
    particle["mass"] = s.particle.mass;
    particle["alpha"] = s.particle.alpha;
    particle["chi"] = s.particle.chi;
    particle["d"] = s.particle.d;
    if (s.particle.has_spin) particle["spin"] = vec3_json(s.particle.spin);
    doc["particle"] = std::move(particle);

    ordered_json fields;
    for (const char* side : {"E", "B"}) {
        ordered_json arr = ordered_json::array();
        const auto& comps = (side[0] == 'E') ? s.e_components : s.b_components;
        for (const auto& f : comps) {
            if (!f.descriptor())
                throw Error("scenario contains a synthetic field; it cannot be serialized");
            const auto& d = *f.descriptor();
            ordered_json fd;
            fd["kind"] = d.kind;
            ordered_json params;
            for (const auto& [key, value] : d.params) params[key] = value;
            fd["params"] = std::move(params);
            fd["axis_point"] = vec3_json(d.axis_point);
            fd["axis_dir"] = vec3_json(d.axis_dir);
            arr.push_back(std::move(fd));
        }
        fields[side] = std::move(arr);
    }
    doc["fields"] = std::move(fields);

    ordered_json paths = ordered_json::array();
    for (const auto& p : s.paths) {
        ordered_json pj;
        pj["name"] = p.name();
        ordered_json pts = ordered_json::array();
        for (const auto& pt : p.control_points()) pts.push_back(vec3_json(pt));
        pj["points"] = std::move(pts);
        pj["closed"] = p.closed();
        pj["speed"] = p.speed();
        paths.push_back(std::move(pj));
    }
    doc["paths"] = std::move(paths);

    doc["excluded_region"] = region_json(s.excluded_region);
    doc["phase_kind"] = to_string(s.phase_kind);

    ordered_json checks;
    checks["orthogonality_cos"] = s.checks.orthogonality_cos;
    checks["mass_ratio"] = s.checks.mass_ratio;
    checks["curl_rel"] = s.checks.curl_rel;
    checks["arm_balance_abs"] = s.checks.arm_balance_abs;
    checks["arm_balance_rel"] = s.checks.arm_balance_rel;
    checks["flux_zero"] = s.checks.flux_zero;
    checks["tube_radius"] = s.checks.tube_radius;
    checks["n_samples"] = s.checks.n_samples;
    doc["checks"] = std::move(checks);

    return doc.dump(2) + "\n";
}

std::vector<Diagnostic> validate(const Scenario& s) {
    std::vector<Diagnostic> out;
    auto add = [&](std::string code, std::string message) {
        out.push_back({std::move(code), std::move(message)});
    };

    if (!(s.particle.mass > 0)) add("MASS_NOT_POSITIVE", "particle mass must be > 0");
    if (s.particle.alpha < 0) add("ALPHA_NEGATIVE", "polarisability alpha must be >= 0");
    if (s.particle.chi < 0) add("CHI_NEGATIVE", "susceptibility chi must be >= 0");
    if (s.particle.d < 0) add("DIPOLE_NEGATIVE", "dipole magnitude d must be >= 0");
    if (s.particle.d > 0) {
        if (!s.particle.has_spin) {
            add("SPIN_REQUIRED", "particle with d > 0 needs a spin direction");
        } else if (std::abs(s.particle.spin.norm() - 1.0) > 1e-12) {
            add("SPIN_NOT_UNIT", "spin direction must be a unit vector when d > 0");
        }
    }
    if (s.phase_kind == PhaseKind::permanent_electric && !(s.particle.d > 0))
        add("PERMANENT_DIPOLE_ZERO", "permanent_electric scenarios need d > 0");

    std::set<std::string> seen;
    for (const auto& p : s.paths)
        if (!seen.insert(p.name()).second)
            add("DUPLICATE_PATH_NAME", "duplicate path name '" + p.name() + "'");

    std::vector<Singularity> all_sing;
    for (const auto* side : {&s.e_components, &s.b_components})
        for (const auto& f : *side)
            all_sing.insert(all_sing.end(), f.singularities().begin(), f.singularities().end());

    for (const auto& p : s.paths) {
        if (p.speed() >= 1.0)
            add("SPEED_NOT_SUBLUMINAL", "path '" + p.name() + "': speed must be < 1");

        for (const auto& sing : all_sing) {
            double dist = path_singularity_distance(p, sing);
            if (dist < 1e-9)
                add("PATH_ON_SINGULARITY",
                    "path '" + p.name() + "' intersects the " + describe(sing));
        }

        bool inside = false;
        for (int seg = 0; seg < p.segment_count() && !inside; ++seg)
            for (int k = 0; k <= 32 && !inside; ++k)
                inside = s.excluded_region.contains(p.segment_position(seg, k / 32.0));
        if (inside)
            add("PATH_IN_EXCLUDED_REGION",
                "path '" + p.name() + "' enters the excluded region");
    }

    return out;
}

} // namespace topophase
