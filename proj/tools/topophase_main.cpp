// topophase: scenario in, phases / topology reports / CSV sweeps out.
//
// Exit codes: 0 success (or topological classification), 1 non-topological
// classification from `check`, 2 input error.

#include "topophase/dipole.hpp"
#include "topophase/phase.hpp"
#include "topophase/relkit.hpp"
#include "topophase/scenario.hpp"
#include "topophase/textio.hpp"
#include "topophase/topocheck.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace topophase;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
}

int cmd_phase(const std::string& file, const std::string& path_name, double tol) {
    Scenario s = parse_scenario(read_file(file));
    const Path* path = s.find_path(path_name);
    if (!path) throw Error("unknown path '" + path_name + "'");
    PhaseVectorField T = phase_vector_field(s);
    PhaseResult r = line_phase(T, *path, tol);
    std::cout << "kind: " << to_string(T.kind) << "\n"
              << "path: " << path->name() << "\n"
              << "phase: " << format_double(r.value) << "\n"
              << "abs_error: " << format_double(r.abs_error_estimate) << "\n"
              << "subdivisions: " << r.subdivisions << "\n";
    return 0;
}

int cmd_check(const std::string& file, const std::string& json_out) {
    Scenario s = parse_scenario(read_file(file));
    TopologyReport rep = classify(s);
    std::cout << rep.to_text();
    if (!json_out.empty()) write_file(json_out, rep.to_json());
    return rep.classification == Classification::topological ? 0 : 1;
}

// Walks a dotted key ("fields.B.0.params.strength") into the document.
nlohmann::ordered_json* resolve(nlohmann::ordered_json& doc, const std::string& dotted) {
    nlohmann::ordered_json* cur = &doc;
    std::istringstream keys(dotted);
    std::string key;
    while (std::getline(keys, key, '.')) {
        if (cur->is_object()) {
            if (!cur->contains(key)) return nullptr;
            cur = &(*cur)[key];
        } else if (cur->is_array()) {
            if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
                return nullptr;
            size_t idx = std::stoul(key);
            if (idx >= cur->size()) return nullptr;
            cur = &(*cur)[idx];
        } else {
            return nullptr;
        }
    }
    return cur;
}

int cmd_sweep(const std::string& file, const std::string& param, const std::vector<double>& values,
              const std::string& out_file) {
    if (values.empty()) throw Error("empty sweep");
    std::string text = read_file(file);
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::ordered_json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }

    std::ostringstream csv;
    csv << "param,phase,abs_error,classification\n";
    for (double value : values) {
        nlohmann::ordered_json probe = doc;
        nlohmann::ordered_json* leaf = resolve(probe, param);
        if (!leaf || !leaf->is_number())
            throw Error("parameter path '" + param + "' does not resolve to a numeric leaf");
        *leaf = value;
        Scenario s = parse_scenario(probe.dump());
        const Path* loop = s.first_closed_path();
        if (!loop) throw Error("sweep needs a closed path in the scenario");
        PhaseResult r = line_phase(phase_vector_field(s), *loop);
        TopologyReport rep = classify(s);
        csv << format_double(value) << ',' << format_double(r.value) << ','
            << format_double(r.abs_error_estimate) << ',' << to_string(rep.classification)
            << '\n';
    }
    write_file(out_file, csv.str());
    return 0;
}

struct GridAxis {
    double lo = 0, hi = 0;
    int count = 1;
};

GridAxis parse_axis(const std::string& spec) {
    GridAxis a;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> a.lo >> c1 >> a.hi >> c2 >> a.count) || c1 != ':' || c2 != ':' || a.count < 1 ||
        !(in >> std::ws).eof())
        throw Error("bad grid axis '" + spec + "' (want lo:hi:count)");
    return a;
}

int cmd_fields(const std::string& file, const std::string& grid, const std::string& out_file) {
    Scenario s = parse_scenario(read_file(file));

    std::vector<GridAxis> axes;
    std::istringstream in(grid);
    std::string part;
    while (std::getline(in, part, ',')) axes.push_back(parse_axis(part));
    if (axes.size() != 3) throw Error("grid spec needs three axes x,y,z");

    auto coords = [](const GridAxis& a, int i) {
        return a.count == 1 ? a.lo : a.lo + (a.hi - a.lo) * i / (a.count - 1.0);
    };

    VectorField E = s.electric();
    VectorField B = s.magnetic();
    PhaseVectorField T = phase_vector_field(s);

    std::ostringstream csv;
    csv << "x,y,z,Ex,Ey,Ez,Bx,By,Bz,Tx,Ty,Tz\n";
    for (int ix = 0; ix < axes[0].count; ++ix)
        for (int iy = 0; iy < axes[1].count; ++iy)
            for (int iz = 0; iz < axes[2].count; ++iz) {
                Vec3 x{coords(axes[0], ix), coords(axes[1], iy), coords(axes[2], iz)};
                double margin = 1e-6;
                if (std::min({E.singularity_distance(x), B.singularity_distance(x),
                              T.field.singularity_distance(x)}) <= margin)
                    throw Error("grid point (" + format_double(x.x) + ", " + format_double(x.y) +
                                ", " + format_double(x.z) + ") is on a field singularity");
                Vec3 e = E(x), b = B(x), t = T.field(x);
                csv << format_double(x.x) << ',' << format_double(x.y) << ','
                    << format_double(x.z) << ',' << format_double(e.x) << ','
                    << format_double(e.y) << ',' << format_double(e.z) << ','
                    << format_double(b.x) << ',' << format_double(b.y) << ','
                    << format_double(b.z) << ',' << format_double(t.x) << ','
                    << format_double(t.y) << ',' << format_double(t.z) << '\n';
            }
    write_file(out_file, csv.str());
    return 0;
}

int cmd_duality(const std::string& file, const std::string& out_file) {
    Scenario dual = duality_map(parse_scenario(read_file(file)));
    write_file(out_file, serialize_scenario(dual));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological phase laboratory for induced-dipole interferometry"};
    app.require_subcommand(1);

    std::string file, path_name, param, out_file, grid, json_out;
    std::vector<double> values;
    double tol = 1e-9;

    auto* phase = app.add_subcommand("phase", "loop/line phase of T along a named path");
    phase->add_option("file", file, "scenario file")->required();
    phase->add_option("--path", path_name, "path name")->required();
    phase->add_option("--tol", tol, "quadrature tolerance");

    auto* check = app.add_subcommand("check", "topology certification report");
    check->add_option("file", file, "scenario file")->required();
    check->add_option("--json", json_out, "write the machine-readable report here");

    auto* sweep = app.add_subcommand("sweep", "phase and classification vs a scenario parameter");
    sweep->add_option("file", file, "scenario file")->required();
    sweep->add_option("--param", param, "dotted key into the scenario document")->required();
    sweep->add_option("--values", values, "comma-separated parameter values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", out_file, "output CSV")->required();

    auto* fields = app.add_subcommand("fields", "sample E, B and T on a grid");
    fields->add_option("file", file, "scenario file")->required();
    fields->add_option("--grid", grid, "lo:hi:count,lo:hi:count,lo:hi:count")->required();
    fields->add_option("--out", out_file, "output CSV")->required();

    auto* duality = app.add_subcommand("duality", "write the HMW<->AC dual scenario");
    duality->add_option("file", file, "scenario file")->required();
    duality->add_option("--out", out_file, "output scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(phase)) return cmd_phase(file, path_name, tol);
        if (app.got_subcommand(check)) return cmd_check(file, json_out);
        if (app.got_subcommand(sweep)) return cmd_sweep(file, param, values, out_file);
        if (app.got_subcommand(fields)) return cmd_fields(file, grid, out_file);
        if (app.got_subcommand(duality)) return cmd_duality(file, out_file);
    } catch (const topophase::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
