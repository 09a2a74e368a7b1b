// Regenerates the bundled example scenarios (scenarios/*.json).
//
// The circular paths are sampled densely enough that the spline tangents stay
// orthogonal to the fields well inside the default certification threshold.

#include "topophase/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <vector>

using namespace topophase;

namespace {

std::vector<Vec3> circle(int n, double radius) {
    std::vector<Vec3> pts;
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * std::numbers::pi * k / n;
        pts.push_back({radius * std::cos(th), radius * std::sin(th), 0.0});
    }
    return pts;
}

std::vector<Vec3> semicircle(int n, double radius, int orientation) {
    std::vector<Vec3> pts;
    for (int k = 0; k < n; ++k) {
        double th = orientation * std::numbers::pi * k / (n - 1.0);
        pts.push_back({radius * std::cos(th), radius * std::sin(th), 0.0});
    }
    return pts;
}

Scenario wire_hmw() {
    Scenario s;
    s.particle.mass = 1.0;
    s.particle.alpha = 1e-3;
    s.e_components.push_back(catalog_field("line_charge_E", {{"lambda", 2.0}}));
    s.b_components.push_back(catalog_field("uniform", {{"strength", 3.0}}));
    s.paths.emplace_back("loop", circle(512, 1.0), true, 0.01);
    s.paths.emplace_back("arm_up", semicircle(513, 1.0, +1), false, 0.01);
    s.paths.emplace_back("arm_down", semicircle(513, 1.0, -1), false, 0.01);
    s.excluded_region = Region::cylinder({0, 0, 0}, {0, 0, 1}, 0.05);
    return s;
}

Scenario uniform_trivial() {
    Scenario s;
    s.particle.mass = 1.0;
    s.particle.alpha = 1e-3;
    s.e_components.push_back(
        catalog_field("uniform", {{"strength", 1.0}}, {0, 0, 0}, {1, 0, 0}));
    s.b_components.push_back(catalog_field("uniform", {{"strength", 3.0}}));
    s.paths.emplace_back("loop", circle(128, 1.0), true, 0.01);
    return s;
}

} // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "scenarios";
    std::filesystem::create_directories(dir);
    auto emit = [&](const char* name, const Scenario& s) {
        std::ofstream out(dir / name, std::ios::binary);
        out << serialize_scenario(s);
        std::cout << "wrote " << (dir / name).string() << "\n";
    };
    emit("wire_hmw.json", wire_hmw());
    emit("uniform_trivial.json", uniform_trivial());
    return 0;
}
