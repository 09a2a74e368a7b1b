#include "topophase/fd.hpp"
#include "topophase/field.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace topophase;
using testutil::kPi;
using testutil::Rng;

namespace {
bool near(const Vec3& a, const Vec3& b, double tol) { return (a - b).norm() <= tol; }
}

TEST_CASE("catalog closed forms") {
    VectorField line = catalog_field("line_charge_E", {{"lambda", 2.0 * kPi}});
    CHECK(near(line({1, 0, 0}), {1, 0, 0}, 1e-15));
    CHECK(near(line({0, 2, 3}), {0, 0.5, 0}, 1e-15)); // lambda/(2 pi r), r = 2

    VectorField wire = catalog_field("current_wire_B", {{"current", 2.0 * kPi}});
    CHECK(near(wire({1, 0, 0}), {0, 1, 0}, 1e-15));
    CHECK(near(wire({0, 1, 0}), {-1, 0, 0}, 1e-15));

    VectorField mono = catalog_field("monopole_line_B", {{"g", 2.0 * kPi}});
    CHECK(near(mono({1, 0, 0}), {1, 0, 0}, 1e-15));

    VectorField uniform = catalog_field("uniform", {{"strength", 3.0}});
    CHECK(uniform({7, -2, 0.5}) == Vec3{0, 0, 3});

    VectorField point = catalog_field("point_charge_E", {{"q", 4.0 * kPi}});
    CHECK(near(point({1, 0, 0}), {1, 0, 0}, 1e-15));
    CHECK(near(point({0, 0, 2}), {0, 0, 0.25}, 1e-15));

    VectorField pole = catalog_field("monopole_point_B", {{"g", 4.0 * kPi}});
    CHECK(near(pole({0, 2, 0}), {0, 0.25, 0}, 1e-15));

    VectorField sol =
        catalog_field("solenoid_B", {{"B0", 2.0}, {"radius", 1.0}});
    CHECK(sol({0.3, 0.2, 5.0}) == Vec3{0, 0, 2});
    CHECK(sol({1.5, 0, 0}) == Vec3{0, 0, 0});
}

TEST_CASE("catalog respects arbitrary axes") {
    // line charge along x through (0, 1, 0)
    VectorField line =
        catalog_field("line_charge_E", {{"lambda", 2.0 * kPi}}, {0, 1, 0}, {2, 0, 0});
    CHECK(near(line({5, 2, 0}), {0, 1, 0}, 1e-15));

    VectorField uniform = catalog_field("uniform", {{"strength", 2.0}}, {0, 0, 0}, {0, 0, -3});
    CHECK(near(uniform({1, 2, 3}), {0, 0, -2}, 1e-15));
}

TEST_CASE("catalog rejects bad descriptors") {
    CHECK_THROWS_AS(catalog_field("warp_field", {}), Error);
    CHECK_THROWS_AS(catalog_field("line_charge_E", {{"lambda", 1.0}}, {0, 0, 0}, {0, 0, 0}),
                    Error);
    CHECK_THROWS_AS(catalog_field("line_charge_E", {}), Error);                    // missing param
    CHECK_THROWS_AS(catalog_field("uniform", {{"strength", 1.0}, {"extra", 2.0}}), Error);
    CHECK_THROWS_AS(catalog_field("solenoid_B", {{"B0", 1.0}, {"radius", -1.0}}), Error);
}

TEST_CASE("evaluating on a singularity is an error") {
    VectorField line = catalog_field("line_charge_E", {{"lambda", 1.0}});
    CHECK_THROWS_AS(line({0, 0, 2}), SingularityError);
    CHECK(line.singularity_distance({3, 4, 17}) == doctest::Approx(5.0));

    VectorField sol = catalog_field("solenoid_B", {{"B0", 1.0}, {"radius", 2.0}});
    CHECK(sol.singularity_distance({2, 0, 9}) == doctest::Approx(0.0));
    CHECK(sol.singularity_distance({0.5, 0, 0}) == doctest::Approx(1.5));
}

TEST_CASE("superpose is the pointwise sum") {
    Rng rng(7);
    VectorField line = catalog_field("line_charge_E", {{"lambda", 1.3}});

    // identity
    VectorField single = superpose({line});
    for (int i = 0; i < 20; ++i) {
        Vec3 x = rng.in_box(2.0) + Vec3{3, 0, 0};
        CHECK(single(x) == line(x));
    }

    // linearity of uniforms
    VectorField u = catalog_field("uniform", {{"strength", 1.0}}, {0, 0, 0}, {1, 0, 0});
    VectorField w = catalog_field("uniform", {{"strength", 2.0}}, {0, 0, 0}, {0, 1, 0});
    VectorField both = superpose({u, w});
    CHECK(near(both({4, 5, 6}), {1, 2, 0}, 1e-15));

    // opposite line charges cancel off axis
    VectorField plus = catalog_field("line_charge_E", {{"lambda", 2.0}});
    VectorField minus = catalog_field("line_charge_E", {{"lambda", -2.0}});
    VectorField zero = superpose({plus, minus});
    for (int i = 0; i < 50; ++i) {
        Vec3 x = rng.in_box(3.0);
        if (zero.singularity_distance(x) < 0.1) continue;
        CHECK(zero(x).norm() <= 1e-15);
    }
    CHECK(zero.singularities().size() == 2);
}

TEST_CASE("catalog fields are divergence- and curl-free off their sources") {
    // field magnitudes are O(1) in the sampled shell
    struct Case {
        const char* name;
        VectorField field;
    };
    const Case cases[] = {
        {"line_charge_E", catalog_field("line_charge_E", {{"lambda", 0.63}})},
        {"current_wire_B", catalog_field("current_wire_B", {{"current", 0.63}})},
        {"monopole_line_B", catalog_field("monopole_line_B", {{"g", 0.63}})},
        {"point_charge_E", catalog_field("point_charge_E", {{"q", 1.3}})},
        {"monopole_point_B", catalog_field("monopole_point_B", {{"g", 1.3}})},
    };
    FDParams p4{0.0, 4};
    Rng rng(99);
    for (const auto& c : cases) {
        CAPTURE(c.name);
        int tested = 0;
        while (tested < 100) {
            Vec3 x = rng.in_box(2.0);
            if (c.field.singularity_distance(x) < 0.1) continue;
            ++tested;
            CHECK(std::abs(fd_div(c.field, x, p4)) <= 1e-6);
            CHECK(fd_curl(c.field, x, p4).norm() <= 1e-6);
        }
    }
}

TEST_CASE("solenoid interior is uniform and stencil-safe away from the shell") {
    VectorField sol = catalog_field("solenoid_B", {{"B0", 2.0}, {"radius", 1.0}});
    FDParams p2{0.0, 2};
    CHECK(fd_curl(sol, {0.2, 0.1, 0}, p2).norm() == 0.0);
    CHECK(fd_div(sol, {0.2, 0.1, 0}, p2) == 0.0);
    // but stencils may not straddle the shell
    CHECK_THROWS_AS(fd_curl(sol, {1.0, 0, 0}, p2), SingularityError);
}

TEST_CASE("regions are deterministic and closed under complement") {
    Region cyl = Region::cylinder({0, 0, 0}, {0, 0, 1}, 1.0);
    CHECK(cyl.contains({0.5, 0, 77}));
    CHECK(!cyl.contains({1.5, 0, 0}));
    CHECK(cyl.contains({1.0, 0, 0})); // boundary is inside

    Region half = Region::half_space({0, 0, 0}, {1, 0, 0});
    CHECK(half.contains({2, -3, 4}));
    CHECK(!half.contains({-0.1, 0, 0}));

    Region all = Region::all_space();
    Region none = Region::nothing();
    Rng rng(5);
    Region comp = Region::complement(cyl);
    for (int i = 0; i < 200; ++i) {
        Vec3 x = rng.in_box(3.0);
        CHECK(comp.contains(x) == !cyl.contains(x));
        CHECK(all.contains(x));
        CHECK(!none.contains(x));
    }

    CHECK(cyl == Region::cylinder({0, 0, 0}, {0, 0, 2}, 1.0)); // axis normalizes
    CHECK(!(cyl == half));
}
