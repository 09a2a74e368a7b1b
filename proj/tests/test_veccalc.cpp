#include "topophase/fd.hpp"
#include "topophase/field.hpp"
#include "topophase/vec3.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace topophase;
using testutil::Rng;

namespace {

VectorField linear_radial() { // F(x) = (x, y, z), div = 3
    return VectorField::synthetic([](const Vec3& x) { return x; });
}

bool near(const Vec3& a, const Vec3& b, double tol) { return (a - b).norm() <= tol; }

} // namespace

TEST_CASE("cross product basis orientation") {
    CHECK(cross({1, 0, 0}, {0, 1, 0}) == Vec3{0, 0, 1});
    CHECK(cross({0, 0, 1}, {1, 0, 0}) == Vec3{0, 1, 0});
    Vec3 a{0.3, -1.2, 2.0};
    CHECK(cross(a, a) == Vec3{0, 0, 0});
}

TEST_CASE("cross product algebra on random vectors") {
    Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        Vec3 a = rng.unit();
        Vec3 b = rng.unit();
        // antisymmetry is exact
        CHECK(cross(a, b) == -cross(b, a));
        // Lagrange identity |a x b|^2 + (a.b)^2 = |a|^2 |b|^2
        double lhs = cross(a, b).norm2() + dot(a, b) * dot(a, b);
        CHECK(std::abs(lhs - a.norm2() * b.norm2()) <= 1e-12);
        // a . (a x b) = 0
        CHECK(std::abs(dot(a, cross(a, b))) <= 1e-12);
        // bilinearity
        double s = rng.uniform(-2, 2);
        Vec3 c = rng.unit();
        CHECK(near(cross(a * s + b, c), cross(a, c) * s + cross(b, c), 1e-12));
    }
}

TEST_CASE("fd_div on catalog shapes") {
    FDParams p2{0.0, 2};
    FDParams p4{0.0, 4};

    VectorField uniform = catalog_field("uniform", {{"strength", 3.0}});
    CHECK(fd_div(uniform, {0.4, -1.0, 2.0}, p2) == 0.0);

    CHECK(std::abs(fd_div(linear_radial(), {1.0, 2.0, -0.5}, p2) - 3.0) <= 1e-9);

    VectorField line = catalog_field("line_charge_E", {{"lambda", 2.0 * testutil::kPi}});
    CHECK(std::abs(fd_div(line, {1, 0, 0}, p4)) <= 1e-8);

    // div of a curl-shaped field vanishes
    VectorField swirl = VectorField::synthetic([](const Vec3& x) { return Vec3{-x.y, x.x, 0}; });
    CHECK(std::abs(fd_div(swirl, {0.3, 0.7, -0.2}, p2)) <= 1e-10);
}

TEST_CASE("fd_curl on catalog shapes") {
    FDParams p2{0.0, 2};

    VectorField uniform = catalog_field("uniform", {{"strength", 1.5}}, {0, 0, 0}, {0, 1, 0});
    CHECK(fd_curl(uniform, {1, 1, 1}, p2) == Vec3{0, 0, 0});

    VectorField shear = VectorField::synthetic([](const Vec3& x) { return Vec3{0, x.x, 0}; });
    CHECK(near(fd_curl(shear, {0.2, -0.4, 0.9}, p2), {0, 0, 1}, 1e-9));

    VectorField swirl = VectorField::synthetic([](const Vec3& x) { return Vec3{-x.y, x.x, 0}; });
    CHECK(near(fd_curl(swirl, {0.2, -0.4, 0.9}, p2), {0, 0, 2}, 1e-9));

    // curl of a gradient field vanishes: grad(x^2+y^2+z^2) = 2(x,y,z)
    VectorField grad_r2 = VectorField::synthetic([](const Vec3& x) { return x * 2.0; });
    CHECK(fd_curl(grad_r2, {0.5, 0.1, -0.8}, p2).norm() <= 1e-10);
}

TEST_CASE("advect directional derivative") {
    FDParams p2{0.0, 2};
    VectorField uniform = catalog_field("uniform", {{"strength", 2.0}});
    CHECK(advect({1, 2, 3}, uniform, {0, 0, 0}, p2) == Vec3{0, 0, 0});

    VectorField quad = VectorField::synthetic([](const Vec3& x) { return Vec3{x.x * x.x, 0, 0}; });
    CHECK(near(advect({1, 0, 0}, quad, {2, 0, 0}, p2), {4, 0, 0}, 1e-9));

    CHECK(advect({0, 0, 0}, quad, {2, 0, 0}, p2) == Vec3{0, 0, 0});
}

TEST_CASE("order-2 truncation error scales by ~4x when h halves") {
    VectorField line = catalog_field("line_charge_E", {{"lambda", 2.0 * testutil::kPi}});
    Vec3 x{0.7, 0.3, 0.0};
    double e1 = std::abs(fd_div(line, x, FDParams{1e-3, 2}));
    double e2 = std::abs(fd_div(line, x, FDParams{5e-4, 2}));
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.0);
}

TEST_CASE("stencils refuse to straddle singularities") {
    VectorField line = catalog_field("line_charge_E", {{"lambda", 1.0}});
    CHECK_THROWS_AS(fd_div(line, {0, 0, 5}, FDParams{}), SingularityError);
    // within the order-4 reach but outside the order-2 reach
    Vec3 x{1.5e-4, 0, 0};
    CHECK_THROWS_AS(fd_div(line, x, FDParams{1e-4, 4}), SingularityError);
    CHECK_NOTHROW(fd_div(line, x, FDParams{1e-4, 2}));
}

TEST_CASE("non-finite stencil values are an error, not a result") {
    VectorField bad = VectorField::synthetic([](const Vec3& x) {
        return x.x > 0.5 ? Vec3{std::nan(""), 0, 0} : Vec3{1, 0, 0};
    });
    CHECK_THROWS_AS(fd_div(bad, {0.5, 0, 0}, FDParams{}), SingularityError);
}

TEST_CASE("FDParams validation") {
    VectorField uniform = catalog_field("uniform", {{"strength", 1.0}});
    CHECK_THROWS_AS(fd_div(uniform, {0, 0, 0}, FDParams{0.0, 3}), Error);
    CHECK_THROWS_AS(fd_div(uniform, {0, 0, 0}, FDParams{-1.0, 2}), Error);
}
