/**
 * @file test_circle_fit.cpp
 */

#include <doctest.h>

#include <cmath>
#include <vector>

#include <geomfit/circle_fit.hpp>
#include <geomfit/errors.hpp>
#include <geomfit/oracle.hpp>
#include <geomfit/plane_fit.hpp>
#include <geomfit/rng.hpp>

#include "test_helpers.hpp"

using namespace geomfit;
using namespace geomfit::testing;

namespace {

constexpr double kTwoPi = 2.0 * 3.141592653589793238462643383279502884;

std::vector<Point3> circle_points(Point3 center, Vec3 normal, double radius,
                                  int n) {
    const Vec3 nn = normalized(normal);
    const auto [e1, e2] = plane_basis(nn);
    std::vector<Point3> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double theta = kTwoPi * k / n;
        pts.push_back(center + radius * (std::cos(theta) * e1 + std::sin(theta) * e2));
    }
    return pts;
}

PlaneFit xy_plane() {
    return fit_plane(std::vector<Point3>{{0, 0, 0}, {3, 0, 0}, {0, 3, 0}, {3, 3, 0}});
}

double direct_expansion_objective(std::span<const Vec2> pts, Vec2 r) {
    double mean2 = 0.0;
    double mean4 = 0.0;
    for (const Vec2& p : pts) {
        const double d2 = squared_norm(p - r);
        mean2 += d2;
        mean4 += d2 * d2;
    }
    mean2 /= static_cast<double>(pts.size());
    mean4 /= static_cast<double>(pts.size());
    return mean4 - mean2 * mean2;
}

} // namespace

TEST_CASE("project_to_plane: pinned examples") {
    const PlaneFit plane = xy_plane();

    {
        const auto out = project_to_plane(std::vector<Point3>{{1, 2, 0}}, plane);
        CHECK(out[0].x == 1.0);
        CHECK(out[0].y == 2.0);
        CHECK(std::abs(out[0].z) <= 1e-15);
    }
    {
        const auto out = project_to_plane(std::vector<Point3>{{0, 0, 7}}, plane);
        CHECK(std::abs(out[0].x) <= 1e-15);
        CHECK(std::abs(out[0].z) <= 1e-15);
    }
    {
        // plane x + y + z = 0
        PlaneFit oblique;
        oblique.normal = normalized(Vec3{1, 1, 1});
        oblique.offset = 0.0;
        oblique.centroid = {0, 0, 0};
        const auto out = project_to_plane(std::vector<Point3>{{1, 2, 3}}, oblique);
        CHECK(out[0].x == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(out[0].y == doctest::Approx(0.0));
        CHECK(out[0].z == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(dot(out[0], oblique.normal)) <= 1e-14);
    }
}

TEST_CASE("project_to_plane: idempotent") {
    Rng rng(60);
    const std::vector<Point3> pts = random_cloud(rng, 25);
    const PlaneFit plane = fit_plane(pts);

    const auto once = project_to_plane(pts, plane);
    const auto twice = project_to_plane(once, plane);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(norm(twice[i] - once[i]) <= 1e-12);
        CHECK(std::abs(dot(once[i], plane.normal) - plane.offset) <=
              1e-12 * std::max(1.0, std::abs(plane.offset)));
    }
}

TEST_CASE("circle_moments: pinned examples") {
    {
        const std::vector<Vec2> cross_pts = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const CircleMoments mom = circle_moments(cross_pts);
        CHECK(mom.q.xx == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(mom.q.yy == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(mom.q.xy == 0.0);
        CHECK(std::abs(mom.l.x) <= 1e-15);
        CHECK(std::abs(mom.l.y) <= 1e-15);
        CHECK(std::abs(mom.m) <= 1e-15);
    }
    {
        // direct evaluation of the fourth-moment variance on the raw coordinates
        const std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};
        const CircleMoments mom = circle_moments(tri);
        CHECK(mom.m == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    }
    {
        const std::vector<Vec2> collinear = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
        const CircleMoments mom = circle_moments(collinear);
        CHECK(std::abs(mom.q.det()) <= 1e-14);
    }
    CHECK_THROWS_AS(static_cast<void>(circle_moments(std::vector<Vec2>{{0, 0}})),
                    Error);
}

TEST_CASE("solve_center: pinned examples") {
    {
        const Vec2 r = solve_center({0.5, 0.0, 0.5}, {0, 0});
        CHECK(r.x == 0.0);
        CHECK(r.y == 0.0);
    }
    {
        const Vec2 r = solve_center({0.5, 0.0, 0.5}, {1, 0});
        CHECK(r.x == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.y == doctest::Approx(0.0));
    }
}

TEST_CASE("solve_center: circumcircle of the right isoceles triangle") {
    const std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};

    // center at the 2D centroid, then lift the solved center back
    Vec2 c{};
    for (const Vec2& p : tri) c += p;
    c = c / 3.0;
    std::vector<Vec2> centered;
    for (const Vec2& p : tri) centered.push_back(p - c);

    const CircleMoments mom = circle_moments(centered);
    const Vec2 rel = solve_center(mom.q, mom.l);
    const Vec2 center = rel + c;

    CHECK(center.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(center.y == doctest::Approx(0.5).epsilon(1e-12));

    const double d0 = norm(tri[0] - center);
    for (const Vec2& p : tri) {
        CHECK(norm(p - center) == doctest::Approx(d0).epsilon(1e-12));
    }
}

TEST_CASE("radius_from_center: pinned examples") {
    const std::vector<Vec2> cross_pts = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    CHECK(radius_from_center(cross_pts, {0, 0}) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(radius_from_center(std::vector<Vec2>{{2, 0}}, {0, 0}) ==
          doctest::Approx(2.0).epsilon(1e-15));

    const std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};
    CHECK(radius_from_center(tri, {0.5, 0.5}) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("circle_objective: pinned examples") {
    const std::vector<Vec2> cross_pts = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    CHECK(circle_objective(cross_pts, {0, 0}, 1.0) == 0.0);
    CHECK(circle_objective(cross_pts, {0, 0}, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("circle_objective: fitted parameters are a local minimum") {
    Rng rng(61);
    std::vector<Vec2> pts;
    for (int k = 0; k < 25; ++k) {
        const double theta = kTwoPi * k / 25;
        const double r = 2.0 + 0.05 * rng.gauss();
        pts.push_back({0.7 + r * std::cos(theta), -0.3 + r * std::sin(theta)});
    }

    Vec2 c{};
    for (const Vec2& p : pts) c += p;
    c = c / static_cast<double>(pts.size());
    std::vector<Vec2> centered;
    for (const Vec2& p : pts) centered.push_back(p - c);

    const CircleMoments mom = circle_moments(centered);
    const Vec2 center = solve_center(mom.q, mom.l) + c;
    const double radius = radius_from_center(pts, center);
    const double base = circle_objective(pts, center, radius);

    const double h = 1e-3;
    for (const Vec2 step : {Vec2{h, 0}, Vec2{-h, 0}, Vec2{0, h}, Vec2{0, -h}}) {
        const Vec2 probe_center = center + step;
        const double probe_radius = radius_from_center(pts, probe_center);
        CHECK(circle_objective(pts, probe_center, probe_radius) > base);
    }
    CHECK(circle_objective(pts, center, radius + h) > base);
    CHECK(circle_objective(pts, center, radius - h) > base);
}

TEST_CASE("circle moments: expansion identity against direct evaluation") {
    Rng rng(62);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<Vec2> pts = random_cloud2(rng, rng.uniform_int(3, 40));
        const CircleMoments mom = circle_moments(pts);

        for (int probe = 0; probe < 10; ++probe) {
            const Vec2 r{rng.uniform(-5, 5), rng.uniform(-5, 5)};
            const double closed =
                4.0 * mom.q.value(r) - 4.0 * dot(mom.l, r) + mom.m;
            const double direct = direct_expansion_objective(pts, r);
            CHECK(std::abs(closed - direct) <=
                  1e-9 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("fit_line: exactly collinear points") {
    const Vec3 axis = normalized(Vec3{1, 1, 1});
    std::vector<Point3> pts;
    for (int k = 0; k <= 4; ++k) pts.push_back(axis * static_cast<double>(k));

    const auto frame = fit_plane_frame(pts);
    const LineFit line = fit_line(pts, frame.decomp);

    CHECK(std::abs(dot(line.direction, axis)) >= 1.0 - 1e-12);
    CHECK(norm(line.anchor - axis * 2.0) <= 1e-12);
    CHECK(std::abs(line.rms_sq_plane_pair[0]) <= 1e-12);
    CHECK(std::abs(line.rms_sq_plane_pair[1]) <= 1e-12);

    // direction orthogonal to both defining normals
    CHECK(std::abs(dot(line.direction, frame.decomp.vectors[0])) <= 1e-10);
    CHECK(std::abs(dot(line.direction, frame.decomp.vectors[1])) <= 1e-10);
}

TEST_CASE("fit_line: two distinct points") {
    const std::vector<Point3> pts = {{1, 2, 3}, {4, 2, -1}};
    const auto decomp = eigen_sym3(nonflatness_form(pts));
    const LineFit line = fit_line(pts, decomp);

    const Vec3 expected = normalized(pts[1] - pts[0]);
    CHECK(std::abs(dot(line.direction, expected)) >= 1.0 - 1e-12);
    CHECK(norm(line.anchor - (pts[0] + pts[1]) / 2.0) <= 1e-14);
}

TEST_CASE("fit_line: stable under tiny perturbation") {
    Rng rng(63);
    const Vec3 axis = normalized(Vec3{2, -1, 0.5});
    std::vector<Point3> pts;
    for (int k = 0; k < 9; ++k) {
        Point3 p = axis * (0.5 * k);
        p += Vec3{rng.gauss(), rng.gauss(), rng.gauss()} * 1e-9;
        pts.push_back(p);
    }
    const auto frame = fit_plane_frame(pts);
    const LineFit line = fit_line(pts, frame.decomp);
    CHECK(angle_between(line.direction, axis) <= 1e-6);
}

TEST_CASE("fit_line: coincident points raise DegenerateCloud") {
    const std::vector<Point3> pts(4, Point3{1, 2, 3});
    const EigenDecomp3 decomp = eigen_sym3(nonflatness_form(pts));
    try {
        static_cast<void>(fit_line(pts, decomp));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateCloud);
    }
}

TEST_CASE("fit_circle: exact tilted circle is reproduced") {
    const Point3 center{1, 1, 1};
    const Vec3 normal = normalized(Vec3{0.1, -0.05, 1.0});
    const std::vector<Point3> pts = circle_points(center, normal, 2.0, 8);

    const CircleOrLine out = fit_circle(pts);
    REQUIRE(out.is_circle());
    const CircleFit& fit = out.circle();

    CHECK(norm(fit.center - center) <= 1e-9);
    CHECK(fit.radius == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.rms_sq <= 1e-18);
    CHECK(std::abs(dot(fit.plane.normal, normal)) >= 1.0 - 1e-12);

    // the reported center lies on the carrier plane
    CHECK(std::abs(dot(fit.center, fit.plane.normal) - fit.plane.offset) <= 1e-9);

    // radius agrees with the mean squared distance at the center
    const std::vector<Vec2> uv = plane_coordinates(pts, fit.plane);
    const double rho = radius_from_center(uv, fit.center_uv);
    CHECK(fit.radius == doctest::Approx(rho).epsilon(1e-10));
}

TEST_CASE("fit_circle: three points give the circumcircle") {
    Rng rng(64);
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<Point3> pts = random_cloud(rng, 3);
        const SymForm3 q = nonflatness_form(pts);
        const EigenDecomp3 d = eigen_sym3(q);
        if (d.values[1] <= 1e-3 * d.values[2]) continue; // skip near-collinear draws

        const CircleOrLine out = fit_circle(pts);
        REQUIRE(out.is_circle());
        const CircleFit& fit = out.circle();

        const Point3 expected = circumcenter3(pts[0], pts[1], pts[2]);
        const double scale = std::sqrt(cloud_scale_sq(pts));
        CHECK(norm(fit.center - expected) <= 1e-8 * std::max(1.0, scale));
        CHECK(fit.rms_sq <= 1e-18 * std::max(1.0, scale * scale * scale * scale));
        CHECK(fit.radius == doctest::Approx(norm(pts[0] - expected))
                                .epsilon(1e-8));
    }
}

TEST_CASE("fit_circle: collinear points take the line branch") {
    std::vector<Point3> pts;
    for (int k = 0; k < 5; ++k) {
        pts.push_back(Point3{1, -2, 0.5} + Vec3{0.5, 0.25, -1.0} * double(k));
    }
    const CircleOrLine out = fit_circle(pts);
    REQUIRE_FALSE(out.is_circle());
    CHECK(out.diagnostics.lambda_ratio_21 <= out.diagnostics.tau_line);
    CHECK(out.diagnostics.branch_reason == "eigen-ratio-at-or-below-tau-line");

    const Vec3 expected = normalized(Vec3{0.5, 0.25, -1.0});
    CHECK(std::abs(dot(out.line().direction, expected)) >= 1.0 - 1e-10);
}

TEST_CASE("fit_circle: noisy circle beats the derivative-free oracle") {
    Rng rng(65);
    std::vector<Point3> pts;
    const Point3 center{0.5, -1.0, 2.0};
    const Vec3 normal = normalized(Vec3{0.3, 0.2, 0.93});
    const auto [e1, e2] = plane_basis(normal);
    for (int k = 0; k < 40; ++k) {
        const double theta = kTwoPi * k / 40;
        const double r = 3.0 + 0.05 * rng.gauss();
        pts.push_back(center + r * (std::cos(theta) * e1 + std::sin(theta) * e2));
    }

    const CircleOrLine out = fit_circle(pts);
    REQUIRE(out.is_circle());

    const std::vector<Vec2> uv = plane_coordinates(pts, out.circle().plane);
    const CircleOracleResult oracle = oracle_circle(uv, 0);

    double scale_sq = 0.0;
    Vec2 c{};
    for (const Vec2& p : uv) c += p;
    c = c / static_cast<double>(uv.size());
    for (const Vec2& p : uv) scale_sq += squared_norm(p - c);
    scale_sq /= static_cast<double>(uv.size());

    CHECK(out.circle().rms_sq <= oracle.objective + 1e-8 * scale_sq * scale_sq);
}

TEST_CASE("fit_circle: stationarity at the solved center") {
    Rng rng(66);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point3> pts;
        const double radius = rng.uniform(0.5, 4.0);
        const Point3 center{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const Vec3 normal = rng.unit_vector();
        const auto [e1, e2] = plane_basis(normal);
        const int n = rng.uniform_int(8, 40);
        for (int k = 0; k < n; ++k) {
            const double theta = kTwoPi * k / n;
            const double r = radius + 0.02 * radius * rng.gauss();
            pts.push_back(center + r * (std::cos(theta) * e1 + std::sin(theta) * e2));
        }

        const CircleOrLine out = fit_circle(pts);
        REQUIRE(out.is_circle());
        const CircleFit& fit = out.circle();

        const std::vector<Vec2> uv = plane_coordinates(pts, fit.plane);
        Vec2 c{};
        for (const Vec2& p : uv) c += p;
        c = c / static_cast<double>(uv.size());
        std::vector<Vec2> centered;
        for (const Vec2& p : uv) centered.push_back(p - c);

        const CircleMoments mom = circle_moments(centered);
        const Vec2 rel = fit.center_uv - c;

        // normal-equation residual at the solution
        const Vec2 residual = mom.q.apply(rel) * 2.0 - mom.l;
        CHECK(norm(residual) <= 1e-10 * std::max(1.0, norm(mom.l)));

        // the radius is the root mean squared distance at the center
        double mean_sq = 0.0;
        for (const Vec2& p : uv) mean_sq += squared_norm(p - fit.center_uv);
        mean_sq /= static_cast<double>(uv.size());
        CHECK(std::abs(fit.radius * fit.radius - mean_sq) <=
              1e-10 * std::max(1.0, mean_sq));

        // analytic gradient vs central differences away from the optimum
        const double scale = std::sqrt(cloud_scale_sq(pts));
        const double h = 1e-6 * scale;
        for (int probe = 0; probe < 4; ++probe) {
            const Vec2 at = rel + Vec2{rng.uniform(-0.3, 0.3) * scale,
                                       rng.uniform(-0.3, 0.3) * scale};
            const Vec2 analytic = (mom.q.apply(at) * 2.0 - mom.l) * 4.0;

            auto objective_at = [&](Vec2 r2) {
                const double rho = radius_from_center(centered, r2);
                return circle_objective(centered, r2, rho);
            };
            const Vec2 fd{
                (objective_at(at + Vec2{h, 0}) - objective_at(at - Vec2{h, 0})) /
                    (2 * h),
                (objective_at(at + Vec2{0, h}) - objective_at(at - Vec2{0, h})) /
                    (2 * h)};
            CHECK(norm(fd - analytic) <=
                  1e-5 * std::max(1.0, norm(analytic)));
        }
    }
}

TEST_CASE("fit_circle: in-plane rigid motion equivariance") {
    Rng rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        // planar cloud in the xy plane
        std::vector<Point3> pts;
        const int n = rng.uniform_int(6, 30);
        for (int k = 0; k < n; ++k) {
            const double theta = kTwoPi * k / n;
            const double r = 2.0 + 0.1 * rng.gauss();
            pts.push_back({r * std::cos(theta), r * std::sin(theta), 0.0});
        }

        const double angle = rng.uniform(0, kTwoPi);
        const Vec2 shift{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        std::vector<Point3> moved;
        for (const Point3& p : pts) {
            moved.push_back({std::cos(angle) * p.x - std::sin(angle) * p.y + shift.x,
                             std::sin(angle) * p.x + std::cos(angle) * p.y + shift.y,
                             0.0});
        }

        const CircleOrLine base = fit_circle(pts);
        const CircleOrLine mapped = fit_circle(moved);
        REQUIRE(base.is_circle());
        REQUIRE(mapped.is_circle());

        const Point3 bc = base.circle().center;
        const Point3 expected{std::cos(angle) * bc.x - std::sin(angle) * bc.y + shift.x,
                              std::sin(angle) * bc.x + std::cos(angle) * bc.y + shift.y,
                              0.0};
        const double scale = std::sqrt(cloud_scale_sq(pts));
        CHECK(norm(mapped.circle().center - expected) <= 1e-9 * std::max(1.0, scale));
        CHECK(std::abs(mapped.circle().radius - base.circle().radius) <=
              1e-9 * std::max(1.0, scale));
    }
}

TEST_CASE("fit_circle: scale covariance") {
    Rng rng(68);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point3> pts;
        const int n = rng.uniform_int(6, 30);
        for (int k = 0; k < n; ++k) {
            const double theta = kTwoPi * k / n;
            const double r = 1.5 + 0.08 * rng.gauss();
            pts.push_back({1.0 + r * std::cos(theta), -2.0 + r * std::sin(theta), 3.0});
        }
        const double s = rng.uniform(0.2, 8.0);
        std::vector<Point3> scaled;
        for (const Point3& p : pts) scaled.push_back(p * s);

        const CircleOrLine base = fit_circle(pts);
        const CircleOrLine mapped = fit_circle(scaled);
        REQUIRE(base.is_circle());
        REQUIRE(mapped.is_circle());

        CHECK(norm(mapped.circle().center - base.circle().center * s) <=
              1e-9 * std::max(1.0, s));
        CHECK(mapped.circle().radius ==
              doctest::Approx(base.circle().radius * s).epsilon(1e-9));
        CHECK(mapped.circle().rms_sq ==
              doctest::Approx(base.circle().rms_sq * s * s * s * s).epsilon(1e-7));
    }
}

TEST_CASE("fit_circle: degeneracy witnesses") {
    Rng rng(69);

    // exactly planar cloud: smallest eigenvalue vanishes relative to the largest
    {
        std::vector<Point3> pts;
        for (int k = 0; k < 30; ++k) {
            pts.push_back({rng.uniform(-4, 4), rng.uniform(-4, 4), 1.25});
        }
        const auto frame = fit_plane_frame(pts);
        CHECK(frame.decomp.values[0] <= 1e-12 * frame.decomp.values[2]);
    }

    // exactly collinear cloud: the two smallest eigenvalues vanish
    {
        std::vector<Point3> pts;
        const Vec3 axis = normalized(Vec3{1, 2, -1});
        for (int k = 0; k < 12; ++k) pts.push_back(axis * (0.3 * k));
        const SymForm3 q = nonflatness_form(pts);
        const EigenDecomp3 d = eigen_sym3(q);
        CHECK(d.values[0] <= 1e-12 * d.values[2]);
        CHECK(d.values[1] <= 1e-12 * d.values[2]);
    }
}

TEST_CASE("fit_circle: forced circle on collinear data surfaces the error") {
    std::vector<Point3> pts;
    for (int k = 0; k < 6; ++k) pts.push_back({double(k), double(k), 0.0});
    try {
        static_cast<void>(
            fit_circle_with(pts, FitOptions{}, BranchPolicy::ForceCircle));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateSystem);
    }
}

TEST_CASE("fit_circle: option validation") {
    const std::vector<Point3> pts = circle_points({0, 0, 0}, {0, 0, 1}, 1.0, 6);
    try {
        static_cast<void>(fit_circle(pts, FitOptions{-1.0, 1e-8}));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidOptions);
    }
}
