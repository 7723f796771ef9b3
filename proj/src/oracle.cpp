/**
 * @file oracle.cpp
 */

#include <geomfit/oracle.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include <geomfit/circle_fit.hpp>
#include <geomfit/errors.hpp>
#include <geomfit/linalg3.hpp>
#include <geomfit/rng.hpp>

namespace geomfit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Vec3 direction_from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

/// Mean squared distance to the best plane with normal n (offset eliminated).
double plane_objective_direct(std::span<const Point3> points, Vec3 n) {
    const double count = static_cast<double>(points.size());
    double sum = 0.0;
    for (const Point3& p : points) sum += dot(p, n);
    const double offset = sum / count;

    double acc = 0.0;
    for (const Point3& p : points) {
        const double d = dot(p, n) - offset;
        acc += d * d;
    }
    return acc / count;
}

// ---------------------------------------------------------------------------
// Nelder-Mead over (center_x, center_y, rho^2)
// ---------------------------------------------------------------------------

using Param3 = std::array<double, 3>;

double deflection_objective(std::span<const Vec2> points, const Param3& x) {
    const Vec2 center{x[0], x[1]};
    const double rho2 = std::max(x[2], 0.0);
    double acc = 0.0;
    for (const Vec2& p : points) {
        const double d = squared_norm(p - center) - rho2;
        acc += d * d;
    }
    return acc / static_cast<double>(points.size());
}

struct Vertex {
    Param3 x;
    double f;
};

Param3 axpy(const Param3& a, double s, const Param3& b) {
    return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
}

Param3 diff(const Param3& a, const Param3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Param3 nelder_mead(std::span<const Vec2> points, const std::array<Param3, 4>& start,
                   int max_iter) {
    std::array<Vertex, 4> simplex;
    for (int i = 0; i < 4; ++i) {
        simplex[i] = {start[i], deflection_objective(points, start[i])};
    }

    for (int iter = 0; iter < max_iter; ++iter) {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

        const double spread = simplex[3].f - simplex[0].f;
        if (spread <= 1e-18 * std::max(1.0, std::abs(simplex[0].f))) break;

        Param3 centroid{};
        for (int i = 0; i < 3; ++i) centroid = axpy(centroid, 1.0 / 3.0, simplex[i].x);

        const Param3 dir = diff(centroid, simplex[3].x);
        const Param3 reflected = axpy(centroid, 1.0, dir);
        const double fr = deflection_objective(points, reflected);

        if (fr < simplex[0].f) {
            const Param3 expanded = axpy(centroid, 2.0, dir);
            const double fe = deflection_objective(points, expanded);
            simplex[3] = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
        } else if (fr < simplex[2].f) {
            simplex[3] = {reflected, fr};
        } else {
            const Param3 contracted = axpy(centroid, -0.5, dir);
            const double fc = deflection_objective(points, contracted);
            if (fc < simplex[3].f) {
                simplex[3] = {contracted, fc};
            } else {
                for (int i = 1; i < 4; ++i) {
                    simplex[i].x = axpy(simplex[0].x, 0.5,
                                        diff(simplex[i].x, simplex[0].x));
                    simplex[i].f = deflection_objective(points, simplex[i].x);
                }
            }
        }
    }

    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    return simplex[0].x;
}

} // namespace

PlaneOracleResult oracle_plane(std::span<const Point3> points) {
    if (points.size() < 3) {
        throw Error(ErrorCode::TooFewPoints,
                    "plane oracle needs at least 3 points");
    }

    // Coarse pass: 50 x 200 = 10^4 directions over the hemisphere.
    constexpr int kThetaSteps = 50;
    constexpr int kPhiSteps = 200;
    const double dtheta = (kPi / 2.0) / kThetaSteps;
    const double dphi = (2.0 * kPi) / kPhiSteps;

    double best_theta = 0.0;
    double best_phi = 0.0;
    double best = plane_objective_direct(points, direction_from_angles(0.0, 0.0));
    for (int i = 0; i < kThetaSteps; ++i) {
        const double theta = (i + 0.5) * dtheta;
        for (int j = 0; j < kPhiSteps; ++j) {
            const double phi = j * dphi;
            const double obj =
                plane_objective_direct(points, direction_from_angles(theta, phi));
            if (obj < best) {
                best = obj;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    // Local refinement: 21 x 21 tangent-plane window shrunk 10x per round.
    // Refining in (theta, phi) directly stalls near the poles, where the
    // azimuth coordinate degenerates.
    Vec3 incumbent = direction_from_angles(best_theta, best_phi);
    double window = dtheta + dphi;
    for (int round = 0; round < 6; ++round) {
        const Vec3 at = incumbent;
        const auto [u, v] = plane_basis(at);
        const double step = window / 10.0;
        for (int i = -10; i <= 10; ++i) {
            for (int j = -10; j <= 10; ++j) {
                const Vec3 n = normalized(at + (i * step) * u + (j * step) * v);
                const double obj = plane_objective_direct(points, n);
                if (obj < best) {
                    best = obj;
                    incumbent = n;
                }
            }
        }
        window *= 0.1;
    }

    PlaneOracleResult out;
    out.normal = incumbent;
    double sum = 0.0;
    for (const Point3& p : points) sum += dot(p, out.normal);
    out.offset = sum / static_cast<double>(points.size());
    out.objective = best;
    return out;
}

CircleOracleResult oracle_circle(std::span<const Vec2> points, std::uint64_t seed) {
    if (points.size() < 3) {
        throw Error(ErrorCode::TooFewPoints,
                    "circle oracle needs at least 3 points");
    }

    const double count = static_cast<double>(points.size());
    Vec2 centroid;
    for (const Vec2& p : points) centroid += p;
    centroid = centroid / count;

    double spread_sq = 0.0;
    SymForm2 q;
    for (const Vec2& p : points) {
        const Vec2 d = p - centroid;
        spread_sq += squared_norm(d);
        q.xx += d.x * d.x;
        q.xy += d.x * d.y;
        q.yy += d.y * d.y;
    }
    spread_sq /= count;
    q.xx /= count;
    q.xy /= count;
    q.yy /= count;
    if (is_degenerate_sym2(q)) {
        throw Error(ErrorCode::DegenerateInput,
                    "points are (near) collinear; no circle oracle");
    }

    const double scale = std::sqrt(spread_sq);

    constexpr int kRestarts = 20;
    constexpr int kMaxIter = 400;

    Param3 best{};
    double best_f = 0.0;
    bool have_best = false;
    for (int restart = 0; restart < kRestarts; ++restart) {
        Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(restart)));

        const Vec2 c0{centroid.x + scale * rng.gauss(),
                      centroid.y + scale * rng.gauss()};
        double s0 = 0.0;
        for (const Vec2& p : points) s0 += squared_norm(p - c0);
        s0 = (s0 / count) * (0.5 + rng.uniform01());

        const double dc = 0.5 * scale;
        const double ds = 0.5 * std::max(s0, spread_sq);
        const std::array<Param3, 4> start = {
            Param3{c0.x, c0.y, s0},
            Param3{c0.x + dc, c0.y, s0},
            Param3{c0.x, c0.y + dc, s0},
            Param3{c0.x, c0.y, s0 + ds},
        };

        const Param3 x = nelder_mead(points, start, kMaxIter);
        const double f = deflection_objective(points, x);
        if (!have_best || f < best_f) {
            have_best = true;
            best_f = f;
            best = x;
        }
    }

    CircleOracleResult out;
    out.center = {best[0], best[1]};
    out.radius = std::sqrt(std::max(best[2], 0.0));
    out.objective = best_f;
    return out;
}

std::uint64_t oracle_seed_from_env() {
    const char* raw = std::getenv("GEOMFIT_SEED");
    if (raw == nullptr || *raw == '\0') return 0;
    std::uint64_t seed = 0;
    const char* end = raw + std::string_view(raw).size();
    const auto res = std::from_chars(raw, end, seed);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw Error(ErrorCode::InvalidOptions,
                    std::string("GEOMFIT_SEED is not an unsigned integer: '") +
                        raw + "'");
    }
    return seed;
}

} // namespace geomfit
