/**
 * @file plane_fit.cpp
 */

#include <geomfit/plane_fit.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>

#include <geomfit/errors.hpp>

namespace geomfit {

namespace {

void require_nonempty(std::span<const Point3> points) {
    if (points.empty()) {
        throw Error(ErrorCode::EmptyInput, "point set is empty");
    }
}

double max_squared_magnitude(std::span<const Point3> points) {
    double m = 0.0;
    for (const Point3& p : points) m = std::max(m, squared_norm(p));
    return m;
}

} // namespace

Point3 centroid(std::span<const Point3> points) {
    require_nonempty(points);
    Vec3 sum;
    for (const Point3& p : points) sum += p;
    return sum / static_cast<double>(points.size());
}

double cloud_scale_sq(std::span<const Point3> points) {
    require_nonempty(points);
    const Point3 c = centroid(points);
    double acc = 0.0;
    for (const Point3& p : points) acc += squared_norm(p - c);
    return acc / static_cast<double>(points.size());
}

SymForm3 nonflatness_form(std::span<const Point3> points) {
    require_nonempty(points);
    const Point3 c = centroid(points);

    // Centered accumulation; the raw-moment formulation cancels
    // catastrophically for clouds far from the origin.
    SymForm3 q;
    for (const Point3& p : points) {
        const Vec3 d = p - c;
        q.xx += d.x * d.x;
        q.xy += d.x * d.y;
        q.xz += d.x * d.z;
        q.yy += d.y * d.y;
        q.yz += d.y * d.z;
        q.zz += d.z * d.z;
    }
    return q * (1.0 / static_cast<double>(points.size()));
}

SymForm3 inertia_form(std::span<const Point3> points) {
    require_nonempty(points);
    const Point3 c = centroid(points);

    SymForm3 t;
    for (const Point3& p : points) {
        const Vec3 d = p - c;
        const double r2 = squared_norm(d);
        t.xx += r2 - d.x * d.x;
        t.yy += r2 - d.y * d.y;
        t.zz += r2 - d.z * d.z;
        t.xy -= d.x * d.y;
        t.xz -= d.x * d.z;
        t.yz -= d.y * d.z;
    }
    return t;
}

double plane_objective(std::span<const Point3> points, Vec3 normal, double offset) {
    require_nonempty(points);
    assert(std::abs(norm(normal) - 1.0) <= 1e-12);

    double acc = 0.0;
    for (const Point3& p : points) {
        const double d = dot(p, normal) - offset;
        acc += d * d;
    }
    return acc / static_cast<double>(points.size());
}

PlaneFitFrame fit_plane_frame(std::span<const Point3> points,
                              const PlaneOptions& options) {
    if (!(options.tau_unique > 0.0)) {
        throw Error(ErrorCode::InvalidOptions, "tau_unique must be positive");
    }
    require_nonempty(points);
    if (points.size() < 3) {
        throw Error(ErrorCode::TooFewPoints,
                    "plane fit needs at least 3 points, got " +
                        std::to_string(points.size()));
    }

    const SymForm3 q = nonflatness_form(points);
    const double spread = q.trace();
    if (spread <= kRankEpsilon * std::max(1.0, max_squared_magnitude(points))) {
        throw Error(ErrorCode::DegenerateCloud,
                    "all points coincide; every plane through them is optimal");
    }

    const EigenDecomp3 decomp = eigen_sym3(q);

    PlaneFit fit;
    fit.normal = decomp.vectors[0];
    fit.centroid = centroid(points);
    fit.offset = dot(fit.centroid, fit.normal);
    fit.eigenvalues = decomp.values;
    fit.rms_sq = decomp.values[0];

    const double gap = decomp.values[1] - decomp.values[0];
    fit.unique = gap > options.tau_unique * std::max(decomp.values[2], spread);

    return {fit, decomp};
}

PlaneFit fit_plane(std::span<const Point3> points, const PlaneOptions& options) {
    return fit_plane_frame(points, options).plane;
}

} // namespace geomfit
