/**
 * @file circle_fit.cpp
 */

#include <geomfit/circle_fit.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include <geomfit/errors.hpp>

namespace geomfit {

namespace {

Vec2 centroid2(std::span<const Vec2> points) {
    Vec2 sum;
    for (const Vec2& p : points) sum += p;
    return sum / static_cast<double>(points.size());
}

double max_squared_magnitude(std::span<const Point3> points) {
    double m = 0.0;
    for (const Point3& p : points) m = std::max(m, squared_norm(p));
    return m;
}

} // namespace

std::vector<Point3> project_to_plane(std::span<const Point3> points,
                                     const PlaneFit& plane) {
    assert(std::abs(norm(plane.normal) - 1.0) <= 1e-12);
    std::vector<Point3> out;
    out.reserve(points.size());
    for (const Point3& p : points) {
        out.push_back(p - plane.normal * (dot(p, plane.normal) - plane.offset));
    }
    return out;
}

std::vector<Vec2> plane_coordinates(std::span<const Point3> points,
                                    const PlaneFit& plane) {
    const auto [e1, e2] = plane_basis(plane.normal);
    const std::vector<Point3> projected = project_to_plane(points, plane);

    std::vector<Vec2> out;
    out.reserve(points.size());
    for (const Point3& p : projected) {
        const Vec3 d = p - plane.centroid;
        out.push_back({dot(d, e1), dot(d, e2)});
    }
    return out;
}

CircleMoments circle_moments(std::span<const Vec2> points) {
    if (points.size() < 3) {
        throw Error(ErrorCode::TooFewPoints,
                    "circle moments need at least 3 points, got " +
                        std::to_string(points.size()));
    }
    const double n = static_cast<double>(points.size());
    const Vec2 c = centroid2(points);

    CircleMoments mom;
    double sum_r2 = 0.0;
    double sum_r4 = 0.0;
    for (const Vec2& p : points) {
        const Vec2 d = p - c;
        mom.q.xx += d.x * d.x;
        mom.q.xy += d.x * d.y;
        mom.q.yy += d.y * d.y;

        const double r2 = squared_norm(p);
        sum_r2 += r2;
        sum_r4 += r2 * r2;
        mom.l += d * r2;
    }
    mom.q.xx /= n;
    mom.q.xy /= n;
    mom.q.yy /= n;
    mom.l = mom.l / n;
    const double mean_r2 = sum_r2 / n;
    mom.m = sum_r4 / n - mean_r2 * mean_r2;
    return mom;
}

Vec2 solve_center(const SymForm2& q, Vec2 l) {
    return solve_sym2(q, l * 0.5);
}

double radius_from_center(std::span<const Vec2> points, Vec2 center) {
    assert(!points.empty());
    double acc = 0.0;
    for (const Vec2& p : points) acc += squared_norm(p - center);
    return std::sqrt(acc / static_cast<double>(points.size()));
}

double circle_objective(std::span<const Vec2> points, Vec2 center, double radius) {
    assert(!points.empty());
    assert(radius >= 0.0);
    const double rho2 = radius * radius;
    double acc = 0.0;
    for (const Vec2& p : points) {
        const double d = squared_norm(p - center) - rho2;
        acc += d * d;
    }
    return acc / static_cast<double>(points.size());
}

LineFit fit_line(std::span<const Point3> points, const EigenDecomp3& decomp) {
    if (points.empty()) {
        throw Error(ErrorCode::EmptyInput, "point set is empty");
    }
    if (points.size() < 2) {
        throw Error(ErrorCode::TooFewPoints, "line fit needs at least 2 points");
    }
    const double spread = decomp.values[0] + decomp.values[1] + decomp.values[2];
    if (spread <= kRankEpsilon * std::max(1.0, max_squared_magnitude(points))) {
        throw Error(ErrorCode::DegenerateCloud,
                    "all points coincide; every line through them is optimal");
    }

    LineFit fit;
    fit.anchor = centroid(points);
    fit.direction = normalized(cross(decomp.vectors[0], decomp.vectors[1]));
    fit.rms_sq_plane_pair = {decomp.values[0], decomp.values[1]};
    return fit;
}

CircleOrLine fit_circle_with(std::span<const Point3> points,
                             const FitOptions& options, BranchPolicy policy) {
    if (!(options.tau_line > 0.0)) {
        throw Error(ErrorCode::InvalidOptions, "tau_line must be positive");
    }
    if (points.empty()) {
        throw Error(ErrorCode::EmptyInput, "point set is empty");
    }
    if (points.size() < 3) {
        throw Error(ErrorCode::TooFewPoints,
                    "circle fit needs at least 3 points, got " +
                        std::to_string(points.size()));
    }

    const PlaneFitFrame frame =
        fit_plane_frame(points, PlaneOptions{options.tau_unique});
    const PlaneFit& plane = frame.plane;

    FitDiagnostics diag;
    diag.eigenvalues = frame.decomp.values;
    diag.lambda_ratio_21 = frame.decomp.values[1] / frame.decomp.values[2];
    diag.lambda_ratio_31 = frame.decomp.values[0] / frame.decomp.values[2];
    diag.tau_line = options.tau_line;
    diag.tau_unique = options.tau_unique;
    diag.plane_unique = plane.unique;

    const bool near_line = diag.lambda_ratio_21 <= options.tau_line;
    if (policy == BranchPolicy::ForceLine ||
        (policy == BranchPolicy::Automatic && near_line)) {
        diag.branch_reason = policy == BranchPolicy::ForceLine
                                 ? "line-forced"
                                 : "eigen-ratio-at-or-below-tau-line";
        return {fit_line(points, frame.decomp), std::move(diag)};
    }

    // Solve in plane coordinates re-centered at the 2D centroid; the |r|^2
    // weights in the moments are ill-conditioned far from the origin.
    const std::vector<Vec2> uv = plane_coordinates(points, plane);
    const Vec2 shift = centroid2(uv);
    std::vector<Vec2> centered(uv.size());
    for (std::size_t i = 0; i < uv.size(); ++i) centered[i] = uv[i] - shift;

    const CircleMoments mom = circle_moments(centered);
    diag.det_q2 = mom.q.det();

    Vec2 center_rel;
    try {
        center_rel = solve_center(mom.q, mom.l);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateSystem &&
            policy == BranchPolicy::Automatic) {
            diag.branch_reason = "degenerate-center-system";
            return {fit_line(points, frame.decomp), std::move(diag)};
        }
        throw;
    }

    const auto [e1, e2] = plane_basis(plane.normal);

    CircleFit fit;
    fit.center_uv = center_rel + shift;
    fit.radius = radius_from_center(uv, fit.center_uv);
    fit.rms_sq = circle_objective(uv, fit.center_uv, fit.radius);
    fit.plane = plane;
    fit.basis_u = e1;
    fit.basis_v = e2;
    fit.center = plane.centroid + e1 * fit.center_uv.x + e2 * fit.center_uv.y;

    diag.branch_reason = "circle-solved";
    return {std::move(fit), std::move(diag)};
}

CircleOrLine fit_circle(std::span<const Point3> points, const FitOptions& options) {
    return fit_circle_with(points, options, BranchPolicy::Automatic);
}

} // namespace geomfit
