/**
 * @file circle_fit.hpp
 * @brief Algebraic circle fit on the optimal plane, with a line fallback.
 *
 * Points are projected onto their optimal plane and the circle minimizing
 * the mean squared deflection (|r - R|^2 - rho^2)^2 is solved in closed form
 * from second/fourth moments. When the cloud is (near) collinear the center
 * system degenerates and the result is the intersection line of the two
 * low-spread planes instead.
 */

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <geomfit/linalg3.hpp>
#include <geomfit/plane_fit.hpp>
#include <geomfit/vec.hpp>

namespace geomfit {

struct FitOptions {
    /// Eigenvalue ratio lambda2/lambda3 at or below which the line branch is taken.
    double tau_line = 1e-6;
    /// Forwarded to the plane stage.
    double tau_unique = 1e-8;
};

struct CircleFit {
    Point3 center;      ///< circle center lifted back to 3D (lies on the plane)
    double radius = 0.0;
    double rms_sq = 0.0;///< mean squared deflection, units of length^4
    PlaneFit plane;     ///< carrier plane
    Vec3 basis_u, basis_v; ///< in-plane frame used for the 2D solve
    Vec2 center_uv;     ///< center in that frame, relative to the cloud centroid
};

struct LineFit {
    Point3 anchor;      ///< a point on the line (the centroid)
    Vec3 direction;     ///< unit direction
    /// The two small eigenvalues quantifying off-line spread.
    std::array<double, 2> rms_sq_plane_pair{};
};

/// Why and how the circle-vs-line decision was made.
struct FitDiagnostics {
    std::array<double, 3> eigenvalues{}; ///< 3D non-flatness eigenvalues, ascending
    double lambda_ratio_21 = 0.0;        ///< lambda2 / lambda3
    double lambda_ratio_31 = 0.0;        ///< lambda1 / lambda3
    double tau_line = 0.0;
    double tau_unique = 0.0;
    bool plane_unique = true;
    std::string branch_reason;           ///< e.g. "circle-solved", "eigen-ratio-at-or-below-tau-line"
    std::optional<double> det_q2;        ///< 2D moment determinant, when the circle solve ran
};

struct CircleOrLine {
    std::variant<CircleFit, LineFit> result;
    FitDiagnostics diagnostics;

    bool is_circle() const { return std::holds_alternative<CircleFit>(result); }
    const CircleFit& circle() const { return std::get<CircleFit>(result); }
    const LineFit& line() const { return std::get<LineFit>(result); }
};

/// r -> r - (dot(r, n) - D) n for each point.
std::vector<Point3> project_to_plane(std::span<const Point3> points,
                                     const PlaneFit& plane);

/// Plane-frame coordinates of the projected points, relative to the centroid.
std::vector<Vec2> plane_coordinates(std::span<const Point3> points,
                                    const PlaneFit& plane);

/// Second and fourth moments driving the closed-form center solve.
struct CircleMoments {
    SymForm2 q; ///< 2D non-flatness form
    Vec2 l;     ///< (1/N) sum |r|^2 (r - r_cm)
    double m;   ///< (1/N) sum |r|^4 - ((1/N) sum |r|^2)^2
};

/// Moments of the coordinates as given (callers center them first for
/// conditioning). Throws Error(TooFewPoints) for N < 3.
CircleMoments circle_moments(std::span<const Vec2> points);

/// Solves 2 Q R = L. Throws Error(DegenerateSystem) for a (near) collinear cloud.
Vec2 solve_center(const SymForm2& q, Vec2 l);

/// Root mean squared distance to the center; the optimal radius for it.
double radius_from_center(std::span<const Vec2> points, Vec2 center);

/// Mean squared deflection (|r - R|^2 - rho^2)^2. Algebraic, not geometric.
double circle_objective(std::span<const Vec2> points, Vec2 center, double radius);

/**
 * Optimal line through a cloud, from the eigen-frame of its non-flatness
 * form: the intersection of the two planes normal to the two low-eigenvalue
 * directions, which passes through the centroid with direction n1 x n2.
 *
 * Errors: TooFewPoints (N < 2); DegenerateCloud when all points coincide.
 */
LineFit fit_line(std::span<const Point3> points, const EigenDecomp3& decomp);

enum class BranchPolicy { Automatic, ForceCircle, ForceLine };

/**
 * Full pipeline: plane fit, projection, degeneracy decision, then either the
 * closed-form circle solve or the line fallback.
 *
 * Errors: EmptyInput; TooFewPoints (N < 3); DegenerateCloud;
 * InvalidOptions (non-positive thresholds). With BranchPolicy::ForceCircle a
 * collinear cloud surfaces Error(DegenerateSystem) instead of falling back.
 */
CircleOrLine fit_circle(std::span<const Point3> points, const FitOptions& options = {});

CircleOrLine fit_circle_with(std::span<const Point3> points,
                             const FitOptions& options, BranchPolicy policy);

} // namespace geomfit
