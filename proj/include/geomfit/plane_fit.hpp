/**
 * @file plane_fit.hpp
 * @brief Mean-square optimal plane through a 3D point cloud.
 *
 * The plane minimizing the mean squared point-to-plane distance passes
 * through the centroid and its normal is the eigenvector of the cloud's
 * covariance (the "non-flatness" form) for the smallest eigenvalue; that
 * eigenvalue is the attained objective.
 */

#pragma once

#include <array>
#include <span>

#include <geomfit/linalg3.hpp>
#include <geomfit/vec.hpp>

namespace geomfit {

struct PlaneOptions {
    /// Relative eigen-gap below which the optimal plane is flagged non-unique.
    double tau_unique = 1e-8;
};

struct PlaneFit {
    Vec3 normal;                        ///< unit normal
    double offset = 0.0;                ///< plane equation: dot(r, normal) == offset
    double rms_sq = 0.0;                ///< attained mean squared distance
    std::array<double, 3> eigenvalues{};///< covariance eigenvalues, ascending
    Point3 centroid;
    bool unique = true;                 ///< false when the smallest eigenvalue is (nearly) repeated
};

/// PlaneFit together with the eigen-frame it was derived from.
struct PlaneFitFrame {
    PlaneFit plane;
    EigenDecomp3 decomp;
};

/// Arithmetic mean. Throws Error(EmptyInput) for an empty span.
Point3 centroid(std::span<const Point3> points);

/// Mean squared centered spread of the cloud; squared "scale" used by tolerances.
double cloud_scale_sq(std::span<const Point3> points);

/**
 * Covariance of the centered points, (1/N) sum (r - r_cm)(r - r_cm)^T.
 * Its value at a unit vector n is the variance of the projections dot(r, n);
 * positive semidefinite. Throws Error(EmptyInput).
 */
SymForm3 nonflatness_form(std::span<const Point3> points);

/**
 * Inertia tensor of unit point masses about the centroid:
 * value(n) = sum |r - r_cm|^2 |n|^2 - sum (dot(r - r_cm, n))^2 (no 1/N).
 * Throws Error(EmptyInput).
 */
SymForm3 inertia_form(std::span<const Point3> points);

/// Mean squared distance to the plane {r : dot(r, normal) == offset}.
double plane_objective(std::span<const Point3> points, Vec3 normal, double offset);

/**
 * Optimal mean-square plane.
 *
 * Errors: EmptyInput; TooFewPoints (N < 3); DegenerateCloud when all points
 * coincide; InvalidOptions for a non-positive tau_unique.
 *
 * When the smallest eigenvalue is (nearly) repeated every plane in a pencil
 * is optimal; the fit still returns the deterministic eigenvector chosen by
 * eigen_sym3 and clears `unique` so callers can tell.
 */
PlaneFit fit_plane(std::span<const Point3> points, const PlaneOptions& options = {});

/// fit_plane plus the full eigen-frame (used by the circle pipeline).
PlaneFitFrame fit_plane_frame(std::span<const Point3> points,
                              const PlaneOptions& options = {});

} // namespace geomfit
