/**
 * @file oracle.hpp
 * @brief Brute-force reference minimizers, independent of the closed forms.
 *
 * These exist so that the eigen/linear-system fits can be checked against
 * direct numerical minimization of the same objectives. They are shipped in
 * the library (behind the `oracle` CLI subcommand) so any user can re-run
 * the verification.
 */

#pragma once

#include <cstdint>
#include <span>

#include <geomfit/vec.hpp>

namespace geomfit {

struct PlaneOracleResult {
    Vec3 normal;
    double offset = 0.0;
    double objective = 0.0; ///< mean squared point-to-plane distance
};

struct CircleOracleResult {
    Vec2 center;
    double radius = 0.0;
    double objective = 0.0; ///< mean squared deflection
};

/**
 * Grid search for the optimal plane: >= 10^4 directions over the unit
 * hemisphere with the per-direction optimal offset, then 6 rounds of local
 * grid refinement shrinking the search window by 10x each round. Evaluates
 * the distance objective by direct summation only.
 *
 * Throws Error(TooFewPoints) for N < 3.
 */
PlaneOracleResult oracle_plane(std::span<const Point3> points);

/**
 * Derivative-free (Nelder-Mead) minimization of the circle deflection
 * objective over (center_x, center_y, rho^2), rho^2 clamped nonnegative,
 * with 20 seeded restarts around the centroid. Result selection is
 * deterministic: best objective, ties by lowest restart index.
 *
 * Throws Error(TooFewPoints) for N < 3 and Error(DegenerateInput) for
 * (near) collinear input.
 */
CircleOracleResult oracle_circle(std::span<const Vec2> points, std::uint64_t seed = 0);

/// GEOMFIT_SEED environment override for the oracle restart seed (default 0).
/// Throws Error(InvalidOptions) if the variable is set but not a number.
std::uint64_t oracle_seed_from_env();

} // namespace geomfit
