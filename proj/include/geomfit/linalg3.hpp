/**
 * @file linalg3.hpp
 * @brief Symmetric 2x2/3x3 forms, a deterministic Jacobi eigen-solver and
 *        the in-plane basis construction used by the fitting pipeline.
 */

#pragma once

#include <array>
#include <utility>

#include <geomfit/vec.hpp>

namespace geomfit {

/// Relative threshold below which a 2x2 system is treated as rank-deficient.
inline constexpr double kRankEpsilon = 1e-10;

/// Symmetric 3x3 matrix stored as its six independent entries.
struct SymForm3 {
    double xx = 0.0, xy = 0.0, xz = 0.0;
    double yy = 0.0, yz = 0.0;
    double zz = 0.0;

    /// Matrix-vector product A v.
    Vec3 apply(Vec3 v) const {
        return {xx * v.x + xy * v.y + xz * v.z,
                xy * v.x + yy * v.y + yz * v.z,
                xz * v.x + yz * v.y + zz * v.z};
    }

    /// Quadratic form v^T A v.
    double value(Vec3 v) const { return dot(v, apply(v)); }

    double trace() const { return xx + yy + zz; }

    double det() const {
        return xx * (yy * zz - yz * yz) - xy * (xy * zz - yz * xz) +
               xz * (xy * yz - yy * xz);
    }

    double frobenius_norm() const;

    SymForm3& operator+=(const SymForm3& o) {
        xx += o.xx; xy += o.xy; xz += o.xz;
        yy += o.yy; yz += o.yz; zz += o.zz;
        return *this;
    }

    SymForm3 operator*(double s) const {
        return {xx * s, xy * s, xz * s, yy * s, yz * s, zz * s};
    }
};

/// Symmetric 2x2 matrix stored as its three independent entries.
struct SymForm2 {
    double xx = 0.0, xy = 0.0;
    double yy = 0.0;

    Vec2 apply(Vec2 v) const {
        return {xx * v.x + xy * v.y, xy * v.x + yy * v.y};
    }

    double value(Vec2 v) const { return dot(v, apply(v)); }

    double trace() const { return xx + yy; }
    double det() const { return xx * yy - xy * xy; }
    double frobenius_norm() const;
};

/// Result of eigen_sym3: eigenvalues ascending, eigenvectors orthonormal
/// and right-handed (vectors[2] == vectors[0] x vectors[1]).
struct EigenDecomp3 {
    std::array<double, 3> values{};
    std::array<Vec3, 3> vectors{};
};

/**
 * Eigen-decomposition by cyclic Jacobi rotations.
 *
 * Deterministic: fixed sweep order, ascending eigenvalue sort with stable
 * tie-breaking, and a fixed sign convention (the largest-magnitude component
 * of vectors[0] and vectors[1] is made positive, ties resolved toward the
 * lowest axis index; vectors[2] completes a right-handed frame).
 *
 * Throws Error(InternalError) if the sweep budget is exhausted before the
 * off-diagonal norm drops below 1e-14 * max(1, ||A||_F).
 */
EigenDecomp3 eigen_sym3(const SymForm3& a);

/**
 * Solves A x = b for a symmetric 2x2 system.
 *
 * Throws Error(DegenerateSystem) when |det A| <= kRankEpsilon * max(1, ||A||_F^2),
 * which is the signal for callers to fall back to line fitting.
 */
Vec2 solve_sym2(const SymForm2& a, Vec2 b);

/// True when the 2x2 system is too close to singular for solve_sym2.
bool is_degenerate_sym2(const SymForm2& a);

/**
 * Orthonormal in-plane basis for a unit normal n.
 *
 * Returns (e1, e2) with {e1, e2, n} right-handed (e1 x e2 = n). e1 is the
 * normalized in-plane projection of the global axis whose component along n
 * is smallest in magnitude (ties toward the lowest axis index).
 */
std::pair<Vec3, Vec3> plane_basis(Vec3 n);

} // namespace geomfit
