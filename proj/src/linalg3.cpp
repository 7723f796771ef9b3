/**
 * @file linalg3.cpp
 */

#include <geomfit/linalg3.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include <geomfit/errors.hpp>

namespace geomfit {

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kConvergence = 1e-14;

double off_diagonal_norm(const double a[3][3]) {
    return std::sqrt(2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]));
}

/// One Jacobi rotation zeroing a[p][q], accumulating the basis in v.
void rotate(double a[3][3], double v[3][3], int p, int q) {
    const double apq = a[p][q];
    if (apq == 0.0) return;

    const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    const double app = a[p][p];
    const double aqq = a[q][q];
    a[p][p] = app - t * apq;
    a[q][q] = aqq + t * apq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;

    const int r = 3 - p - q; // the remaining index
    const double arp = a[r][p];
    const double arq = a[r][q];
    a[r][p] = arp - s * (arq + tau * arp);
    a[p][r] = a[r][p];
    a[r][q] = arq + s * (arp - tau * arq);
    a[q][r] = a[r][q];

    for (int i = 0; i < 3; ++i) {
        const double vip = v[i][p];
        const double viq = v[i][q];
        v[i][p] = vip - s * (viq + tau * vip);
        v[i][q] = viq + s * (vip - tau * viq);
    }
}

/// Largest-magnitude component made positive; ties toward the lowest index.
Vec3 fix_sign(Vec3 v) {
    int best = 0;
    double mag = std::abs(v.x);
    if (std::abs(v.y) > mag) { best = 1; mag = std::abs(v.y); }
    if (std::abs(v.z) > mag) { best = 2; }
    const double lead = best == 0 ? v.x : (best == 1 ? v.y : v.z);
    return lead < 0.0 ? -v : v;
}

} // namespace

double SymForm3::frobenius_norm() const {
    return std::sqrt(xx * xx + yy * yy + zz * zz +
                     2.0 * (xy * xy + xz * xz + yz * yz));
}

double SymForm2::frobenius_norm() const {
    return std::sqrt(xx * xx + yy * yy + 2.0 * xy * xy);
}

EigenDecomp3 eigen_sym3(const SymForm3& m) {
    double a[3][3] = {{m.xx, m.xy, m.xz},
                      {m.xy, m.yy, m.yz},
                      {m.xz, m.yz, m.zz}};
    double v[3][3] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};

    const double tol = kConvergence * std::max(1.0, m.frobenius_norm());

    bool converged = off_diagonal_norm(a) <= tol;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        rotate(a, v, 0, 1);
        rotate(a, v, 0, 2);
        rotate(a, v, 1, 2);
        converged = off_diagonal_norm(a) <= tol;
    }
    if (!converged) {
        throw Error(ErrorCode::InternalError,
                    "jacobi sweep budget exhausted, off-diagonal norm " +
                        std::to_string(off_diagonal_norm(a)));
    }

    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return a[i][i] < a[j][j] || (a[i][i] == a[j][j] && i < j);
    });

    EigenDecomp3 out;
    for (int k = 0; k < 3; ++k) {
        const int c = order[k];
        out.values[k] = a[c][c];
        out.vectors[k] = Vec3{v[0][c], v[1][c], v[2][c]};
    }
    out.vectors[0] = fix_sign(out.vectors[0]);
    out.vectors[1] = fix_sign(out.vectors[1]);
    out.vectors[2] = normalized(cross(out.vectors[0], out.vectors[1]));
    return out;
}

bool is_degenerate_sym2(const SymForm2& a) {
    const double f = a.frobenius_norm();
    return std::abs(a.det()) <= kRankEpsilon * std::max(1.0, f * f);
}

Vec2 solve_sym2(const SymForm2& a, Vec2 b) {
    if (is_degenerate_sym2(a)) {
        throw Error(ErrorCode::DegenerateSystem, "2x2 system is rank-deficient");
    }
    const double det = a.det();
    Vec2 x{(a.yy * b.x - a.xy * b.y) / det,
           (a.xx * b.y - a.xy * b.x) / det};

    // One step of iterative refinement tightens the residual.
    const Vec2 r = b - a.apply(x);
    x += Vec2{(a.yy * r.x - a.xy * r.y) / det,
              (a.xx * r.y - a.xy * r.x) / det};
    return x;
}

std::pair<Vec3, Vec3> plane_basis(Vec3 n) {
    assert(std::abs(norm(n) - 1.0) <= 1e-12);

    int axis = 0;
    double mag = std::abs(n.x);
    if (std::abs(n.y) < mag) { axis = 1; mag = std::abs(n.y); }
    if (std::abs(n.z) < mag) { axis = 2; }

    const Vec3 e = axis == 0 ? Vec3{1.0, 0.0, 0.0}
                 : axis == 1 ? Vec3{0.0, 1.0, 0.0}
                             : Vec3{0.0, 0.0, 1.0};
    const Vec3 e1 = normalized(e - n * dot(e, n));
    const Vec3 e2 = cross(n, e1);
    return {e1, e2};
}

} // namespace geomfit
