/**
 * @file report.hpp
 * @brief Machine-readable fit reports and the one-call entry point.
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <geomfit/circle_fit.hpp>
#include <geomfit/plane_fit.hpp>
#include <geomfit/vec.hpp>

namespace geomfit {

inline constexpr std::string_view kReportSchemaVersion = "1";

enum class FitMode { Auto, Plane, Circle, Line };

const char* fit_mode_name(FitMode mode);
FitMode fit_mode_from_name(std::string_view name); // throws InvalidOptions

struct RunOptions {
    FitMode mode = FitMode::Auto;
    double tau_line = 1e-6;
    double tau_unique = 1e-8;
};

struct InputSummary {
    std::size_t n = 0;
    Point3 bbox_min, bbox_max;
    Point3 centroid;
};

/**
 * Aggregated result of a fit run. Serialization is deterministic: fixed key
 * order, reals at 17 significant digits, so identical input and options give
 * byte-identical reports.
 */
struct FitReport {
    std::string schema_version{kReportSchemaVersion};
    InputSummary input;
    PlaneFit plane;
    std::string result_tag; ///< "circle", "line" or "plane"
    std::optional<CircleFit> circle;
    std::optional<LineFit> line;
    FitDiagnostics diagnostics;
    FitMode mode = FitMode::Auto;

    std::string to_json() const;
    static FitReport from_json(std::string_view text); // throws ParseError
};

/**
 * Parses nothing, fits everything: plane stage plus the mode-selected result.
 *
 * Mode Auto uses the eigenvalue-ratio decision between circle and line;
 * Plane stops after the plane stage; Circle and Line force their branch
 * (Circle surfaces DegenerateSystem on collinear data instead of falling
 * back). Errors propagate from the fitting modules.
 */
FitReport run_fit(std::span<const Point3> points, const RunOptions& options = {});

} // namespace geomfit
