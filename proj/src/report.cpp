/**
 * @file report.cpp
 */

#include <geomfit/report.hpp>

#include <algorithm>
#include <string>

#include <json.hpp>

#include <geomfit/errors.hpp>
#include <geomfit/json_writer.hpp>

namespace geomfit {

namespace {

void write_vec3(JsonWriter& w, Vec3 v) {
    w.begin_array();
    w.value(v.x);
    w.value(v.y);
    w.value(v.z);
    w.end_array();
}

InputSummary summarize(std::span<const Point3> points) {
    InputSummary s;
    s.n = points.size();
    s.bbox_min = points[0];
    s.bbox_max = points[0];
    for (const Point3& p : points) {
        s.bbox_min = {std::min(s.bbox_min.x, p.x), std::min(s.bbox_min.y, p.y),
                      std::min(s.bbox_min.z, p.z)};
        s.bbox_max = {std::max(s.bbox_max.x, p.x), std::max(s.bbox_max.y, p.y),
                      std::max(s.bbox_max.z, p.z)};
    }
    s.centroid = centroid(points);
    return s;
}

FitDiagnostics plane_only_diagnostics(const PlaneFitFrame& frame,
                                      const RunOptions& options) {
    FitDiagnostics diag;
    diag.eigenvalues = frame.decomp.values;
    diag.lambda_ratio_21 = frame.decomp.values[1] / frame.decomp.values[2];
    diag.lambda_ratio_31 = frame.decomp.values[0] / frame.decomp.values[2];
    diag.tau_line = options.tau_line;
    diag.tau_unique = options.tau_unique;
    diag.plane_unique = frame.plane.unique;
    diag.branch_reason = "plane-only";
    return diag;
}

Vec3 json_vec3(const nlohmann::json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

} // namespace

const char* fit_mode_name(FitMode mode) {
    switch (mode) {
        case FitMode::Auto: return "auto";
        case FitMode::Plane: return "plane";
        case FitMode::Circle: return "circle";
        case FitMode::Line: return "line";
    }
    return "auto";
}

FitMode fit_mode_from_name(std::string_view name) {
    if (name == "auto") return FitMode::Auto;
    if (name == "plane") return FitMode::Plane;
    if (name == "circle") return FitMode::Circle;
    if (name == "line") return FitMode::Line;
    throw Error(ErrorCode::InvalidOptions,
                "unknown mode '" + std::string(name) + "'");
}

FitReport run_fit(std::span<const Point3> points, const RunOptions& options) {
    if (points.empty()) {
        throw Error(ErrorCode::EmptyInput, "point set is empty");
    }
    if (points.size() < 3) {
        throw Error(ErrorCode::TooFewPoints,
                    "fit needs at least 3 points, got " +
                        std::to_string(points.size()));
    }

    if (!(options.tau_line > 0.0)) {
        throw Error(ErrorCode::InvalidOptions, "tau_line must be positive");
    }
    if (!(options.tau_unique > 0.0)) {
        throw Error(ErrorCode::InvalidOptions, "tau_unique must be positive");
    }

    FitReport report;
    report.mode = options.mode;
    report.input = summarize(points);

    const FitOptions fit_options{options.tau_line, options.tau_unique};

    if (options.mode == FitMode::Plane) {
        const PlaneFitFrame frame =
            fit_plane_frame(points, PlaneOptions{options.tau_unique});
        report.plane = frame.plane;
        report.result_tag = "plane";
        report.diagnostics = plane_only_diagnostics(frame, options);
        return report;
    }

    const BranchPolicy policy = options.mode == FitMode::Circle
                                    ? BranchPolicy::ForceCircle
                                : options.mode == FitMode::Line
                                    ? BranchPolicy::ForceLine
                                    : BranchPolicy::Automatic;
    CircleOrLine outcome = fit_circle_with(points, fit_options, policy);

    report.diagnostics = outcome.diagnostics;
    if (outcome.is_circle()) {
        report.result_tag = "circle";
        report.plane = outcome.circle().plane;
        report.circle = outcome.circle();
    } else {
        report.result_tag = "line";
        // The line branch shares the plane stage; rebuild it for the report.
        report.plane = fit_plane(points, PlaneOptions{options.tau_unique});
        report.line = outcome.line();
    }
    return report;
}

std::string FitReport::to_json() const {
    JsonWriter w;
    w.begin_object();

    w.key("schema_version");
    w.value(std::string_view(schema_version));

    w.key("input");
    w.begin_object();
    w.key("n");
    w.value(input.n);
    w.key("bbox_min");
    write_vec3(w, input.bbox_min);
    w.key("bbox_max");
    write_vec3(w, input.bbox_max);
    w.key("centroid");
    write_vec3(w, input.centroid);
    w.end_object();

    w.key("plane");
    w.begin_object();
    w.key("normal");
    write_vec3(w, plane.normal);
    w.key("offset");
    w.value(plane.offset);
    w.key("rms_sq");
    w.value(plane.rms_sq);
    w.key("eigenvalues");
    w.begin_array();
    w.value(plane.eigenvalues[0]);
    w.value(plane.eigenvalues[1]);
    w.value(plane.eigenvalues[2]);
    w.end_array();
    w.key("unique");
    w.value(plane.unique);
    w.end_object();

    w.key("result");
    w.begin_object();
    w.key("tag");
    w.value(std::string_view(result_tag));
    if (circle) {
        w.key("center");
        write_vec3(w, circle->center);
        w.key("radius");
        w.value(circle->radius);
        w.key("rms_sq");
        w.value(circle->rms_sq);
    } else if (line) {
        w.key("anchor");
        write_vec3(w, line->anchor);
        w.key("direction");
        write_vec3(w, line->direction);
        w.key("rms_sq_plane_pair");
        w.begin_array();
        w.value(line->rms_sq_plane_pair[0]);
        w.value(line->rms_sq_plane_pair[1]);
        w.end_array();
    }
    w.end_object();

    w.key("diagnostics");
    w.begin_object();
    w.key("mode");
    w.value(std::string_view(fit_mode_name(mode)));
    w.key("tau_line");
    w.value(diagnostics.tau_line);
    w.key("tau_unique");
    w.value(diagnostics.tau_unique);
    w.key("lambda_ratio_21");
    w.value(diagnostics.lambda_ratio_21);
    w.key("lambda_ratio_31");
    w.value(diagnostics.lambda_ratio_31);
    w.key("plane_unique");
    w.value(diagnostics.plane_unique);
    w.key("branch_reason");
    w.value(std::string_view(diagnostics.branch_reason));
    w.key("det_q2");
    if (diagnostics.det_q2) {
        w.value(*diagnostics.det_q2);
    } else {
        w.null();
    }
    w.end_object();

    w.end_object();
    std::string out = w.str();
    out += '\n';
    return out;
}

FitReport FitReport::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);

        FitReport r;
        r.schema_version = doc.at("schema_version").get<std::string>();

        const auto& input = doc.at("input");
        r.input.n = input.at("n").get<std::size_t>();
        r.input.bbox_min = json_vec3(input.at("bbox_min"));
        r.input.bbox_max = json_vec3(input.at("bbox_max"));
        r.input.centroid = json_vec3(input.at("centroid"));

        const auto& plane = doc.at("plane");
        r.plane.normal = json_vec3(plane.at("normal"));
        r.plane.offset = plane.at("offset").get<double>();
        r.plane.rms_sq = plane.at("rms_sq").get<double>();
        for (int k = 0; k < 3; ++k) {
            r.plane.eigenvalues[k] = plane.at("eigenvalues").at(k).get<double>();
        }
        r.plane.unique = plane.at("unique").get<bool>();
        r.plane.centroid = r.input.centroid;

        const auto& result = doc.at("result");
        r.result_tag = result.at("tag").get<std::string>();
        if (r.result_tag == "circle") {
            CircleFit c;
            c.center = json_vec3(result.at("center"));
            c.radius = result.at("radius").get<double>();
            c.rms_sq = result.at("rms_sq").get<double>();
            c.plane = r.plane;
            r.circle = c;
        } else if (r.result_tag == "line") {
            LineFit l;
            l.anchor = json_vec3(result.at("anchor"));
            l.direction = json_vec3(result.at("direction"));
            l.rms_sq_plane_pair = {
                result.at("rms_sq_plane_pair").at(0).get<double>(),
                result.at("rms_sq_plane_pair").at(1).get<double>()};
            r.line = l;
        }

        const auto& diag = doc.at("diagnostics");
        r.mode = fit_mode_from_name(diag.at("mode").get<std::string>());
        r.diagnostics.tau_line = diag.at("tau_line").get<double>();
        r.diagnostics.tau_unique = diag.at("tau_unique").get<double>();
        r.diagnostics.lambda_ratio_21 = diag.at("lambda_ratio_21").get<double>();
        r.diagnostics.lambda_ratio_31 = diag.at("lambda_ratio_31").get<double>();
        r.diagnostics.plane_unique = diag.at("plane_unique").get<bool>();
        r.diagnostics.branch_reason = diag.at("branch_reason").get<std::string>();
        if (!diag.at("det_q2").is_null()) {
            r.diagnostics.det_q2 = diag.at("det_q2").get<double>();
        }
        r.diagnostics.eigenvalues = r.plane.eigenvalues;

        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, 0, std::string("report parse: ") + e.what());
    }
}

} // namespace geomfit
