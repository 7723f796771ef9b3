/**
 * @file geomfit_main.cpp
 * @brief Command-line frontend: fit, generate, oracle.
 */

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <geomfit/circle_fit.hpp>
#include <geomfit/errors.hpp>
#include <geomfit/io.hpp>
#include <geomfit/json_writer.hpp>
#include <geomfit/oracle.hpp>
#include <geomfit/report.hpp>
#include <geomfit/synth.hpp>

namespace {

using namespace geomfit;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(0, 0, "cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::InvalidOptions, "cannot write file: " + path);
    }
    out << text;
}

PointFormat format_from_name(const std::string& name) {
    if (name == "csv") return PointFormat::Csv;
    if (name == "json") return PointFormat::Json;
    throw Error(ErrorCode::InvalidOptions, "unknown format '" + name + "'");
}

void write_vec3(JsonWriter& w, Vec3 v) {
    w.begin_array();
    w.value(v.x);
    w.value(v.y);
    w.value(v.z);
    w.end_array();
}

int run_fit_command(const std::string& input, const std::string& format,
                    bool header, const std::string& mode, double tau_line,
                    double tau_unique, const std::string& output) {
    ParseOptions popt;
    popt.format = format_from_name(format);
    popt.header = header;
    const std::vector<Point3> points = parse_points(read_file(input), popt);

    RunOptions ropt;
    ropt.mode = fit_mode_from_name(mode);
    ropt.tau_line = tau_line;
    ropt.tau_unique = tau_unique;

    const FitReport report = run_fit(points, ropt);
    write_output(output, report.to_json());
    return 0;
}

int run_generate_command(const std::string& spec_path, const std::string& output,
                         const std::string& format) {
    const SynthSpec spec = SynthSpec::from_json(read_file(spec_path));
    const std::vector<Point3> points = generate(spec);
    const std::string text = format == "json" ? points_to_json(points) + "\n"
                                              : points_to_csv(points);
    write_output(output, text);
    return 0;
}

int run_oracle_command(const std::string& input, const std::string& format,
                       bool header, const std::string& target,
                       const std::string& output) {
    ParseOptions popt;
    popt.format = format_from_name(format);
    popt.header = header;
    const std::vector<Point3> points = parse_points(read_file(input), popt);

    JsonWriter w;
    w.begin_object();
    w.key("target");
    w.value(std::string_view(target));

    if (target == "plane") {
        const PlaneOracleResult res = oracle_plane(points);
        w.key("normal");
        write_vec3(w, res.normal);
        w.key("offset");
        w.value(res.offset);
        w.key("objective");
        w.value(res.objective);
    } else if (target == "circle") {
        // The oracle minimizes over the same projected in-plane coordinates
        // the circle fit uses; only the center/radius search is independent.
        const PlaneFit plane = fit_plane(points);
        const std::vector<Vec2> uv = plane_coordinates(points, plane);
        const CircleOracleResult res = oracle_circle(uv, oracle_seed_from_env());

        const auto [e1, e2] = plane_basis(plane.normal);
        const Point3 center3 =
            plane.centroid + e1 * res.center.x + e2 * res.center.y;
        w.key("center_uv");
        w.begin_array();
        w.value(res.center.x);
        w.value(res.center.y);
        w.end_array();
        w.key("center");
        write_vec3(w, center3);
        w.key("radius");
        w.value(res.radius);
        w.key("objective");
        w.value(res.objective);
    } else {
        throw Error(ErrorCode::InvalidOptions, "unknown target '" + target + "'");
    }

    w.end_object();
    write_output(output, w.str() + "\n");
    return 0;
}

void print_error(const Error& e) {
    JsonWriter w;
    w.begin_object();
    w.key("error");
    w.value(std::string_view(e.code_name()));
    w.key("message");
    w.value(std::string_view(e.what()));
    w.end_object();
    std::cerr << w.str() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal plane / circle / line fitting for 3D point sets"};
    app.require_subcommand(1);

    std::string input, output, spec_path;
    std::string format = "csv";
    std::string mode = "auto";
    std::string target;
    bool header = false;
    double tau_line = 1e-6;
    double tau_unique = 1e-8;

    CLI::App* fit = app.add_subcommand("fit", "Fit a plane and a circle or line");
    fit->add_option("--input", input, "Input point file")->required();
    fit->add_option("--format", format, "Input format: csv|json");
    fit->add_flag("--header", header, "Skip a CSV header line");
    fit->add_option("--mode", mode, "auto|plane|circle|line");
    fit->add_option("--tau-line", tau_line, "Line-branch eigenvalue ratio threshold");
    fit->add_option("--tau-unique", tau_unique, "Plane uniqueness eigen-gap threshold");
    fit->add_option("--output", output, "Write the report here instead of stdout");

    CLI::App* gen = app.add_subcommand("generate", "Generate a synthetic point set");
    gen->add_option("--spec", spec_path, "Synthesis spec (JSON)")->required();
    gen->add_option("--output", output, "Output point file")->required();
    gen->add_option("--format", format, "Output format: csv|json");

    CLI::App* oracle = app.add_subcommand("oracle", "Brute-force reference fit");
    oracle->add_option("--input", input, "Input point file")->required();
    oracle->add_option("--format", format, "Input format: csv|json");
    oracle->add_flag("--header", header, "Skip a CSV header line");
    oracle->add_option("--target", target, "plane|circle")->required();
    oracle->add_option("--output", output, "Write the result here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(fit)) {
            return run_fit_command(input, format, header, mode, tau_line,
                                   tau_unique, output);
        }
        if (app.got_subcommand(gen)) {
            return run_generate_command(spec_path, output, format);
        }
        return run_oracle_command(input, format, header, target, output);
    } catch (const Error& e) {
        print_error(e);
        return error_exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"internal\",\"message\":\"" << e.what()
                  << "\"}\n";
        return 1;
    }
}
