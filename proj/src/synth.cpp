/**
 * @file synth.cpp
 */

#include <geomfit/synth.hpp>

#include <cmath>
#include <string>

#include <json.hpp>

#include <geomfit/errors.hpp>
#include <geomfit/json_writer.hpp>
#include <geomfit/linalg3.hpp>
#include <geomfit/rng.hpp>

namespace geomfit {

namespace {

constexpr double kTwoPi = 2.0 * 3.141592653589793238462643383279502884;

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidSpec, what);
}

void validate(const SynthSpec& spec) {
    require(spec.n >= 3, "n must be at least 3");
    require(spec.sigma_radial >= 0.0 && std::isfinite(spec.sigma_radial),
            "sigma_radial must be a finite nonnegative number");
    require(spec.sigma_normal >= 0.0 && std::isfinite(spec.sigma_normal),
            "sigma_normal must be a finite nonnegative number");
    switch (spec.primitive) {
        case Primitive::Circle:
            require(is_finite(spec.center), "center must be finite");
            require(is_finite(spec.normal) && norm(spec.normal) > 0.0,
                    "normal must be finite and nonzero");
            require(std::isfinite(spec.radius) && spec.radius > 0.0,
                    "radius must be positive");
            break;
        case Primitive::Line:
            require(is_finite(spec.anchor), "anchor must be finite");
            require(is_finite(spec.direction) && norm(spec.direction) > 0.0,
                    "direction must be finite and nonzero");
            require(std::isfinite(spec.length) && spec.length > 0.0,
                    "length must be positive");
            break;
        case Primitive::Plane:
            require(is_finite(spec.normal) && norm(spec.normal) > 0.0,
                    "normal must be finite and nonzero");
            require(std::isfinite(spec.offset), "offset must be finite");
            require(std::isfinite(spec.extent) && spec.extent > 0.0,
                    "extent must be positive");
            break;
    }
}

std::vector<Point3> generate_circle(const SynthSpec& spec, Rng& rng) {
    const Vec3 n = normalized(spec.normal);
    const auto [e1, e2] = plane_basis(n);

    std::vector<Point3> points;
    points.reserve(spec.n);
    for (int k = 0; k < spec.n; ++k) {
        const double theta = kTwoPi * k / spec.n;
        const double r = spec.radius + spec.sigma_radial * rng.gauss();
        const double h = spec.sigma_normal * rng.gauss();
        points.push_back(spec.center + r * (std::cos(theta) * e1 + std::sin(theta) * e2) +
                         h * n);
    }
    return points;
}

std::vector<Point3> generate_line(const SynthSpec& spec, Rng& rng) {
    const Vec3 d = normalized(spec.direction);
    const auto [e1, e2] = plane_basis(d);

    std::vector<Point3> points;
    points.reserve(spec.n);
    for (int k = 0; k < spec.n; ++k) {
        const double t =
            (static_cast<double>(k) / (spec.n - 1) - 0.5) * spec.length;
        const double a = spec.sigma_radial * rng.gauss();
        const double b = spec.sigma_normal * rng.gauss();
        points.push_back(spec.anchor + t * d + a * e1 + b * e2);
    }
    return points;
}

std::vector<Point3> generate_plane(const SynthSpec& spec, Rng& rng) {
    const Vec3 n = normalized(spec.normal);
    const auto [e1, e2] = plane_basis(n);
    const Point3 origin = spec.offset * n;
    const double half = spec.extent / 2.0;

    std::vector<Point3> points;
    points.reserve(spec.n);
    for (int k = 0; k < spec.n; ++k) {
        const double u = rng.uniform(-half, half);
        const double v = rng.uniform(-half, half);
        const double h = spec.sigma_normal * rng.gauss();
        points.push_back(origin + u * e1 + v * e2 + h * n);
    }
    return points;
}

const char* primitive_name(Primitive p) {
    switch (p) {
        case Primitive::Circle: return "circle";
        case Primitive::Line: return "line";
        case Primitive::Plane: return "plane";
    }
    return "circle";
}

Vec3 json_vec3_field(const nlohmann::json& j, const char* key) {
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 3) {
        throw Error(ErrorCode::InvalidSpec,
                    std::string(key) + " must be an [x,y,z] triple");
    }
    return {a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()};
}

} // namespace

std::vector<Point3> generate(const SynthSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    switch (spec.primitive) {
        case Primitive::Circle: return generate_circle(spec, rng);
        case Primitive::Line: return generate_line(spec, rng);
        case Primitive::Plane: return generate_plane(spec, rng);
    }
    throw Error(ErrorCode::InvalidSpec, "unknown primitive");
}

SynthSpec SynthSpec::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);

        SynthSpec spec;
        const std::string kind = doc.at("primitive").get<std::string>();
        if (kind == "circle") {
            spec.primitive = Primitive::Circle;
        } else if (kind == "line") {
            spec.primitive = Primitive::Line;
        } else if (kind == "plane") {
            spec.primitive = Primitive::Plane;
        } else {
            throw Error(ErrorCode::InvalidSpec, "unknown primitive '" + kind + "'");
        }

        spec.n = doc.at("n").get<int>();
        spec.seed = doc.value("seed", 0ull);
        spec.sigma_radial = doc.value("sigma_radial", 0.0);
        spec.sigma_normal = doc.value("sigma_normal", 0.0);

        switch (spec.primitive) {
            case Primitive::Circle:
                spec.center = json_vec3_field(doc, "center");
                spec.normal = json_vec3_field(doc, "normal");
                spec.radius = doc.at("radius").get<double>();
                break;
            case Primitive::Line:
                spec.anchor = json_vec3_field(doc, "anchor");
                spec.direction = json_vec3_field(doc, "direction");
                spec.length = doc.at("length").get<double>();
                break;
            case Primitive::Plane:
                spec.normal = json_vec3_field(doc, "normal");
                spec.offset = doc.at("offset").get<double>();
                spec.extent = doc.at("extent").get<double>();
                break;
        }
        validate(spec);
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidSpec,
                    std::string("spec parse: ") + e.what());
    }
}

std::string SynthSpec::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("primitive");
    w.value(std::string_view(primitive_name(primitive)));
    w.key("n");
    w.value(static_cast<std::size_t>(n));
    w.key("seed");
    w.value(static_cast<std::size_t>(seed));
    switch (primitive) {
        case Primitive::Circle:
            w.key("center");
            w.begin_array();
            w.value(center.x); w.value(center.y); w.value(center.z);
            w.end_array();
            w.key("normal");
            w.begin_array();
            w.value(normal.x); w.value(normal.y); w.value(normal.z);
            w.end_array();
            w.key("radius");
            w.value(radius);
            break;
        case Primitive::Line:
            w.key("anchor");
            w.begin_array();
            w.value(anchor.x); w.value(anchor.y); w.value(anchor.z);
            w.end_array();
            w.key("direction");
            w.begin_array();
            w.value(direction.x); w.value(direction.y); w.value(direction.z);
            w.end_array();
            w.key("length");
            w.value(length);
            break;
        case Primitive::Plane:
            w.key("normal");
            w.begin_array();
            w.value(normal.x); w.value(normal.y); w.value(normal.z);
            w.end_array();
            w.key("offset");
            w.value(offset);
            w.key("extent");
            w.value(extent);
            break;
    }
    w.key("sigma_radial");
    w.value(sigma_radial);
    w.key("sigma_normal");
    w.value(sigma_normal);
    w.end_object();
    return w.str();
}

} // namespace geomfit
