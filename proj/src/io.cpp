/**
 * @file io.cpp
 */

#include <geomfit/io.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <geomfit/errors.hpp>
#include <geomfit/json_writer.hpp>

namespace geomfit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_field(std::string_view field, std::size_t row, std::size_t column) {
    const std::string_view f = trim(field);
    if (f.empty()) {
        throw ParseError(row, column, "empty field");
    }
    double value = 0.0;
    const auto res = std::from_chars(f.data(), f.data() + f.size(), value);
    if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
        throw ParseError(row, column, "not a number: '" + std::string(f) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(row, column, "non-finite value: '" + std::string(f) + "'");
    }
    return value;
}

std::vector<Point3> parse_csv(std::string_view text, bool header) {
    std::vector<Point3> points;
    std::size_t row = 0;
    std::size_t pos = 0;
    bool header_pending = header;

    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++row;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }

        double coords[3];
        std::size_t field = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string_view cell = line.substr(
                start, comma == std::string_view::npos ? line.size() - start
                                                       : comma - start);
            if (field >= 3) {
                throw ParseError(row, 4, "expected 3 fields");
            }
            coords[field] = parse_field(cell, row, field + 1);
            ++field;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (field != 3) {
            throw ParseError(row, field + 1, "expected 3 fields, got " +
                                                 std::to_string(field));
        }
        points.push_back({coords[0], coords[1], coords[2]});
    }
    return points;
}

std::vector<Point3> parse_json_points(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, 0, e.what());
    }
    if (!doc.is_array()) {
        throw ParseError(0, 0, "expected a top-level array of [x,y,z] triples");
    }

    std::vector<Point3> points;
    points.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& rec = doc[i];
        if (!rec.is_array() || rec.size() != 3) {
            throw ParseError(i + 1, 0, "expected an [x,y,z] triple");
        }
        double coords[3];
        for (std::size_t j = 0; j < 3; ++j) {
            if (!rec[j].is_number()) {
                throw ParseError(i + 1, j + 1, "expected a number");
            }
            coords[j] = rec[j].get<double>();
            if (!std::isfinite(coords[j])) {
                throw ParseError(i + 1, j + 1, "non-finite value");
            }
        }
        points.push_back({coords[0], coords[1], coords[2]});
    }
    return points;
}

} // namespace

std::vector<Point3> parse_points(std::string_view text, const ParseOptions& options) {
    std::vector<Point3> points = options.format == PointFormat::Csv
                                     ? parse_csv(text, options.header)
                                     : parse_json_points(text);
    if (points.empty()) {
        throw Error(ErrorCode::EmptyInput, "no points in input");
    }
    return points;
}

std::vector<Point3> parse_points_file(const std::string& path,
                                      const ParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(0, 0, "cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_points(buf.str(), options);
}

std::string points_to_csv(std::span<const Point3> points) {
    std::string out;
    for (const Point3& p : points) {
        out += format_real(p.x);
        out += ',';
        out += format_real(p.y);
        out += ',';
        out += format_real(p.z);
        out += '\n';
    }
    return out;
}

std::string points_to_json(std::span<const Point3> points) {
    JsonWriter w;
    w.begin_array();
    for (const Point3& p : points) {
        w.begin_array();
        w.value(p.x);
        w.value(p.y);
        w.value(p.z);
        w.end_array();
    }
    w.end_array();
    return w.str();
}

} // namespace geomfit
