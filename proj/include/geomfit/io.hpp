/**
 * @file io.hpp
 * @brief Point-set ingestion (CSV and JSON) and CSV output.
 */

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <geomfit/vec.hpp>

namespace geomfit {

enum class PointFormat { Csv, Json };

struct ParseOptions {
    PointFormat format = PointFormat::Csv;
    /// CSV only: the first line is a header and is skipped.
    bool header = false;
};

/**
 * Parses one Point3 per record, order preserved.
 *
 * CSV: one `x,y,z` record per line, `.` decimal separator, optional header.
 * JSON: an array of [x, y, z] triples.
 *
 * Non-finite values and malformed fields raise ParseError with a 1-based
 * row/column location; zero records raise Error(EmptyInput).
 */
std::vector<Point3> parse_points(std::string_view text, const ParseOptions& options = {});

/// parse_points over a file's contents. Unreadable files raise ParseError.
std::vector<Point3> parse_points_file(const std::string& path,
                                      const ParseOptions& options = {});

/// One `x,y,z` line per point, 17 significant digits, byte-deterministic.
std::string points_to_csv(std::span<const Point3> points);

std::string points_to_json(std::span<const Point3> points);

} // namespace geomfit
