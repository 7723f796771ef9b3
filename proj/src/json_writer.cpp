/**
 * @file json_writer.cpp
 */

#include <geomfit/json_writer.hpp>

#include <cassert>
#include <charconv>
#include <cmath>

namespace geomfit {

std::string format_real(double value) {
    assert(std::isfinite(value));
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void JsonWriter::separate() {
    if (need_comma_) out_ += ',';
    need_comma_ = false;
}

void JsonWriter::begin_object() {
    separate();
    out_ += '{';
}

void JsonWriter::end_object() {
    out_ += '}';
    need_comma_ = true;
}

void JsonWriter::begin_array() {
    separate();
    out_ += '[';
}

void JsonWriter::end_array() {
    out_ += ']';
    need_comma_ = true;
}

void JsonWriter::key(std::string_view name) {
    separate();
    out_ += '"';
    out_ += name; // keys are fixed identifiers, no escaping needed
    out_ += "\":";
}

void JsonWriter::value(double v) {
    separate();
    out_ += format_real(v);
    need_comma_ = true;
}

void JsonWriter::value(std::string_view v) {
    separate();
    out_ += '"';
    for (char c : v) {
        if (c == '"' || c == '\\') out_ += '\\';
        out_ += c;
    }
    out_ += '"';
    need_comma_ = true;
}

void JsonWriter::value(bool v) {
    separate();
    out_ += v ? "true" : "false";
    need_comma_ = true;
}

void JsonWriter::value(std::size_t v) {
    separate();
    out_ += std::to_string(v);
    need_comma_ = true;
}

void JsonWriter::null() {
    separate();
    out_ += "null";
    need_comma_ = true;
}

} // namespace geomfit
