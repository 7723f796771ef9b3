/**
 * @file json_writer.hpp
 * @brief Deterministic JSON output with 17-significant-digit reals.
 *
 * Reports must be byte-identical across runs and round-trip doubles
 * losslessly, so numbers are formatted with std::to_chars (locale-free)
 * at 17 significant digits and keys are emitted in a fixed order by the
 * caller.
 */

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace geomfit {

/// Shortest-by-charconv 17-significant-digit representation of a finite double.
std::string format_real(double value);

class JsonWriter {
public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();

    /// Key inside the current object; must be followed by a value or container.
    void key(std::string_view name);

    void value(double v);
    void value(std::string_view v);
    void value(bool v);
    void value(std::size_t v);
    void null();

    const std::string& str() const { return out_; }

private:
    void separate();

    std::string out_;
    bool need_comma_ = false;
};

} // namespace geomfit
