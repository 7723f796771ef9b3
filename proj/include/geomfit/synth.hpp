/**
 * @file synth.hpp
 * @brief Seeded synthetic point clouds for testing and verification.
 */

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <geomfit/vec.hpp>

namespace geomfit {

enum class Primitive { Circle, Line, Plane };

/**
 * Recipe for a synthetic dataset. One seed, one dataset: generation is fully
 * deterministic.
 *
 * Noise semantics: sigma_radial perturbs within the primitive's own plane
 * (circle: the radius; line: the first transverse axis), sigma_normal
 * perturbs out of it (circle/plane: along the normal; line: the second
 * transverse axis).
 */
struct SynthSpec {
    Primitive primitive = Primitive::Circle;
    int n = 0;
    std::uint64_t seed = 0;

    // circle
    Point3 center;
    Vec3 normal{0.0, 0.0, 1.0};
    double radius = 1.0;

    // line
    Point3 anchor;
    Vec3 direction{1.0, 0.0, 0.0};
    double length = 1.0;

    // plane (reuses `normal`)
    double offset = 0.0;
    double extent = 1.0;

    double sigma_radial = 0.0;
    double sigma_normal = 0.0;

    /// Throws Error(InvalidSpec) on malformed or missing fields.
    static SynthSpec from_json(std::string_view text);
    std::string to_json() const;
};

/// Throws Error(InvalidSpec) if the spec is invalid (N < 3, sigma < 0, ...).
std::vector<Point3> generate(const SynthSpec& spec);

} // namespace geomfit
