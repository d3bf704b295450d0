#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "strokesyn/pattern_synthesis.hpp"

namespace strokesyn {

/// Grayscale background in linear luminance [0, 1]. Pixel (i, j) covers
/// [origin + (i, j) * pixel_size, origin + (i + 1, j + 1) * pixel_size).
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<double> luminance;  // row-major, top row first
    Vec2 origin{};
    double pixel_size = 1.0;

    bool empty() const { return width <= 0 || height <= 0; }
    double at(int i, int j) const { return luminance[static_cast<std::size_t>(j) * width + i]; }
};

double srgb_to_linear(double c);
/// Rec. 709 luminance of linear RGB.
double luminance(double r, double g, double b);

/// Decode PNG bytes; color is converted to linear luminance and composited
/// over white when the image has alpha. Throws Error(Parse).
Raster decode_png(std::string_view bytes);
/// 8-bit grayscale PNG of the luminance values (stored as sRGB gray).
std::string encode_png(const Raster& r);

/// Bilinear sample at a plane position; lookups outside the image use the
/// nearest edge pixel.
double sample_luminance(const Raster& r, Vec2 p);

struct ScalarStop {
    double at = 0.0;
    double value = 0.0;

    bool operator==(const ScalarStop&) const = default;
};

struct ColorStop {
    double at = 0.0;
    Rgba color{};

    bool operator==(const ColorStop&) const = default;
};

/// Piecewise-linear maps from luminance to a width multiplier, an opacity
/// multiplier and a replacement color. An empty stop list leaves that
/// attribute unchanged; values outside the stop range clamp to the end stops.
struct AttributeMap {
    std::vector<ScalarStop> width;
    std::vector<ScalarStop> opacity;
    std::vector<ColorStop> color;

    bool operator==(const AttributeMap&) const = default;
};

void validate(const AttributeMap& m);

double evaluate(std::span<const ScalarStop> stops, double x);
Rgba evaluate(std::span<const ColorStop> stops, double x);

/// Restyle every placed element from the luminance under its center.
/// Geometry is left untouched.
SynthesizedPattern modulate_attributes(SynthesizedPattern pattern, const Raster& background, const AttributeMap& map);

std::string base64_encode(std::string_view bytes);
/// Throws Error(Parse) on malformed input.
std::string base64_decode(std::string_view text);

}  // namespace strokesyn
