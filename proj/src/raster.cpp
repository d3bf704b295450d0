#include "strokesyn/raster.hpp"

#include <algorithm>
#include <cmath>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <png.h>

#include "strokesyn/error.hpp"

namespace strokesyn {

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

namespace {

double linear_to_srgb(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

}  // namespace

double luminance(double r, double g, double b) { return 0.2126 * r + 0.7152 * g + 0.0722 * b; }

Raster decode_png(std::string_view bytes) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        throw Error(ErrorCode::Parse, std::string("PNG: ") + image.message);
    image.format = PNG_FORMAT_RGBA;
    std::vector<png_byte> pixels(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw Error(ErrorCode::Parse, "PNG: " + msg);
    }
    Raster r;
    r.width = static_cast<int>(image.width);
    r.height = static_cast<int>(image.height);
    r.luminance.resize(static_cast<std::size_t>(r.width) * r.height);
    for (std::size_t k = 0; k < r.luminance.size(); ++k) {
        const png_byte* px = &pixels[4 * k];
        const double y = luminance(srgb_to_linear(px[0] / 255.0), srgb_to_linear(px[1] / 255.0),
                                   srgb_to_linear(px[2] / 255.0));
        const double a = px[3] / 255.0;
        r.luminance[k] = a * y + (1.0 - a);
    }
    return r;
}

std::string encode_png(const Raster& r) {
    if (r.empty()) throw Error(ErrorCode::Precondition, "cannot encode an empty raster");
    std::vector<png_byte> gray(r.luminance.size());
    for (std::size_t k = 0; k < gray.size(); ++k)
        gray[k] = static_cast<png_byte>(std::lround(255.0 * linear_to_srgb(std::clamp(r.luminance[k], 0.0, 1.0))));
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(r.width);
    image.height = static_cast<png_uint_32>(r.height);
    image.format = PNG_FORMAT_GRAY;
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, gray.data(), 0, nullptr))
        throw Error(ErrorCode::Precondition, std::string("PNG: ") + image.message);
    std::string out(size, '\0');
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, gray.data(), 0, nullptr))
        throw Error(ErrorCode::Precondition, std::string("PNG: ") + image.message);
    out.resize(size);
    return out;
}

double sample_luminance(const Raster& r, Vec2 p) {
    if (r.empty()) throw Error(ErrorCode::Precondition, "background image is empty");
    // Pixel centers sit at half-integer positions.
    const double u = (p.x - r.origin.x) / r.pixel_size - 0.5;
    const double v = (p.y - r.origin.y) / r.pixel_size - 0.5;
    const double uc = std::clamp(u, 0.0, static_cast<double>(r.width - 1));
    const double vc = std::clamp(v, 0.0, static_cast<double>(r.height - 1));
    const int i0 = static_cast<int>(std::floor(uc));
    const int j0 = static_cast<int>(std::floor(vc));
    const int i1 = std::min(i0 + 1, r.width - 1);
    const int j1 = std::min(j0 + 1, r.height - 1);
    const double fx = uc - i0;
    const double fy = vc - j0;
    const double top = r.at(i0, j0) * (1.0 - fx) + r.at(i1, j0) * fx;
    const double bottom = r.at(i0, j1) * (1.0 - fx) + r.at(i1, j1) * fx;
    return top * (1.0 - fy) + bottom * fy;
}

namespace {

template <class Stops>
void check_breakpoints(const Stops& stops, const char* name) {
    for (std::size_t k = 0; k < stops.size(); ++k) {
        if (!(stops[k].at >= 0.0 && stops[k].at <= 1.0))
            throw Error(ErrorCode::Precondition, std::string(name) + " stop outside [0, 1]");
        if (k > 0 && !(stops[k].at > stops[k - 1].at))
            throw Error(ErrorCode::Precondition, std::string(name) + " stops must increase strictly");
    }
}

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

// Bracketing stops and the interpolation weight for x.
template <class Stops>
std::tuple<std::size_t, std::size_t, double> bracket(const Stops& stops, double x) {
    if (x <= stops.front().at) return {0, 0, 0.0};
    if (x >= stops.back().at) return {stops.size() - 1, stops.size() - 1, 0.0};
    std::size_t k = 1;
    while (stops[k].at < x) ++k;
    return {k - 1, k, (x - stops[k - 1].at) / (stops[k].at - stops[k - 1].at)};
}

}  // namespace

void validate(const AttributeMap& m) {
    check_breakpoints(m.width, "width");
    check_breakpoints(m.opacity, "opacity");
    check_breakpoints(m.color, "color");
    for (const auto& s : m.width)
        if (!(s.value >= 0.0) || !std::isfinite(s.value))
            throw Error(ErrorCode::Precondition, "width multipliers must be non-negative");
    for (const auto& s : m.opacity)
        if (!unit(s.value)) throw Error(ErrorCode::Precondition, "opacity values must lie in [0, 1]");
    for (const auto& s : m.color)
        if (!unit(s.color.r) || !unit(s.color.g) || !unit(s.color.b) || !unit(s.color.a))
            throw Error(ErrorCode::Precondition, "color channels must lie in [0, 1]");
}

double evaluate(std::span<const ScalarStop> stops, double x) {
    if (stops.empty()) return 1.0;
    const auto [a, b, t] = bracket(stops, x);
    return stops[a].value + (stops[b].value - stops[a].value) * t;
}

Rgba evaluate(std::span<const ColorStop> stops, double x) {
    if (stops.empty()) return {};
    const auto [a, b, t] = bracket(stops, x);
    const Rgba& p = stops[a].color;
    const Rgba& q = stops[b].color;
    return {p.r + (q.r - p.r) * t, p.g + (q.g - p.g) * t, p.b + (q.b - p.b) * t, p.a + (q.a - p.a) * t};
}

SynthesizedPattern modulate_attributes(SynthesizedPattern pattern, const Raster& background, const AttributeMap& map) {
    if (background.empty()) throw Error(ErrorCode::Precondition, "background image is empty");
    validate(map);
    for (auto& placed : pattern.elements) {
        const double lum = sample_luminance(background, placed.element.center);
        const double w = evaluate(map.width, lum);
        const double o = evaluate(map.opacity, lum);
        for (auto& s : placed.element.strokes) {
            if (!map.width.empty()) s.width *= w;
            if (!map.opacity.empty()) s.opacity = std::clamp(s.opacity * o, 0.0, 1.0);
            if (!map.color.empty()) s.color = evaluate(map.color, lum);
        }
    }
    return pattern;
}

std::string base64_encode(std::string_view bytes) {
    using namespace boost::archive::iterators;
    using It = base64_from_binary<transform_width<std::string_view::const_iterator, 6, 8>>;
    std::string out(It(bytes.begin()), It(bytes.end()));
    out.append((3 - bytes.size() % 3) % 3, '=');
    return out;
}

std::string base64_decode(std::string_view text) {
    using namespace boost::archive::iterators;
    std::string clean;
    clean.reserve(text.size());
    for (char c : text)
        if (c != '\n' && c != '\r' && c != ' ') clean.push_back(c);
    std::size_t pad = 0;
    while (!clean.empty() && clean.back() == '=' && pad < 2) {
        clean.pop_back();
        ++pad;
    }
    for (char c : clean)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '/'))
            throw Error(ErrorCode::Parse, "malformed base64");
    if (clean.size() % 4 == 1) throw Error(ErrorCode::Parse, "malformed base64");
    using It = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;
    std::string out;
    try {
        out.assign(It(clean.begin()), It(clean.end()));
    } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "malformed base64");
    }
    // transform_width may emit a trailing partial byte.
    out.resize(clean.size() * 3 / 4);
    return out;
}

}  // namespace strokesyn
