#include "strokesyn/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "strokesyn/error.hpp"
#include "strokesyn/raster.hpp"

namespace strokesyn {

std::string format_number(double v) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidGeometry, "non-finite coordinate in SVG output");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
    if (ec != std::errc{}) throw Error(ErrorCode::InvalidGeometry, "number too large for SVG output");
    std::string s(buf, end);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

namespace {

int channel(double c) { return static_cast<int>(std::lround(255.0 * std::clamp(c, 0.0, 1.0))); }

void append_path(std::string& out, const Stroke& s, const std::string& cap) {
    out += "<path d=\"";
    const auto& v = s.vertices;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out += k == 0 ? "M " : " L ";
        out += format_number(v[k].x);
        out += ' ';
        out += format_number(v[k].y);
    }
    // A single vertex is drawn as a zero-length segment so caps render a dot.
    if (v.size() == 1) out += " L " + format_number(v[0].x) + " " + format_number(v[0].y);
    out += "\" fill=\"none\" stroke=\"rgb(";
    out += std::to_string(channel(s.color.r)) + "," + std::to_string(channel(s.color.g)) + "," +
           std::to_string(channel(s.color.b));
    out += ")\" stroke-width=\"" + format_number(s.width) + "\"";
    const double opacity = std::clamp(s.opacity * s.color.a, 0.0, 1.0);
    if (opacity != 1.0) out += " stroke-opacity=\"" + format_number(opacity) + "\"";
    out += " stroke-linecap=\"" + cap + "\" stroke-linejoin=\"round\"/>\n";
}

BoundingBox stroke_bounds(std::span<const Stroke> strokes) {
    BoundingBox box;
    for (const auto& s : strokes)
        for (Vec2 p : s.vertices) {
            const Vec2 h{0.5 * s.width, 0.5 * s.width};
            box.extend(p - h);
            box.extend(p + h);
        }
    return box;
}

}  // namespace

std::string export_svg(std::span<const Stroke> strokes, const SvgOptions& options) {
    for (const auto& s : strokes)
        if (s.vertices.empty()) throw Error(ErrorCode::InvalidGeometry, "stroke without vertices");
    BoundingBox box;
    if (options.view_box) {
        box = *options.view_box;
    } else {
        box = stroke_bounds(strokes);
        if (options.background) {
            box.extend(options.background->origin);
            box.extend(options.background->origin + Vec2{options.background->width, options.background->height});
        }
        if (box.empty()) box = BoundingBox{{0.0, 0.0}, {0.0, 0.0}};
        box.lo -= Vec2{options.margin, options.margin};
        box.hi += Vec2{options.margin, options.margin};
    }
    const std::string w = format_number(box.width());
    const std::string h = format_number(box.height());

    std::string out;
    out.reserve(256 + strokes.size() * 160);
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\"";
    out += " width=\"" + w + "\" height=\"" + h + "\" viewBox=\"" + format_number(box.lo.x) + " " +
           format_number(box.lo.y) + " " + w + " " + h + "\">\n";
    if (options.background) {
        const SvgBackground& bg = *options.background;
        out += "<image x=\"" + format_number(bg.origin.x) + "\" y=\"" + format_number(bg.origin.y) + "\" width=\"" +
               format_number(bg.width) + "\" height=\"" + format_number(bg.height) +
               "\" preserveAspectRatio=\"none\" xlink:href=\"data:image/png;base64,";
        out += base64_encode(bg.png);
        out += "\"/>\n";
    }
    out += "<g>\n";
    for (const auto& s : strokes) append_path(out, s, options.line_cap);
    out += "</g>\n</svg>\n";
    return out;
}

std::string export_svg(const SynthesizedPattern& pattern, const SvgOptions& options) {
    if (pattern.elements.empty()) throw Error(ErrorCode::Precondition, "cannot export an empty pattern");
    std::vector<const PlacedElement*> order;
    for (const auto& p : pattern.elements) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(),
                     [](const PlacedElement* a, const PlacedElement* b) { return a->node_id < b->node_id; });
    std::vector<Stroke> strokes;
    for (const auto* p : order)
        for (const auto& s : p->element.strokes) strokes.push_back(s);
    return export_svg(strokes, options);
}

}  // namespace strokesyn
