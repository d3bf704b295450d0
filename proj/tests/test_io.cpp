#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "strokesyn/document.hpp"
#include "strokesyn/error.hpp"
#include "strokesyn/lod.hpp"
#include "strokesyn/raster.hpp"
#include "strokesyn/svg.hpp"

using namespace strokesyn;
using namespace strokesyn::testing;

namespace {

Stroke stroke(std::vector<Vec2> v, std::uint64_t index = 0) {
    Stroke s;
    s.vertices = std::move(v);
    s.draw_index = index;
    return s;
}

const Fixture& fixture(const std::string& name) {
    for (const auto& f : gesture_fixtures())
        if (f.name == name) return f;
    throw std::runtime_error("no fixture " + name);
}

SynthesisRequest request_for(const Fixture& f, Behavior b, std::uint64_t seed) {
    SynthesisRequest r;
    r.region = f.params.frame.kind == FrameKind::OneD ? TargetRegion::path(f.target) : TargetRegion::polygon(f.target);
    r.behavior = b;
    r.seed = seed;
    return r;
}

PatternDocument full_document(const std::string& name) {
    const auto& f = fixture(name);
    PatternDocument doc;
    doc.strokes = f.strokes;
    doc.params = f.params;
    doc.analysis = analyze(f.strokes, f.params);
    auto r = request_for(f, Behavior::Sampling, 11);
    r.alpha = 0.6;
    r.r_star = 0.3;
    doc.patterns.push_back(synthesize(*doc.analysis, r));
    return doc;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::Precondition;
}

SynthesizedPattern single_element_pattern(Vec2 center, double width) {
    SynthesizedPattern p;
    PlacedElement e;
    e.element = fit_point(stroke({center, center + Vec2{0.5, 0}}), 5.0);
    for (auto& s : e.element.strokes) s.width = width;
    p.elements.push_back(e);
    return p;
}

}  // namespace

TEST(Document, VersionOnlyLoadsEmpty) {
    const auto doc = load_document(R"({"version": 1})");
    EXPECT_TRUE(doc.strokes.empty());
    EXPECT_FALSE(doc.analysis);
    EXPECT_TRUE(doc.patterns.empty());
}

TEST(Document, ThreeStrokeRoundTrip) {
    PatternDocument doc;
    doc.strokes = {stroke({{0, 0}, {1.25, 3}}, 0), stroke({{0.1, 0.2}}, 1), stroke({{5, 5}, {6, 7}, {1e-17, -3.3}}, 2)};
    doc.strokes[1].color = {0.1, 0.2, 0.3, 0.4};
    doc.strokes[2].opacity = 0.5;
    doc.strokes[2].width = 2.75;
    EXPECT_EQ(load_document(save_document(doc)), doc);
}

TEST(Document, FullRoundTripIsLossless) {
    for (const char* name : {"hatch_30deg", "ticks_leaning", "circles_mixed", "circle_row"}) {
        SCOPED_TRACE(name);
        const PatternDocument doc = full_document(name);
        const std::string text = save_document(doc);
        const PatternDocument back = load_document(text);
        EXPECT_EQ(back, doc);
        EXPECT_EQ(save_document(back), text);
    }
}

TEST(Document, AwkwardDoublesSurvive) {
    PatternDocument doc;
    doc.strokes = {stroke({{0.1 + 0.2, 1.0 / 3.0}, {std::nextafter(1.0, 2.0), 1e300}, {-5e-324, 123456789.123456789}})};
    EXPECT_EQ(load_document(save_document(doc)), doc);
}

TEST(Document, TruncatedNamesOffset) {
    const std::string text = save_document(full_document("taps_grid"));
    try {
        load_document(text.substr(0, text.size() / 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos) << e.what();
    }
}

TEST(Document, SchemaErrorsNameFieldPath) {
    try {
        load_document(R"({"version": 1, "strokes": [{"id": 0, "points": [[0, "x"]], "width": 1}]})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_NE(std::string(e.what()).find("$.strokes[0]"), std::string::npos) << e.what();
    }
}

TEST(Document, UnknownVersion) {
    EXPECT_EQ(code_of([] { load_document(R"({"version": 99})"); }), ErrorCode::UnsupportedVersion);
    EXPECT_EQ(code_of([] { load_document(R"([1, 2])"); }), ErrorCode::Parse);
}

TEST(Document, AnalysisMustMatchStrokes) {
    PatternDocument doc = full_document("taps_sparse");
    doc.strokes[0].vertices[0].x += 1.0;
    EXPECT_THROW(save_document(doc), Error);
}

TEST(Document, RegionAndRequestCodecs) {
    SynthesisRequest r;
    r.region = TargetRegion::path({{0, 0}, {3, 4}});
    r.behavior = Behavior::Cloning;
    r.alpha = 0.25;
    r.seed = 18446744073709551615ULL;
    r.node_count = 12;
    EXPECT_EQ(request_from_json(to_json(r), "$"), r);
    EXPECT_THROW(region_from_json(Json::parse(R"({"kind": "blob", "vertices": []})"), "$"), Error);
}

TEST(Svg, SingleStroke) {
    const std::vector<Stroke> s{[] {
        Stroke x = stroke({{0, 0}, {1, 0}});
        x.width = 2.0;
        return x;
    }()};
    const std::string svg = export_svg(s);
    EXPECT_NE(svg.find("<path d=\"M 0 0 L 1 0\""), std::string::npos) << svg;
    EXPECT_NE(svg.find("stroke-width=\"2\""), std::string::npos);
    EXPECT_EQ(svg.find("stroke-opacity"), std::string::npos);
    std::size_t paths = 0;
    for (std::size_t at = svg.find("<path"); at != std::string::npos; at = svg.find("<path", at + 1)) ++paths;
    EXPECT_EQ(paths, 1u);
}

TEST(Svg, FormatNumber) {
    EXPECT_EQ(format_number(1.5), "1.5");
    EXPECT_EQ(format_number(-0.125), "-0.125");
    EXPECT_EQ(format_number(2.0), "2");
    EXPECT_EQ(format_number(-0.0001), "0");
    EXPECT_EQ(format_number(1.23456), "1.235");
    EXPECT_THROW(format_number(NAN), Error);
}

TEST(Svg, DotAndOpacity) {
    Stroke s = stroke({{3, 4}});
    s.opacity = 0.5;
    s.color = {1, 0, 0, 0.5};
    const std::string svg = export_svg(std::vector<Stroke>{s});
    EXPECT_NE(svg.find("M 3 4 L 3 4"), std::string::npos);
    EXPECT_NE(svg.find("stroke-opacity=\"0.25\""), std::string::npos);
    EXPECT_NE(svg.find("rgb(255,0,0)"), std::string::npos);
}

TEST(Svg, PatternExportIsDeterministic) {
    const auto& f = fixture("passes_45deg");
    const auto a = analyze(f.strokes, f.params);
    const auto r = request_for(f, Behavior::Copying, 5);
    EXPECT_EQ(export_svg(synthesize(a, r)), export_svg(synthesize(a, r)));
    EXPECT_THROW(export_svg(SynthesizedPattern{}), Error);
}

TEST(Svg, EmbedsBackground) {
    Raster r;
    r.width = r.height = 2;
    r.luminance = {0, 1, 1, 0};
    SvgOptions o;
    o.background = SvgBackground{encode_png(r), {0, 0}, 2, 2};
    const std::string svg = export_svg(std::vector<Stroke>{stroke({{1, 1}})}, o);
    EXPECT_NE(svg.find("data:image/png;base64,"), std::string::npos);
}

TEST(Raster, PngRoundTrip) {
    Raster r;
    r.width = 7;
    r.height = 3;
    for (int i = 0; i < 21; ++i) r.luminance.push_back(i / 20.0);
    const Raster back = decode_png(encode_png(r));
    ASSERT_EQ(back.width, 7);
    ASSERT_EQ(back.height, 3);
    for (int i = 0; i < 21; ++i) EXPECT_NEAR(back.luminance[static_cast<std::size_t>(i)], r.luminance[static_cast<std::size_t>(i)], 0.01);
    EXPECT_EQ(code_of([] { decode_png("not a png"); }), ErrorCode::Parse);
}

TEST(Raster, LuminanceWeights) {
    EXPECT_NEAR(luminance(1, 1, 1), 1.0, 1e-12);
    EXPECT_NEAR(luminance(1, 0, 0), 0.2126, 1e-12);
    EXPECT_NEAR(luminance(0, 1, 0), 0.7152, 1e-12);
    EXPECT_NEAR(srgb_to_linear(1.0), 1.0, 1e-12);
    EXPECT_NEAR(srgb_to_linear(0.5), 0.21404, 1e-4);
}

TEST(Raster, BilinearMatchesOracle) {
    TestRng rng(19);
    Raster r;
    r.width = 9;
    r.height = 6;
    for (int i = 0; i < 54; ++i) r.luminance.push_back(rng.uniform());
    for (int k = 0; k < 500; ++k) {
        const double x = rng.uniform(-3, 12), y = rng.uniform(-3, 9);
        EXPECT_NEAR(sample_luminance(r, {x, y}), oracle_bilinear(r.luminance, 9, 6, x, y), 1e-12);
    }
    r.origin = {10, 20};
    r.pixel_size = 0.5;
    EXPECT_NEAR(sample_luminance(r, {10 + 2.25, 20 + 1.25}), oracle_bilinear(r.luminance, 9, 6, 4.5, 2.5), 1e-12);
}

TEST(Base64, RoundTrip) {
    for (std::string s : {"", "a", "ab", "abc", "abcd", "\x00\xff\x10 binary"}) EXPECT_EQ(base64_decode(base64_encode(s)), s);
    EXPECT_EQ(base64_encode("Man"), "TWFu");
    EXPECT_EQ(base64_encode("Ma"), "TWE=");
    EXPECT_THROW(base64_decode("!!!!"), Error);
}

TEST(AttributeMap, EvaluateAndValidate) {
    const std::vector<ScalarStop> w{{0.0, 0.5}, {1.0, 2.0}};
    EXPECT_DOUBLE_EQ(evaluate(w, 0.5), 1.25);
    EXPECT_DOUBLE_EQ(evaluate(w, -1.0), 0.5);
    EXPECT_DOUBLE_EQ(evaluate(w, 2.0), 2.0);
    AttributeMap bad;
    bad.width = {{0.5, 1.0}, {0.2, 1.0}};
    EXPECT_THROW(validate(bad), Error);
    AttributeMap neg;
    neg.opacity = {{0.0, -1.0}};
    EXPECT_THROW(validate(neg), Error);
}

TEST(Modulate, WhiteIdentity) {
    const auto& f = fixture("circles_grid");
    const auto p = synthesize(analyze(f.strokes, f.params), request_for(f, Behavior::Copying, 1));
    Raster white;
    white.width = white.height = 4;
    white.luminance.assign(16, 1.0);
    EXPECT_EQ(modulate_attributes(p, white, {}), p);
}

TEST(Modulate, BlackToTransparent) {
    const auto& f = fixture("circles_grid");
    const auto p = synthesize(analyze(f.strokes, f.params), request_for(f, Behavior::Copying, 1));
    Raster black;
    black.width = black.height = 4;
    black.luminance.assign(16, 0.0);
    AttributeMap m;
    m.opacity = {{0.0, 0.0}, {1.0, 1.0}};
    const auto out = modulate_attributes(p, black, m);
    ASSERT_EQ(out.elements.size(), p.elements.size());
    for (std::size_t i = 0; i < out.elements.size(); ++i) {
        const auto& a = out.elements[i].element.strokes;
        const auto& b = p.elements[i].element.strokes;
        for (std::size_t k = 0; k < a.size(); ++k) {
            EXPECT_EQ(a[k].opacity, 0.0);
            EXPECT_EQ(a[k].vertices, b[k].vertices);
        }
    }
    EXPECT_THROW(modulate_attributes(p, Raster{}, m), Error);
}

TEST(Modulate, GradientMidpointWidth) {
    Raster g;
    g.width = 64;
    g.height = 8;
    for (int j = 0; j < g.height; ++j)
        for (int i = 0; i < g.width; ++i) g.luminance.push_back((i + 0.5) / g.width);
    AttributeMap m;
    m.width = {{0.0, 0.5}, {1.0, 2.0}};
    const auto p = single_element_pattern({31.75, 4.0}, 2.0);
    const double lum = oracle_bilinear(g.luminance, g.width, g.height, p.elements[0].element.center.x, 4.0);
    EXPECT_NEAR(lum, 0.5, 1e-12);
    const auto out = modulate_attributes(p, g, m);
    EXPECT_NEAR(out.elements[0].element.strokes[0].width, 2.0 * 1.25, 1e-12);
    EXPECT_EQ(out.elements[0].element.strokes[0].vertices, p.elements[0].element.strokes[0].vertices);
}

TEST(Modulate, ColorReplacement) {
    Raster g;
    g.width = g.height = 1;
    g.luminance = {0.25};
    AttributeMap m;
    m.color = {{0.0, {0, 0, 0, 1}}, {0.5, {1, 0.5, 0, 1}}};
    const auto out = modulate_attributes(single_element_pattern({0.5, 0.5}, 1.0), g, m);
    EXPECT_EQ(out.elements[0].element.strokes[0].color, (Rgba{0.5, 0.25, 0, 1}));
}

TEST(Lod, SingleUnitScaleEqualsSynthesize) {
    const auto& f = fixture("taps_grid");
    const auto a = analyze(f.strokes, f.params);
    const auto r = request_for(f, Behavior::Copying, 9);
    const std::vector<double> scales{1.0};
    const auto out = synthesize_lod(a, r.region, scales, r);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0], synthesize(a, r));
}

TEST(Lod, DoubleScaleQuadruplesCount) {
    const auto& f = fixture("circles_dense");
    const auto a = analyze(f.strokes, f.params);
    const auto r = request_for(f, Behavior::Copying, 9);
    const std::vector<double> scales{1.0, 2.0};
    const auto out = synthesize_lod(a, r.region, scales, r);
    ASSERT_EQ(out.size(), 2u);
    const double n1 = static_cast<double>(out[0].elements.size()), n2 = static_cast<double>(out[1].elements.size());
    EXPECT_NEAR(n2, 4.0 * n1, 2.0);
    EXPECT_EQ(out[1].provenance.seed, r.seed + 1);
    // Element extents stay in device units.
    EXPECT_LE(out[1].elements[0].element.size, f.params.epsilon);
}

TEST(Lod, OneDScaleIsLinear) {
    const auto& f = fixture("ticks_upright");
    const auto a = analyze(f.strokes, f.params);
    const auto r = request_for(f, Behavior::Copying, 9);
    const std::vector<double> scales{1.0, 3.0};
    const auto out = synthesize_lod(a, r.region, scales, r);
    EXPECT_NEAR(static_cast<double>(out[1].elements.size()), 3.0 * static_cast<double>(out[0].elements.size()), 1.5);
}

TEST(Lod, SmallScaleClampsWithWarning) {
    AnalysisParams p;
    p.pattern_type = PatternType::Stippling;
    p.frame = ReferenceFrame::two_d({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
    const std::vector<Stroke> s{stroke({{2, 2}}, 0), stroke({{7, 6}}, 1)};
    const auto a = analyze(s, p);
    ASSERT_EQ(a.n_ref, 2u);
    SynthesisRequest r;
    r.region = TargetRegion::polygon({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
    const std::vector<double> scales{0.5};
    const auto out = synthesize_lod(a, r.region, scales, r);
    EXPECT_EQ(out[0].elements.size(), 2u);
    bool warned = false;
    for (const auto& w : out[0].provenance.warnings) warned |= w.find("clamped") != std::string::npos;
    EXPECT_TRUE(warned);
}

TEST(Lod, ScaleExtentsOption) {
    const auto& f = fixture("circles_grid");
    const auto a = analyze(f.strokes, f.params);
    const auto big = scale_analysis(a, 2.0);
    EXPECT_NEAR(big.params.epsilon, 2.0 * a.params.epsilon, 1e-12);
    EXPECT_NEAR(big.pair_stats.prox.mean, 2.0 * a.pair_stats.prox.mean, 1e-9);
    EXPECT_NEAR(big.measure_ref, 4.0 * a.measure_ref, 1e-9);
    EXPECT_EQ(big.n_ref, a.n_ref);
    const std::vector<double> bad{0.0};
    EXPECT_THROW(synthesize_lod(a, request_for(f, Behavior::Copying, 1).region, bad, {}), Error);
}
