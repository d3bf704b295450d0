// Writes a 1000-element synthesized pattern as SVG for the structural check.

#include <cmath>
#include <fstream>
#include <iostream>

#include "fixtures.hpp"
#include "strokesyn/document.hpp"
#include "strokesyn/svg.hpp"

using namespace strokesyn;
using namespace strokesyn::testing;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: write_large_pattern OUT.svg\n";
        return 1;
    }
    TestRng rng(505);
    std::vector<Stroke> strokes;
    for (int i = 0; i < 50; ++i) {
        const Vec2 c{10.0 * (i % 10) + rng.uniform(-3, 3), 10.0 * (i / 10) + rng.uniform(-3, 3)};
        const Vec2 d = unit_from_angle(1.2 + rng.uniform(-0.2, 0.2));
        Stroke s;
        s.vertices = {c - d * 2.5, c + perp(d) * rng.uniform(-0.3, 0.3), c + d * 2.5};
        s.width = 0.8;
        s.opacity = 0.9;
        s.draw_index = static_cast<std::uint64_t>(i);
        strokes.push_back(s);
    }
    AnalysisParams params;
    params.epsilon = 2.0;
    params.frame = ReferenceFrame::two_d({{-5, -5}, {95, -5}, {95, 45}, {-5, 45}});
    const auto analysis = analyze(strokes, params);
    SynthesisRequest r;
    const double side = std::sqrt(20.0 * analysis.measure_ref);
    r.region = TargetRegion::polygon({{0, 0}, {side, 0}, {side, side}, {0, side}});
    r.seed = 1;
    const auto pattern = synthesize(analysis, r);
    std::ofstream(argv[1], std::ios::binary) << export_svg(pattern);
    std::cout << pattern.elements.size() << "\n";
    return pattern.elements.size() == 1000 ? 0 : 1;
}
