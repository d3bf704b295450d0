#include "strokesyn/lod.hpp"

#include <cmath>

#include "strokesyn/error.hpp"

namespace strokesyn {

namespace {

void scale_stats(std::optional<PropertyStats>& s, double k) {
    if (!s) return;
    s->mean *= k;
    s->std *= k;
    s->min *= k;
    s->max *= k;
}

}  // namespace

PatternAnalysis scale_analysis(const PatternAnalysis& a, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::Precondition, "scale factor must be positive");
    PatternAnalysis out = a;
    AnalysisParams& p = out.params;
    p.epsilon *= k;
    p.frame.origin *= k;
    p.frame.length *= k;
    for (Vec2& v : p.frame.region) v *= k;

    for (auto& e : out.elements) {
        e.center *= k;
        e.size *= k;
        e.axis = {e.axis.p0 * k, e.axis.p1 * k};
        e.length *= k;
        e.width *= k;
        for (auto& s : e.strokes) {
            for (Vec2& v : s.vertices) v *= k;
            s.width *= k;
        }
    }
    for (auto& prop : out.properties) {
        if (!prop) continue;
        prop->size *= k;
        prop->length *= k;
        prop->width *= k;
        if (prop->perp_offset) *prop->perp_offset *= k;
    }
    for (auto& e : out.graph.edges) {
        e.props.prox *= k;
        e.props.sep *= k;
    }
    ElementStats& es = out.element_stats;
    scale_stats(es.size, k);
    scale_stats(es.length, k);
    scale_stats(es.width, k);
    scale_stats(es.perp_offset, k);
    std::optional<PropertyStats> prox = out.pair_stats.prox;
    scale_stats(prox, k);
    out.pair_stats.prox = *prox;
    scale_stats(out.pair_stats.sep, k);
    out.measure_ref *= p.frame.kind == FrameKind::OneD ? k : k * k;
    return out;
}

std::vector<SynthesizedPattern> synthesize_lod(const PatternAnalysis& analysis, const TargetRegion& region,
                                               std::span<const double> scales, const SynthesisRequest& request,
                                               const LodOptions& options) {
    if (scales.empty()) throw Error(ErrorCode::Precondition, "at least one scale is required");
    for (double k : scales)
        if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::Precondition, "scale factors must be positive");
    std::vector<SynthesizedPattern> out;
    out.reserve(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double k = scales[i];
        SynthesisRequest r = request;
        r.seed = request.seed + i;
        r.region = k == 1.0 ? region : scaled(region, k);
        if (options.scale_extents && k != 1.0) out.push_back(synthesize(scale_analysis(analysis, k), r));
        else out.push_back(synthesize(analysis, r));
    }
    return out;
}

}  // namespace strokesyn
