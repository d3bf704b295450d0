#include "strokesyn/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "strokesyn/document.hpp"
#include "strokesyn/error.hpp"
#include "strokesyn/lod.hpp"
#include "strokesyn/raster.hpp"
#include "strokesyn/service.hpp"
#include "strokesyn/svg.hpp"

namespace strokesyn {

namespace {

// I/O failures count as data errors, same as malformed content.
std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Parse, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size())))
        throw Error(ErrorCode::Parse, "cannot write " + path);
}

TargetRegion read_region(const std::string& path) {
    const Json j = parse_json(read_file(path));
    if (j.is_object() && j.contains("region")) return region_from_json(j["region"], "$.region");
    return region_from_json(j, "$");
}

struct SynthOptions {
    std::string region_path;
    std::string behavior = "copying";
    double alpha = 1.0;
    std::uint64_t seed = 0;
    std::optional<double> r_star;
    std::optional<std::size_t> nodes;
    std::size_t max_iters = kDefaultMaxIterations;
};

void add_synth_options(CLI::App& cmd, SynthOptions& o) {
    cmd.add_option("--region", o.region_path, "Target region JSON ({kind, vertices})")->required();
    cmd.add_option("--behavior", o.behavior, "sampling | copying | cloning")
        ->check(CLI::IsMember({"sampling", "copying", "cloning"}));
    cmd.add_option("--alpha", o.alpha, "Correction amount in [0, 1]")->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--seed", o.seed, "Random seed");
    cmd.add_option("--r-star", o.r_star, "Lloyd stopping ratio (default: reference ratio)");
    cmd.add_option("--nodes", o.nodes, "Override the node count");
    cmd.add_option("--max-iters", o.max_iters, "Lloyd iteration cap")->check(CLI::PositiveNumber);
}

SynthesisRequest make_request(const SynthOptions& o) {
    SynthesisRequest r;
    r.region = read_region(o.region_path);
    r.behavior = *behavior_from_string(o.behavior);
    r.alpha = o.alpha;
    r.seed = o.seed;
    r.r_star = o.r_star;
    r.node_count = o.nodes;
    r.max_iters = o.max_iters;
    return r;
}

const PatternAnalysis& require_analysis(const PatternDocument& doc) {
    if (!doc.analysis) throw Error(ErrorCode::Precondition, "document has no analysis");
    return *doc.analysis;
}

struct RenderOptions {
    std::string background;
    std::vector<double> bg_origin;
    double pixel_size = 1.0;
    std::string map;
    bool embed = false;
};

void add_render_options(CLI::App& cmd, RenderOptions& o) {
    cmd.add_option("--background", o.background, "PNG background driving the attribute map");
    cmd.add_option("--bg-origin", o.bg_origin, "Background top-left corner")->expected(2);
    cmd.add_option("--pixel-size", o.pixel_size, "Background pixel size in drawing units")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--map", o.map, "Attribute map JSON");
    cmd.add_flag("--embed-background", o.embed, "Embed the background image in the SVG");
}

std::string render(const SynthesizedPattern& pattern, const RenderOptions& o) {
    SvgOptions svg;
    if (o.background.empty()) {
        if (!o.map.empty()) throw Error(ErrorCode::Precondition, "--map needs --background");
        return export_svg(pattern, svg);
    }
    const std::string png = read_file(o.background);
    Raster bg = decode_png(png);
    if (o.bg_origin.size() == 2) bg.origin = {o.bg_origin[0], o.bg_origin[1]};
    bg.pixel_size = o.pixel_size;
    const AttributeMap map = o.map.empty() ? AttributeMap{} : attribute_map_from_json(parse_json(read_file(o.map)), "$");
    if (o.embed) svg.background = SvgBackground{png, bg.origin, bg.width * bg.pixel_size, bg.height * bg.pixel_size};
    return export_svg(modulate_attributes(pattern, bg, map), svg);
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Example-based stroke pattern analysis and synthesis", "strokesyn"};
    app.require_subcommand(1);

    std::string in_path, out_path;

    auto* analyze_cmd = app.add_subcommand("analyze", "Cluster strokes into elements and measure the pattern");
    std::optional<double> epsilon;
    std::string type, frame;
    std::vector<double> axis;
    analyze_cmd->add_option("--in", in_path, "Pattern document")->required();
    analyze_cmd->add_option("--out", out_path, "Output document (default: overwrite --in)");
    analyze_cmd->add_option("--epsilon", epsilon, "Element scale in drawing units")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--type", type, "hatching | stippling")->check(CLI::IsMember({"hatching", "stippling"}));
    analyze_cmd->add_option("--frame", frame, "1d | 2d")->check(CLI::IsMember({"1d", "2d"}));
    analyze_cmd->add_option("--axis", axis, "1D main axis: x0 y0 x1 y1 (default: fitted)")->expected(4);

    auto* synth_cmd = app.add_subcommand("synth", "Synthesize a pattern into a region and append it");
    SynthOptions synth;
    std::string svg_path;
    synth_cmd->add_option("--in", in_path, "Analyzed pattern document")->required();
    synth_cmd->add_option("--out", out_path, "Output document (default: overwrite --in)");
    synth_cmd->add_option("--svg", svg_path, "Also write the pattern as SVG");
    add_synth_options(*synth_cmd, synth);

    auto* render_cmd = app.add_subcommand("render", "Render a synthesized pattern (or the reference) as SVG");
    int pattern_index = -1;
    bool reference = false;
    RenderOptions render_opts;
    render_cmd->add_option("--in", in_path, "Pattern document")->required();
    render_cmd->add_option("--out", out_path, "SVG file (default: standard output)");
    render_cmd->add_option("--pattern", pattern_index, "Pattern index (default: last)");
    render_cmd->add_flag("--reference", reference, "Render the reference strokes");
    add_render_options(*render_cmd, render_opts);

    auto* lod_cmd = app.add_subcommand("lod", "Synthesize at several region scales, one SVG per scale");
    SynthOptions lod;
    std::vector<double> scales;
    std::string prefix = "lod";
    bool scale_extents = false;
    lod_cmd->add_option("--in", in_path, "Analyzed pattern document")->required();
    add_synth_options(*lod_cmd, lod);
    lod_cmd->add_option("--scales", scales, "Comma-separated scale factors")->required()->delimiter(',');
    lod_cmd->add_option("--out-prefix", prefix, "Output files are <prefix>-<i>.svg");
    lod_cmd->add_flag("--scale-extents", scale_extents, "Scale element extents with the region");

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP studio service");
    std::string bind;
    serve_cmd->add_option("--bind", bind, std::string("host:port (default: $") + kBindEnv + " or 127.0.0.1:8080)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze_cmd->parsed()) {
            PatternDocument doc = load_document(read_file(in_path));
            AnalysisParams p = doc.params;
            if (epsilon) p.epsilon = *epsilon;
            if (!type.empty()) p.pattern_type = type == "hatching" ? PatternType::Hatching : PatternType::Stippling;
            if (frame == "2d") p.frame = ReferenceFrame::two_d(p.frame.kind == FrameKind::TwoD ? p.frame.region : Polygon{});
            if (frame == "1d" && p.frame.kind != FrameKind::OneD) p.frame = ReferenceFrame::one_d({}, {1.0, 0.0}, 0.0);
            if (axis.size() == 4) {
                const Vec2 a{axis[0], axis[1]}, b{axis[2], axis[3]};
                if (!(distance(a, b) > 0.0)) throw Error(ErrorCode::InvalidGeometry, "--axis has zero length");
                p.frame = ReferenceFrame::one_d(a, b - a, distance(a, b));
            }
            p = resolve_frame(p, doc.strokes);
            doc.params = p;
            doc.analysis = analyze(doc.strokes, p);
            write_file(out_path.empty() ? in_path : out_path, save_document(doc));
            err << "analysis: " << doc.analysis->elements.size() << " elements, " << doc.analysis->n_ref
                << " valid, " << doc.analysis->graph.edges.size() << " pairs\n";
            return kExitOk;
        }
        if (synth_cmd->parsed()) {
            PatternDocument doc = load_document(read_file(in_path));
            const PatternAnalysis& analysis = require_analysis(doc);
            SynthesizedPattern pattern = synthesize(analysis, make_request(synth));
            for (const auto& w : pattern.provenance.warnings) err << "warning: " << w << "\n";
            if (!svg_path.empty()) write_file(svg_path, export_svg(pattern));
            doc.patterns.push_back(std::move(pattern));
            write_file(out_path.empty() ? in_path : out_path, save_document(doc));
            return kExitOk;
        }
        if (render_cmd->parsed()) {
            const PatternDocument doc = load_document(read_file(in_path));
            std::string svg;
            if (reference || doc.patterns.empty()) {
                if (doc.strokes.empty()) throw Error(ErrorCode::Precondition, "document has no strokes");
                if (!render_opts.background.empty()) throw Error(ErrorCode::Precondition, "--background needs a pattern");
                svg = export_svg(doc.strokes);
            } else {
                const long n = static_cast<long>(doc.patterns.size());
                const long k = pattern_index < 0 ? n + pattern_index : pattern_index;
                if (k < 0 || k >= n) throw Error(ErrorCode::Precondition, "pattern index out of range");
                svg = render(doc.patterns[static_cast<std::size_t>(k)], render_opts);
            }
            if (out_path.empty()) out << svg;
            else write_file(out_path, svg);
            return kExitOk;
        }
        if (lod_cmd->parsed()) {
            const PatternDocument doc = load_document(read_file(in_path));
            const PatternAnalysis& analysis = require_analysis(doc);
            const SynthesisRequest request = make_request(lod);
            const auto patterns = synthesize_lod(analysis, request.region, scales, request, {scale_extents});
            for (std::size_t i = 0; i < patterns.size(); ++i) {
                const std::string path = prefix + "-" + std::to_string(i) + ".svg";
                write_file(path, export_svg(patterns[i]));
                out << path << " " << patterns[i].elements.size() << "\n";
            }
            return kExitOk;
        }
        if (serve_cmd->parsed()) {
            const auto [host, port] = parse_bind_address(bind.empty() ? std::getenv(kBindEnv) : bind.c_str());
            StudioService service;
            HttpServer server(service);
            const int bound = server.bind(host, port);
            if (bound < 0) throw Error(ErrorCode::Precondition, "cannot bind " + host + ":" + std::to_string(port));
            err << "listening on " << host << ":" << bound << "\n";
            return server.run() ? kExitOk : kExitData;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace strokesyn
