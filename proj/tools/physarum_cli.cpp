// Command-line front end: run scenarios and presets, sweep sensor
// parameters, and analyze masks or point sets with the geometry tooling.
//
// Exit codes: 0 success, 1 validation/usage error, 2 I/O error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "physarum/analysis/hull.hpp"
#include "physarum/analysis/network.hpp"
#include "physarum/analysis/proximity.hpp"
#include "physarum/analysis/steiner.hpp"
#include "physarum/analysis/thinning.hpp"
#include "physarum/analysis/voronoi.hpp"
#include "physarum/errors.hpp"
#include "physarum/output.hpp"
#include "physarum/presets.hpp"
#include "physarum/render.hpp"
#include "physarum/scenario.hpp"
#include "physarum/world.hpp"

namespace {

using namespace physarum;

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> steps;
    int frames_every = 0;
    std::string out_dir;
};

std::uint64_t resolve_seed(const RunOptions& opt, const Scenario& sc) {
    if (opt.seed) return *opt.seed;
    if (const char* env = std::getenv("PHYS_SEED")) {
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(env, &pos);
            if (pos != std::string(env).size())
                throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw ValidationError(std::string("PHYS_SEED is not an integer: '") + env + "'");
        }
    }
    return sc.seed;
}

std::string frame_path(const std::string& dir, int step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%06d.ppm", step);
    return dir + "/" + buf;
}

int execute_run(Scenario sc, const RunOptions& opt) {
    sc.seed = resolve_seed(opt, sc);
    if (opt.steps) sc.steps = *opt.steps;
    if (sc.steps < 0) throw ValidationError("steps must be >= 0");
    const std::string out = opt.out_dir.empty() ? "out/" + sc.name : opt.out_dir;
    const std::uint64_t seed = sc.seed;
    ensure_dir(out);

    write_text_atomic(out + "/scenario_effective.json", scenario_to_json(sc).dump(2) + "\n");

    World world(std::move(sc), seed);

    MetricsCsvWriter csv;
    csv.open(out + "/metrics.csv", world);

    const std::string frames_dir = out + "/frames";
    if (opt.frames_every > 0) ensure_dir(frames_dir);

    RunSinks sinks;
    sinks.frames_every = opt.frames_every;
    if (opt.frames_every > 0)
        sinks.on_frame = [&](const World& w) {
            write_netpbm(render_frame(w), frame_path(frames_dir, w.step()));
        };
    sinks.on_metrics = [&](const World& w) { csv.write_row(w); };

    run_world(world, world.scenario().steps, sinks);

    csv.finalize();
    write_netpbm(render_frame(world), out + "/final.ppm");
    write_netpbm(render_trail(world.field(), world.scenario().render.trail_clamp),
                 out + "/trail.pgm");
    write_netpbm(render_occupancy(world.occupancy()), out + "/occupancy.pgm");
    write_text_atomic(out + "/summary.json", summary_json(world).dump(2) + "\n");

    std::cout << world.scenario().name << ": seed=" << world.seed()
              << " steps=" << world.step() << " population=" << world.particles().size()
              << " out=" << out << "\n";
    return 0;
}

std::vector<std::pair<std::string, double>> parse_value_list(const std::string& text,
                                                             const char* what) {
    std::vector<std::pair<std::string, double>> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        try {
            std::size_t pos = 0;
            const double v = std::stod(token, &pos);
            if (pos != token.size()) throw std::invalid_argument("trailing characters");
            out.emplace_back(token, v);
        } catch (const std::exception&) {
            throw ValidationError(std::string(what) + ": '" + token + "' is not a number");
        }
    }
    if (out.empty()) throw ValidationError(std::string(what) + " is empty");
    return out;
}

int execute_sweep(const std::string& sa_list, const std::string& ra_list, int steps,
                  const RunOptions& opt) {
    const auto sas = parse_value_list(sa_list, "--sa-list");
    const auto ras = parse_value_list(ra_list, "--ra-list");
    if (steps < 1) throw ValidationError("sweep needs --steps >= 1");
    const std::string out = opt.out_dir.empty() ? "out/sweep" : opt.out_dir;
    ensure_dir(out);
    std::ostringstream index;
    index << "sa,ra,population,coverage,occupied\n" << std::fixed << std::setprecision(6);
    for (const auto& [sa_label, sa] : sas) {
        for (const auto& [ra_label, ra] : ras) {
            Scenario sc = preset_scenario("fig2");
            sc.name = "sa" + sa_label + "_ra" + ra_label;
            sc.sensors.sa_deg = sa;
            sc.sensors.ra_deg = ra;
            validate(sc.sensors);
            sc.steps = steps;
            sc.seed = resolve_seed(opt, sc);
            const std::uint64_t seed = sc.seed;
            const std::string dir = out + "/" + sc.name;
            ensure_dir(dir);
            World world(std::move(sc), seed);
            RunSinks sinks;
            run_world(world, world.scenario().steps, sinks);
            write_netpbm(render_trail(world.field(), world.scenario().render.trail_clamp),
                         dir + "/trail.pgm");
            write_netpbm(render_frame(world), dir + "/final.ppm");
            index << sa_label << ',' << ra_label << ',' << world.last_metrics().population
                  << ',' << world.last_metrics().coverage << ','
                  << world.last_metrics().occupied << '\n';
            std::cout << "sweep " << world.scenario().name << " done\n";
        }
    }
    write_text_atomic(out + "/sweep.csv", index.str());
    return 0;
}

BinaryMask load_threshold_mask(const std::string& path, int threshold) {
    const Image8 img = read_pgm(path);
    BinaryMask m(img.width, img.height, 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = img.pixels[i] > threshold ? 1 : 0;
    return m;
}

PointSet load_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open points file '" + path + "'");
    return parse_points(in);
}

void print_hull(const PointSet& pts) {
    const PointSet hull = convex_hull(pts);
    std::cout << "hull_points " << hull.size() << "\n";
    for (const Vec2& p : hull) std::cout << p.x << " " << p.y << "\n";
    std::cout << "hull_area " << polygon_area(hull) << "\n";
}

void print_edges(const PointSet& pts, const std::vector<WeightedEdge>& edges) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        std::cout << "v " << pts[i].x << " " << pts[i].y << " point\n";
    for (const WeightedEdge& e : edges)
        std::cout << "e " << e.a << " " << e.b << " " << e.length << "\n";
    std::cout << "total_length " << total_length(edges) << "\n";
}

int execute_analyze(const std::string& image, const std::string& mode, int threshold,
                    const std::string& anchors_path, int dilate_px, int prune_px,
                    double r_snap, double tol, double exclude) {
    if (mode == "graph") {
        ExtractParams params;
        params.dilate_px = dilate_px;
        params.prune_px = prune_px;
        params.r_snap = r_snap;
        if (!anchors_path.empty()) params.anchors = load_points_file(anchors_path);
        const BinaryMask mask = load_threshold_mask(image, threshold);
        const NetworkGraph graph = extract_network(mask, params).graph;
        write_graph(graph, std::cout);
        const GraphMetrics gm = graph_metrics(graph);
        std::cerr << "vertices=" << gm.vertices << " edges=" << gm.edges
                  << " components=" << gm.components << " cycles=" << gm.cycles
                  << " total_length=" << gm.total_length << "\n";
        return 0;
    }
    if (mode == "hull") {
        const BinaryMask mask = load_threshold_mask(image, threshold);
        PointSet pts;
        for (int y = 0; y < mask.height(); ++y)
            for (int x = 0; x < mask.width(); ++x)
                if (mask.at(x, y)) pts.push_back({double(x), double(y)});
        if (pts.empty()) throw ValidationError("no foreground pixels above threshold");
        print_hull(pts);
        return 0;
    }
    if (mode == "voronoi-coverage") {
        if (anchors_path.empty())
            throw ValidationError("voronoi-coverage requires --anchors (the site list)");
        const PointSet sites = load_points_file(anchors_path);
        const BinaryMask mask = load_threshold_mask(image, threshold);
        const BinaryMask skeleton = thin(mask);
        const VoronoiRaster oracle = voronoi_raster(sites, mask.width(), mask.height());
        const double cov = bisector_coverage(skeleton, oracle.bisectors, sites, exclude, tol);
        std::cout << "bisector_coverage " << cov << "\n";
        return 0;
    }
    throw ValidationError("unknown analyze mode '" + mode + "'");
}

int execute_oracle(const std::string& mode, const std::string& points_path, int width,
                   int height) {
    const PointSet pts = load_points_file(points_path);
    if (mode == "hull") {
        print_hull(pts);
        return 0;
    }
    if (mode == "mst") {
        print_edges(pts, mst_edges(pts));
        return 0;
    }
    if (mode == "rng") {
        print_edges(pts, rng_edges(pts));
        return 0;
    }
    if (mode == "gabriel") {
        print_edges(pts, gabriel_edges(pts));
        return 0;
    }
    if (mode == "voronoi") {
        if (width < 1 || height < 1)
            throw ValidationError("voronoi oracle requires --width and --height");
        const VoronoiRaster vr = voronoi_raster(pts, width, height);
        std::cout << "P2\n" << width << " " << height << "\n255\n";
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x)
                std::cout << (vr.bisectors.at(x, y) ? 255 : 0)
                          << (x + 1 == width ? '\n' : ' ');
        }
        return 0;
    }
    if (mode == "steiner3") {
        if (pts.size() != 3)
            throw ValidationError("steiner3 needs exactly 3 points, got " +
                                  std::to_string(pts.size()));
        const SteinerResult res = steiner_point_3(pts[0], pts[1], pts[2]);
        if (res.has_point)
            std::cout << "steiner_point " << res.point.x << " " << res.point.y << "\n";
        else
            std::cout << "no Steiner point\n";
        std::cout << "total_length " << res.total_length << "\n";
        return 0;
    }
    throw ValidationError("unknown oracle mode '" + mode + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"physarum: multi-agent transport-network simulator"};
    app.require_subcommand(1);

    // --- run ---
    auto* run = app.add_subcommand("run", "run a scenario file");
    std::string scenario_path;
    RunOptions run_opt;
    std::uint64_t seed_arg = 0;
    int steps_arg = 0;
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    auto* run_seed = run->add_option("--seed", seed_arg, "RNG seed (overrides PHYS_SEED)");
    auto* run_steps = run->add_option("--steps", steps_arg, "override step count");
    run->add_option("--frames-every", run_opt.frames_every,
                    "write a colour frame every N steps (0 = none)");
    run->add_option("--out", run_opt.out_dir, "output directory (default out/<name>)");

    // --- preset ---
    auto* preset = app.add_subcommand("preset", "run a built-in preset");
    std::string preset_name;
    bool preset_list = false, preset_print = false;
    RunOptions preset_opt;
    std::uint64_t pseed_arg = 0;
    int psteps_arg = 0;
    preset->add_option("name", preset_name, "preset id (see --list)");
    preset->add_flag("--list", preset_list, "list preset ids and exit");
    preset->add_flag("--print", preset_print, "print the preset scenario JSON and exit");
    auto* preset_seed =
        preset->add_option("--seed", pseed_arg, "RNG seed (overrides PHYS_SEED)");
    auto* preset_steps = preset->add_option("--steps", psteps_arg, "override step count");
    preset->add_option("--frames-every", preset_opt.frames_every,
                       "write a colour frame every N steps (0 = none)");
    preset->add_option("--out", preset_opt.out_dir, "output directory (default out/<name>)");

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "sensor-angle sweep over the base arena");
    std::string sa_list, ra_list;
    int sweep_steps = 2000;
    RunOptions sweep_opt;
    std::uint64_t sweep_seed_arg = 0;
    sweep->add_option("--sa-list", sa_list, "comma-separated sensor angles (deg)")
        ->required();
    sweep->add_option("--ra-list", ra_list, "comma-separated rotation angles (deg)")
        ->required();
    sweep->add_option("--steps", sweep_steps, "steps per combination");
    auto* sweep_seed =
        sweep->add_option("--seed", sweep_seed_arg, "RNG seed (overrides PHYS_SEED)");
    sweep->add_option("--out", sweep_opt.out_dir, "output directory (default out/sweep)");

    // --- analyze ---
    auto* analyze = app.add_subcommand("analyze", "analyze a PGM image");
    std::string an_image, an_mode, an_anchors;
    int an_threshold = 128, an_dilate = 0, an_prune = 0;
    double an_rsnap = 6.0, an_tol = 5.0, an_exclude = 10.0;
    analyze->add_option("image", an_image, "PGM image to analyze")->required();
    analyze->add_option("--mode", an_mode, "graph | hull | voronoi-coverage")->required();
    analyze->add_option("--anchors", an_anchors, "points file (anchors / voronoi sites)");
    analyze->add_option("--threshold", an_threshold, "foreground = pixel > threshold");
    analyze->add_option("--dilate", an_dilate, "dilation passes before thinning");
    analyze->add_option("--prune", an_prune, "prune skeleton spurs shorter than N px");
    analyze->add_option("--r-snap", an_rsnap, "anchor snap radius in px");
    analyze->add_option("--tol", an_tol, "voronoi-coverage: distance tolerance in px");
    analyze->add_option("--exclude", an_exclude,
                        "voronoi-coverage: ignore bisector pixels within this radius of a site");

    // --- oracle ---
    auto* oracle = app.add_subcommand("oracle", "exact geometry oracles over a point set");
    std::string or_mode, or_points;
    int or_width = 0, or_height = 0;
    oracle->add_option("--mode", or_mode, "hull | mst | rng | gabriel | voronoi | steiner3")
        ->required();
    oracle->add_option("--points", or_points, "points file (x y per line)")->required();
    oracle->add_option("--width", or_width, "voronoi: raster width");
    oracle->add_option("--height", or_height, "voronoi: raster height");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            if (*run_seed) run_opt.seed = seed_arg;
            if (*run_steps) run_opt.steps = steps_arg;
            return execute_run(load_scenario_file(scenario_path), run_opt);
        }
        if (preset->parsed()) {
            if (preset_list) {
                for (const std::string& name : preset_names()) std::cout << name << "\n";
                return 0;
            }
            if (preset_name.empty())
                throw ValidationError("preset: give a preset id or --list");
            if (preset_print) {
                std::cout << preset_json(preset_name).dump(2) << "\n";
                return 0;
            }
            if (*preset_seed) preset_opt.seed = pseed_arg;
            if (*preset_steps) preset_opt.steps = psteps_arg;
            return execute_run(preset_scenario(preset_name), preset_opt);
        }
        if (sweep->parsed()) {
            if (*sweep_seed) sweep_opt.seed = sweep_seed_arg;
            return execute_sweep(sa_list, ra_list, sweep_steps, sweep_opt);
        }
        if (analyze->parsed())
            return execute_analyze(an_image, an_mode, an_threshold, an_anchors, an_dilate,
                                   an_prune, an_rsnap, an_tol, an_exclude);
        if (oracle->parsed()) return execute_oracle(or_mode, or_points, or_width, or_height);
        throw ValidationError("no subcommand given");
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
