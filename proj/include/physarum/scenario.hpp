#pragma once

// Scenario: the complete description of one experiment — arena, agent and
// field parameters, population rules, stimulus nodes, environment masks,
// initial placement, timed events, and output knobs. Scenarios load from a
// JSON document; unknown keys are rejected so typos fail loudly, and every
// default is filled in at load time so the effective configuration can be
// echoed back verbatim (scenario_effective.json).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "physarum/errors.hpp"
#include "physarum/exposure.hpp"
#include "physarum/image_io.hpp"
#include "physarum/particle.hpp"
#include "physarum/population.hpp"
#include "physarum/stimulus.hpp"
#include "physarum/trail_field.hpp"

namespace physarum {

// ---------------------------------------------------------------- regions

// A paintable region primitive. Entries are applied in order onto a mask;
// carve=true clears instead of setting, so "everything except channels" is
// expressible as one full-arena rect followed by carved rects.
struct RegionShape {
    enum class Kind { rect, disc, ring };
    Kind kind = Kind::rect;
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0; // rect, inclusive cell bounds
    double cx = 0, cy = 0;                 // disc / ring center
    double radius = 0;                     // disc
    double r_inner = 0, r_outer = 0;       // ring
    bool carve = false;

    bool contains(int x, int y) const {
        switch (kind) {
        case Kind::rect:
            return x >= x0 && x <= x1 && y >= y0 && y <= y1;
        case Kind::disc: {
            const double dx = x - cx, dy = y - cy;
            return dx * dx + dy * dy <= radius * radius;
        }
        case Kind::ring: {
            const double dx = x - cx, dy = y - cy;
            const double d2 = dx * dx + dy * dy;
            return d2 >= r_inner * r_inner && d2 <= r_outer * r_outer;
        }
        }
        return false;
    }
};

inline void paint_regions(BinaryMask& mask, const std::vector<RegionShape>& regions) {
    for (const RegionShape& r : regions) {
        for (int y = 0; y < mask.height(); ++y)
            for (int x = 0; x < mask.width(); ++x)
                if (r.contains(x, y)) mask.at(x, y) = r.carve ? 0 : 1;
    }
}

// ----------------------------------------------------------------- pieces

enum class InitShape {
    random_scatter,
    filled_disc,
    ring_band,
    at_nodes,
    region_from_image,
    single_node,
};

struct InitSpec {
    InitShape shape = InitShape::random_scatter;
    int count = 0;     // random_scatter: required; region shapes: 0 = fill region
    double cx = 0, cy = 0;
    double radius = 0;           // filled_disc
    double r_inner = 0, r_outer = 0; // ring_band
    int per_node = 0;            // at_nodes
    std::string node_id;         // single_node
    std::string image_path;      // region_from_image
};

struct NodeSpec {
    std::string id;
    double x = 0, y = 0;
    FootprintShape shape = FootprintShape::disc;
    double radius = 3.0;       // disc radius or half side for squares
    double intensity = 255.0;  // pixel-intensity units; sign sets polarity
    bool consumable = false;
    EmitMode emit = EmitMode::always;
    bool suppress_on_engulf = true;
};

struct RandomNodesSpec {
    bool present = false;
    int count = 0;
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    double min_dist = 0;
    NodeSpec tmpl; // id used as prefix; x/y ignored
};

struct SubstrateSpec {
    enum class Kind { none, disc, rect, image };
    Kind kind = Kind::none;
    double cx = 0, cy = 0, radius = 0;
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    double c_bg = 0.0;          // per-tick projected concentration per cell
    std::string image_path;    // PGM; intensity * k_bg = c_bg per cell
    double k_bg = 0.0;
};

struct EventSpec {
    enum class Action {
        add_node,
        remove_node,
        set_concentration,
        set_light_region,
        set_repellent_region,
        set_population_bias,
    };
    int step = 1;
    Action action = Action::remove_node;
    std::string id;                    // remove_node / set_concentration
    double intensity = 0;              // set_concentration
    NodeSpec node;                     // add_node
    std::vector<RegionShape> regions;  // set_*_region
    bool clear_regions = false;        // set_*_region: wipe mask first
    nlohmann::json population;         // set_population_bias patch (merged)
};

struct MetricsSpec {
    int interval = 1;
    double coverage_threshold = 1.0;
};

struct RenderSpec {
    double trail_clamp = 5.0; // |trail| mapped onto full 8-bit range
};

struct Scenario {
    std::string name = "scenario";
    int width = 0, height = 0;
    Boundary boundary = Boundary::periodic;
    int steps = 1000;
    std::uint64_t seed = 42;

    SensorProfile sensors{};
    DiffusionParams diffusion{};
    ExposureWeights exposure{};
    PopulationParams population{};
    ProjectionParams projection{};

    InitSpec init{};
    std::vector<NodeSpec> nodes;
    RandomNodesSpec random_nodes{};
    SubstrateSpec substrate{};

    std::vector<RegionShape> obstacle_regions, light_regions, repellent_regions;
    std::string obstacle_image, light_image, repellent_image;

    std::vector<EventSpec> events;
    MetricsSpec metrics{};
    RenderSpec render{};
    bool respawn_on_node_touch = false;

    // Directory scenario-relative paths (mask images) resolve against.
    std::string base_dir = ".";
};

// ------------------------------------------------------------ json helpers

namespace detail {

using njson = nlohmann::json;

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
    throw ValidationError("scenario: " + where + ": " + what);
}

inline void expect_keys(const njson& j, const std::string& where,
                        std::initializer_list<const char*> allowed) {
    if (!j.is_object()) bad(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) bad(where, "unknown key '" + it.key() + "'");
    }
}

inline double get_num(const njson& j, const std::string& where, const char* key,
                      double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) bad(where, std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

inline double require_num(const njson& j, const std::string& where, const char* key) {
    if (!j.contains(key)) bad(where, std::string("missing required key '") + key + "'");
    if (!j.at(key).is_number()) bad(where, std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

inline int get_int(const njson& j, const std::string& where, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer())
        bad(where, std::string("'") + key + "' must be an integer");
    return j.at(key).get<int>();
}

inline int require_int(const njson& j, const std::string& where, const char* key) {
    if (!j.contains(key)) bad(where, std::string("missing required key '") + key + "'");
    if (!j.at(key).is_number_integer())
        bad(where, std::string("'") + key + "' must be an integer");
    return j.at(key).get<int>();
}

inline bool get_bool(const njson& j, const std::string& where, const char* key,
                     bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) bad(where, std::string("'") + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

inline std::string get_str(const njson& j, const std::string& where, const char* key,
                           const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) bad(where, std::string("'") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

inline std::string require_str(const njson& j, const std::string& where, const char* key) {
    if (!j.contains(key)) bad(where, std::string("missing required key '") + key + "'");
    if (!j.at(key).is_string()) bad(where, std::string("'") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

inline void check_id(const std::string& id, const std::string& where) {
    if (id.empty()) bad(where, "node id must be non-empty");
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '-';
        if (!ok) bad(where, "node id '" + id + "' may use only [A-Za-z0-9_-]");
    }
}

inline RegionShape parse_region(const njson& j, const std::string& where) {
    expect_keys(j, where,
                {"shape", "x0", "y0", "x1", "y1", "cx", "cy", "radius", "r_inner",
                 "r_outer", "carve"});
    RegionShape r;
    const std::string shape = require_str(j, where, "shape");
    if (shape == "rect") {
        r.kind = RegionShape::Kind::rect;
        r.x0 = require_num(j, where, "x0");
        r.y0 = require_num(j, where, "y0");
        r.x1 = require_num(j, where, "x1");
        r.y1 = require_num(j, where, "y1");
        if (r.x1 < r.x0 || r.y1 < r.y0) bad(where, "rect must have x1 >= x0 and y1 >= y0");
    } else if (shape == "disc") {
        r.kind = RegionShape::Kind::disc;
        r.cx = require_num(j, where, "cx");
        r.cy = require_num(j, where, "cy");
        r.radius = require_num(j, where, "radius");
        if (r.radius < 0) bad(where, "disc radius must be >= 0");
    } else if (shape == "ring") {
        r.kind = RegionShape::Kind::ring;
        r.cx = require_num(j, where, "cx");
        r.cy = require_num(j, where, "cy");
        r.r_inner = require_num(j, where, "r_inner");
        r.r_outer = require_num(j, where, "r_outer");
        if (r.r_inner < 0 || r.r_outer < r.r_inner)
            bad(where, "ring needs 0 <= r_inner <= r_outer");
    } else {
        bad(where, "unknown region shape '" + shape + "'");
    }
    r.carve = get_bool(j, where, "carve", false);
    return r;
}

inline std::vector<RegionShape> parse_region_list(const njson& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of region shapes");
    std::vector<RegionShape> out;
    int i = 0;
    for (const njson& item : j)
        out.push_back(parse_region(item, where + "[" + std::to_string(i++) + "]"));
    return out;
}

inline NodeSpec parse_node(const njson& j, const std::string& where, bool require_position) {
    expect_keys(j, where,
                {"id", "x", "y", "shape", "radius", "intensity", "consumable", "emit",
                 "suppress_on_engulf"});
    NodeSpec n;
    if (require_position) {
        n.id = require_str(j, where, "id");
        check_id(n.id, where);
        n.x = require_num(j, where, "x");
        n.y = require_num(j, where, "y");
    } else {
        n.id = get_str(j, where, "id", "n");
        check_id(n.id, where);
        if (j.contains("x") || j.contains("y"))
            bad(where, "node template must not fix x/y");
    }
    const std::string shape = get_str(j, where, "shape", "disc");
    if (shape == "disc") n.shape = FootprintShape::disc;
    else if (shape == "square") n.shape = FootprintShape::square;
    else bad(where, "node shape must be 'disc' or 'square'");
    n.radius = get_num(j, where, "radius", 3.0);
    if (n.radius < 0) bad(where, "node radius must be >= 0");
    n.intensity = get_num(j, where, "intensity", 255.0);
    if (n.intensity == 0) bad(where, "node intensity must be nonzero");
    n.consumable = get_bool(j, where, "consumable", false);
    const std::string emit = get_str(j, where, "emit", "always");
    if (emit == "always") n.emit = EmitMode::always;
    else if (emit == "on_touch") n.emit = EmitMode::on_touch;
    else bad(where, "node emit must be 'always' or 'on_touch'");
    n.suppress_on_engulf = get_bool(j, where, "suppress_on_engulf", true);
    return n;
}

inline njson node_to_json(const NodeSpec& n, bool with_position) {
    njson j;
    j["id"] = n.id;
    if (with_position) {
        j["x"] = n.x;
        j["y"] = n.y;
    }
    j["shape"] = n.shape == FootprintShape::disc ? "disc" : "square";
    j["radius"] = n.radius;
    j["intensity"] = n.intensity;
    j["consumable"] = n.consumable;
    j["emit"] = n.emit == EmitMode::always ? "always" : "on_touch";
    j["suppress_on_engulf"] = n.suppress_on_engulf;
    return j;
}

inline njson region_to_json(const RegionShape& r) {
    njson j;
    switch (r.kind) {
    case RegionShape::Kind::rect:
        j["shape"] = "rect";
        j["x0"] = r.x0; j["y0"] = r.y0; j["x1"] = r.x1; j["y1"] = r.y1;
        break;
    case RegionShape::Kind::disc:
        j["shape"] = "disc";
        j["cx"] = r.cx; j["cy"] = r.cy; j["radius"] = r.radius;
        break;
    case RegionShape::Kind::ring:
        j["shape"] = "ring";
        j["cx"] = r.cx; j["cy"] = r.cy;
        j["r_inner"] = r.r_inner; j["r_outer"] = r.r_outer;
        break;
    }
    if (r.carve) j["carve"] = true;
    return j;
}

} // namespace detail

// ------------------------------------------------------------ load / echo

inline Scenario load_scenario_json(const nlohmann::json& j, const std::string& base_dir) {
    using namespace detail;
    Scenario sc;
    sc.base_dir = base_dir;

    expect_keys(j, "document",
                {"name", "arena", "steps", "seed", "sensors", "diffusion", "exposure",
                 "population", "projection", "init", "nodes", "random_nodes", "substrate",
                 "regions", "masks", "events", "metrics", "render", "flags"});

    sc.name = get_str(j, "document", "name", "scenario");

    if (!j.contains("arena")) bad("document", "missing required key 'arena'");
    {
        const njson& a = j.at("arena");
        expect_keys(a, "arena", {"width", "height", "boundary"});
        sc.width = require_int(a, "arena", "width");
        sc.height = require_int(a, "arena", "height");
        if (sc.width < 3 || sc.height < 3) bad("arena", "width and height must be >= 3");
        const std::string b = get_str(a, "arena", "boundary", "periodic");
        if (b == "periodic") sc.boundary = Boundary::periodic;
        else if (b == "walled") sc.boundary = Boundary::walled;
        else bad("arena", "boundary must be 'periodic' or 'walled'");
    }

    sc.steps = get_int(j, "document", "steps", 1000);
    if (sc.steps < 0) bad("document", "steps must be >= 0");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            bad("document", "'seed' must be an integer");
        sc.seed = j.at("seed").get<std::uint64_t>();
    }

    if (j.contains("sensors")) {
        const njson& s = j.at("sensors");
        expect_keys(s, "sensors", {"sa_deg", "ra_deg", "so_px", "step_px", "deposit"});
        sc.sensors.sa_deg = get_num(s, "sensors", "sa_deg", sc.sensors.sa_deg);
        sc.sensors.ra_deg = get_num(s, "sensors", "ra_deg", sc.sensors.ra_deg);
        sc.sensors.so_px = get_num(s, "sensors", "so_px", sc.sensors.so_px);
        sc.sensors.step_px = get_num(s, "sensors", "step_px", sc.sensors.step_px);
        sc.sensors.deposit = get_num(s, "sensors", "deposit", sc.sensors.deposit);
    }
    validate(sc.sensors);

    if (j.contains("diffusion")) {
        const njson& d = j.at("diffusion");
        expect_keys(d, "diffusion", {"decay"});
        sc.diffusion.decay = get_num(d, "diffusion", "decay", sc.diffusion.decay);
    }
    validate(sc.diffusion);

    if (j.contains("exposure")) {
        const njson& e = j.at("exposure");
        expect_keys(e, "exposure", {"light", "repellent"});
        sc.exposure.light = get_num(e, "exposure", "light", sc.exposure.light);
        sc.exposure.repellent = get_num(e, "exposure", "repellent", sc.exposure.repellent);
    }
    validate(sc.exposure);

    if (j.contains("population")) {
        const njson& p = j.at("population");
        expect_keys(p, "population", {"mode", "division", "survival"});
        if (p.contains("division")) {
            const njson& d = p.at("division");
            expect_keys(d, "population.division", {"gmin", "gmax", "interval", "p_div"});
            sc.population.division.gmin =
                get_int(d, "population.division", "gmin", sc.population.division.gmin);
            sc.population.division.gmax =
                get_int(d, "population.division", "gmax", sc.population.division.gmax);
            sc.population.division.interval =
                get_int(d, "population.division", "interval", sc.population.division.interval);
            sc.population.division.p_div =
                get_num(d, "population.division", "p_div", sc.population.division.p_div);
        }
        if (p.contains("survival")) {
            const njson& s = p.at("survival");
            expect_keys(s, "population.survival", {"survival_min", "interval", "p_die"});
            sc.population.survival.survival_min = get_int(
                s, "population.survival", "survival_min", sc.population.survival.survival_min);
            sc.population.survival.interval =
                get_int(s, "population.survival", "interval", sc.population.survival.interval);
            sc.population.survival.p_die =
                get_num(s, "population.survival", "p_die", sc.population.survival.p_die);
        }
        const std::string mode = get_str(p, "population", "mode", "adaptive");
        if (mode == "fixed") {
            sc.population.division.p_div = 0.0;
            sc.population.survival.survival_min = 0;
        } else if (mode != "adaptive") {
            bad("population", "mode must be 'fixed' or 'adaptive'");
        }
    }
    validate(sc.population);

    if (j.contains("projection")) {
        const njson& p = j.at("projection");
        expect_keys(p, "projection", {"k_proj", "k_eat", "r_scale", "t_c", "interval"});
        sc.projection.k_proj = get_num(p, "projection", "k_proj", sc.projection.k_proj);
        sc.projection.k_eat = get_num(p, "projection", "k_eat", sc.projection.k_eat);
        sc.projection.r_scale = get_num(p, "projection", "r_scale", sc.projection.r_scale);
        sc.projection.t_c = get_int(p, "projection", "t_c", sc.projection.t_c);
        sc.projection.interval = get_int(p, "projection", "interval", sc.projection.interval);
    }
    validate(sc.projection);

    if (!j.contains("init")) bad("document", "missing required key 'init'");
    {
        const njson& i = j.at("init");
        expect_keys(i, "init",
                    {"shape", "count", "cx", "cy", "radius", "r_inner", "r_outer",
                     "per_node", "node", "path"});
        const std::string shape = require_str(i, "init", "shape");
        InitSpec& in = sc.init;
        if (shape == "random_scatter") {
            in.shape = InitShape::random_scatter;
            in.count = require_int(i, "init", "count");
            if (in.count < 1) bad("init", "random_scatter needs count >= 1");
        } else if (shape == "filled_disc") {
            in.shape = InitShape::filled_disc;
            in.cx = require_num(i, "init", "cx");
            in.cy = require_num(i, "init", "cy");
            in.radius = require_num(i, "init", "radius");
            if (in.radius < 0) bad("init", "filled_disc radius must be >= 0");
            in.count = get_int(i, "init", "count", 0);
        } else if (shape == "ring_band") {
            in.shape = InitShape::ring_band;
            in.cx = require_num(i, "init", "cx");
            in.cy = require_num(i, "init", "cy");
            in.r_inner = require_num(i, "init", "r_inner");
            in.r_outer = require_num(i, "init", "r_outer");
            if (in.r_inner < 0 || in.r_outer < in.r_inner)
                bad("init", "ring_band needs 0 <= r_inner <= r_outer");
            in.count = get_int(i, "init", "count", 0);
        } else if (shape == "at_nodes") {
            in.shape = InitShape::at_nodes;
            in.per_node = require_int(i, "init", "per_node");
            if (in.per_node < 1) bad("init", "at_nodes needs per_node >= 1");
        } else if (shape == "region_from_image") {
            in.shape = InitShape::region_from_image;
            in.image_path = require_str(i, "init", "path");
            in.count = get_int(i, "init", "count", 0);
        } else if (shape == "single_node") {
            in.shape = InitShape::single_node;
            in.node_id = require_str(i, "init", "node");
            in.count = get_int(i, "init", "count", 40);
            if (in.count < 1) bad("init", "single_node needs count >= 1");
        } else {
            bad("init", "unknown init shape '" + shape + "'");
        }
        if (in.count < 0) bad("init", "count must be >= 0");
    }

    if (j.contains("nodes")) {
        if (!j.at("nodes").is_array()) bad("nodes", "expected an array");
        int i = 0;
        for (const njson& n : j.at("nodes")) {
            const std::string where = "nodes[" + std::to_string(i++) + "]";
            NodeSpec spec = parse_node(n, where, true);
            for (const NodeSpec& prev : sc.nodes)
                if (prev.id == spec.id) bad(where, "duplicate node id '" + spec.id + "'");
            if (spec.x < 0 || spec.x > sc.width - 1 || spec.y < 0 || spec.y > sc.height - 1)
                bad(where, "node center out of bounds");
            sc.nodes.push_back(std::move(spec));
        }
    }

    if (j.contains("random_nodes")) {
        const njson& r = j.at("random_nodes");
        expect_keys(r, "random_nodes",
                    {"count", "x_min", "x_max", "y_min", "y_max", "min_dist", "template"});
        RandomNodesSpec& rn = sc.random_nodes;
        rn.present = true;
        rn.count = require_int(r, "random_nodes", "count");
        if (rn.count < 1) bad("random_nodes", "count must be >= 1");
        rn.x_min = require_num(r, "random_nodes", "x_min");
        rn.x_max = require_num(r, "random_nodes", "x_max");
        rn.y_min = require_num(r, "random_nodes", "y_min");
        rn.y_max = require_num(r, "random_nodes", "y_max");
        if (rn.x_max < rn.x_min || rn.y_max < rn.y_min)
            bad("random_nodes", "needs x_max >= x_min and y_max >= y_min");
        if (rn.x_min < 0 || rn.y_min < 0 || rn.x_max > sc.width - 1 ||
            rn.y_max > sc.height - 1)
            bad("random_nodes", "region out of bounds");
        rn.min_dist = get_num(r, "random_nodes", "min_dist", 0.0);
        if (rn.min_dist < 0) bad("random_nodes", "min_dist must be >= 0");
        if (r.contains("template"))
            rn.tmpl = parse_node(r.at("template"), "random_nodes.template", false);
    }

    if (j.contains("substrate")) {
        const njson& s = j.at("substrate");
        expect_keys(s, "substrate",
                    {"shape", "cx", "cy", "radius", "x0", "y0", "x1", "y1", "c_bg", "path",
                     "k_bg"});
        SubstrateSpec& sub = sc.substrate;
        const std::string shape = require_str(s, "substrate", "shape");
        if (shape == "disc") {
            sub.kind = SubstrateSpec::Kind::disc;
            sub.cx = require_num(s, "substrate", "cx");
            sub.cy = require_num(s, "substrate", "cy");
            sub.radius = require_num(s, "substrate", "radius");
            sub.c_bg = require_num(s, "substrate", "c_bg");
        } else if (shape == "rect") {
            sub.kind = SubstrateSpec::Kind::rect;
            sub.x0 = require_num(s, "substrate", "x0");
            sub.y0 = require_num(s, "substrate", "y0");
            sub.x1 = require_num(s, "substrate", "x1");
            sub.y1 = require_num(s, "substrate", "y1");
            sub.c_bg = require_num(s, "substrate", "c_bg");
        } else if (shape == "image") {
            sub.kind = SubstrateSpec::Kind::image;
            sub.image_path = require_str(s, "substrate", "path");
            sub.k_bg = require_num(s, "substrate", "k_bg");
            if (sub.k_bg <= 0) bad("substrate", "k_bg must be > 0");
        } else {
            bad("substrate", "substrate shape must be 'disc', 'rect', or 'image'");
        }
        if (sub.kind != SubstrateSpec::Kind::image && sub.c_bg <= 0)
            bad("substrate", "c_bg must be > 0");
    }

    if (j.contains("regions")) {
        const njson& r = j.at("regions");
        expect_keys(r, "regions", {"obstacle", "light", "repellent"});
        if (r.contains("obstacle"))
            sc.obstacle_regions = parse_region_list(r.at("obstacle"), "regions.obstacle");
        if (r.contains("light"))
            sc.light_regions = parse_region_list(r.at("light"), "regions.light");
        if (r.contains("repellent"))
            sc.repellent_regions = parse_region_list(r.at("repellent"), "regions.repellent");
    }

    if (j.contains("masks")) {
        const njson& m = j.at("masks");
        expect_keys(m, "masks", {"obstacle", "light", "repellent"});
        sc.obstacle_image = get_str(m, "masks", "obstacle", "");
        sc.light_image = get_str(m, "masks", "light", "");
        sc.repellent_image = get_str(m, "masks", "repellent", "");
    }

    if (j.contains("events")) {
        if (!j.at("events").is_array()) bad("events", "expected an array");
        int i = 0;
        for (const njson& e : j.at("events")) {
            const std::string where = "events[" + std::to_string(i++) + "]";
            expect_keys(e, where,
                        {"step", "action", "id", "intensity", "node", "regions", "clear",
                         "population"});
            EventSpec ev;
            ev.step = require_int(e, where, "step");
            if (ev.step < 1) bad(where, "event step must be >= 1");
            const std::string action = require_str(e, where, "action");
            if (action == "add_node") {
                ev.action = EventSpec::Action::add_node;
                if (!e.contains("node")) bad(where, "add_node needs a 'node' object");
                ev.node = parse_node(e.at("node"), where + ".node", true);
            } else if (action == "remove_node") {
                ev.action = EventSpec::Action::remove_node;
                ev.id = require_str(e, where, "id");
            } else if (action == "set_concentration") {
                ev.action = EventSpec::Action::set_concentration;
                ev.id = require_str(e, where, "id");
                ev.intensity = require_num(e, where, "intensity");
                if (ev.intensity == 0) bad(where, "set_concentration intensity must be nonzero");
            } else if (action == "set_light_region" || action == "set_repellent_region") {
                ev.action = action == "set_light_region"
                                ? EventSpec::Action::set_light_region
                                : EventSpec::Action::set_repellent_region;
                if (!e.contains("regions")) bad(where, action + " needs 'regions'");
                ev.regions = parse_region_list(e.at("regions"), where + ".regions");
                ev.clear_regions = get_bool(e, where, "clear", false);
            } else if (action == "set_population_bias") {
                ev.action = EventSpec::Action::set_population_bias;
                if (!e.contains("population"))
                    bad(where, "set_population_bias needs 'population'");
                const njson& p = e.at("population");
                expect_keys(p, where + ".population", {"mode", "division", "survival"});
                if (p.contains("division"))
                    expect_keys(p.at("division"), where + ".population.division",
                                {"gmin", "gmax", "interval", "p_div"});
                if (p.contains("survival"))
                    expect_keys(p.at("survival"), where + ".population.survival",
                                {"survival_min", "interval", "p_die"});
                ev.population = p;
            } else {
                bad(where, "unknown event action '" + action + "'");
            }
            sc.events.push_back(std::move(ev));
        }
        std::stable_sort(sc.events.begin(), sc.events.end(),
                         [](const EventSpec& a, const EventSpec& b) { return a.step < b.step; });
    }

    if (j.contains("metrics")) {
        const njson& m = j.at("metrics");
        expect_keys(m, "metrics", {"interval", "coverage_threshold"});
        sc.metrics.interval = get_int(m, "metrics", "interval", 1);
        if (sc.metrics.interval < 1) bad("metrics", "interval must be >= 1");
        sc.metrics.coverage_threshold =
            get_num(m, "metrics", "coverage_threshold", sc.metrics.coverage_threshold);
        if (sc.metrics.coverage_threshold <= 0)
            bad("metrics", "coverage_threshold must be > 0");
    }

    if (j.contains("render")) {
        const njson& r = j.at("render");
        expect_keys(r, "render", {"trail_clamp"});
        sc.render.trail_clamp = get_num(r, "render", "trail_clamp", sc.render.trail_clamp);
        if (sc.render.trail_clamp <= 0) bad("render", "trail_clamp must be > 0");
    }

    if (j.contains("flags")) {
        const njson& f = j.at("flags");
        expect_keys(f, "flags", {"respawn_on_node_touch"});
        sc.respawn_on_node_touch = get_bool(f, "flags", "respawn_on_node_touch", false);
    }

    if (sc.init.shape == InitShape::single_node) {
        bool found = false;
        for (const NodeSpec& n : sc.nodes)
            if (n.id == sc.init.node_id) { found = true; break; }
        if (!found)
            bad("init", "single_node references unknown node '" + sc.init.node_id + "'");
    }
    if (sc.init.shape == InitShape::at_nodes && sc.nodes.empty() && !sc.random_nodes.present)
        bad("init", "at_nodes requires at least one node");

    return sc;
}

inline Scenario load_scenario_text(const std::string& text, const std::string& base_dir,
                                   const std::string& label = "scenario") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(label + ": JSON parse error: " + std::string(e.what()));
    }
    return load_scenario_json(j, base_dir);
}

inline Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string dir = ".";
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    Scenario sc = load_scenario_text(ss.str(), dir, path);
    if (sc.name == "scenario") {
        // Default the name to the file stem for friendlier output naming.
        std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
        const auto dot = stem.find_last_of('.');
        if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
        if (!stem.empty()) sc.name = stem;
    }
    return sc;
}

// Complete round-trippable echo of a loaded scenario, defaults included.
inline nlohmann::json scenario_to_json(const Scenario& sc) {
    using detail::njson;
    njson j;
    j["name"] = sc.name;
    j["arena"] = {{"width", sc.width},
                  {"height", sc.height},
                  {"boundary", sc.boundary == Boundary::periodic ? "periodic" : "walled"}};
    j["steps"] = sc.steps;
    j["seed"] = sc.seed;
    j["sensors"] = {{"sa_deg", sc.sensors.sa_deg},
                    {"ra_deg", sc.sensors.ra_deg},
                    {"so_px", sc.sensors.so_px},
                    {"step_px", sc.sensors.step_px},
                    {"deposit", sc.sensors.deposit}};
    j["diffusion"] = {{"decay", sc.diffusion.decay}};
    j["exposure"] = {{"light", sc.exposure.light}, {"repellent", sc.exposure.repellent}};
    const bool fixed_mode =
        sc.population.division.p_div == 0.0 && sc.population.survival.survival_min == 0;
    j["population"] = {
        {"mode", fixed_mode ? "fixed" : "adaptive"},
        {"division",
         {{"gmin", sc.population.division.gmin},
          {"gmax", sc.population.division.gmax},
          {"interval", sc.population.division.interval},
          {"p_div", sc.population.division.p_div}}},
        {"survival",
         {{"survival_min", sc.population.survival.survival_min},
          {"interval", sc.population.survival.interval},
          {"p_die", sc.population.survival.p_die}}}};
    j["projection"] = {{"k_proj", sc.projection.k_proj},
                       {"k_eat", sc.projection.k_eat},
                       {"r_scale", sc.projection.r_scale},
                       {"t_c", sc.projection.t_c},
                       {"interval", sc.projection.interval}};

    njson init;
    switch (sc.init.shape) {
    case InitShape::random_scatter:
        init = {{"shape", "random_scatter"}, {"count", sc.init.count}};
        break;
    case InitShape::filled_disc:
        init = {{"shape", "filled_disc"}, {"cx", sc.init.cx}, {"cy", sc.init.cy},
                {"radius", sc.init.radius}, {"count", sc.init.count}};
        break;
    case InitShape::ring_band:
        init = {{"shape", "ring_band"}, {"cx", sc.init.cx}, {"cy", sc.init.cy},
                {"r_inner", sc.init.r_inner}, {"r_outer", sc.init.r_outer},
                {"count", sc.init.count}};
        break;
    case InitShape::at_nodes:
        init = {{"shape", "at_nodes"}, {"per_node", sc.init.per_node}};
        break;
    case InitShape::region_from_image:
        init = {{"shape", "region_from_image"}, {"path", sc.init.image_path},
                {"count", sc.init.count}};
        break;
    case InitShape::single_node:
        init = {{"shape", "single_node"}, {"node", sc.init.node_id},
                {"count", sc.init.count}};
        break;
    }
    j["init"] = init;

    j["nodes"] = njson::array();
    for (const NodeSpec& n : sc.nodes) j["nodes"].push_back(detail::node_to_json(n, true));

    if (sc.random_nodes.present) {
        j["random_nodes"] = {{"count", sc.random_nodes.count},
                             {"x_min", sc.random_nodes.x_min},
                             {"x_max", sc.random_nodes.x_max},
                             {"y_min", sc.random_nodes.y_min},
                             {"y_max", sc.random_nodes.y_max},
                             {"min_dist", sc.random_nodes.min_dist},
                             {"template", detail::node_to_json(sc.random_nodes.tmpl, false)}};
    }

    switch (sc.substrate.kind) {
    case SubstrateSpec::Kind::none:
        break;
    case SubstrateSpec::Kind::disc:
        j["substrate"] = {{"shape", "disc"}, {"cx", sc.substrate.cx},
                          {"cy", sc.substrate.cy}, {"radius", sc.substrate.radius},
                          {"c_bg", sc.substrate.c_bg}};
        break;
    case SubstrateSpec::Kind::rect:
        j["substrate"] = {{"shape", "rect"}, {"x0", sc.substrate.x0}, {"y0", sc.substrate.y0},
                          {"x1", sc.substrate.x1}, {"y1", sc.substrate.y1},
                          {"c_bg", sc.substrate.c_bg}};
        break;
    case SubstrateSpec::Kind::image:
        j["substrate"] = {{"shape", "image"}, {"path", sc.substrate.image_path},
                          {"k_bg", sc.substrate.k_bg}};
        break;
    }

    njson regions = njson::object();
    if (!sc.obstacle_regions.empty()) {
        regions["obstacle"] = njson::array();
        for (const RegionShape& r : sc.obstacle_regions)
            regions["obstacle"].push_back(detail::region_to_json(r));
    }
    if (!sc.light_regions.empty()) {
        regions["light"] = njson::array();
        for (const RegionShape& r : sc.light_regions)
            regions["light"].push_back(detail::region_to_json(r));
    }
    if (!sc.repellent_regions.empty()) {
        regions["repellent"] = njson::array();
        for (const RegionShape& r : sc.repellent_regions)
            regions["repellent"].push_back(detail::region_to_json(r));
    }
    if (!regions.empty()) j["regions"] = regions;

    njson masks = njson::object();
    if (!sc.obstacle_image.empty()) masks["obstacle"] = sc.obstacle_image;
    if (!sc.light_image.empty()) masks["light"] = sc.light_image;
    if (!sc.repellent_image.empty()) masks["repellent"] = sc.repellent_image;
    if (!masks.empty()) j["masks"] = masks;

    j["events"] = njson::array();
    for (const EventSpec& e : sc.events) {
        njson ev;
        ev["step"] = e.step;
        switch (e.action) {
        case EventSpec::Action::add_node:
            ev["action"] = "add_node";
            ev["node"] = detail::node_to_json(e.node, true);
            break;
        case EventSpec::Action::remove_node:
            ev["action"] = "remove_node";
            ev["id"] = e.id;
            break;
        case EventSpec::Action::set_concentration:
            ev["action"] = "set_concentration";
            ev["id"] = e.id;
            ev["intensity"] = e.intensity;
            break;
        case EventSpec::Action::set_light_region:
        case EventSpec::Action::set_repellent_region:
            ev["action"] = e.action == EventSpec::Action::set_light_region
                               ? "set_light_region"
                               : "set_repellent_region";
            ev["regions"] = njson::array();
            for (const RegionShape& r : e.regions)
                ev["regions"].push_back(detail::region_to_json(r));
            if (e.clear_regions) ev["clear"] = true;
            break;
        case EventSpec::Action::set_population_bias:
            ev["action"] = "set_population_bias";
            ev["population"] = e.population;
            break;
        }
        j["events"].push_back(ev);
    }

    j["metrics"] = {{"interval", sc.metrics.interval},
                    {"coverage_threshold", sc.metrics.coverage_threshold}};
    j["render"] = {{"trail_clamp", sc.render.trail_clamp}};
    j["flags"] = {{"respawn_on_node_touch", sc.respawn_on_node_touch}};
    return j;
}

} // namespace physarum
