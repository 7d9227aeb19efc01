#pragma once

// Built-in experiment presets. Each preset is a complete scenario document
// (same schema as scenario files); `preset_json` returns the document and
// `preset_scenario` the loaded form. Preset ids are part of the CLI
// contract — `physarum preset --list` prints them in catalog order.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "physarum/errors.hpp"
#include "physarum/geometry.hpp"
#include "physarum/scenario.hpp"

namespace physarum {
namespace preset_detail {

using njson = nlohmann::json;

inline njson sensors(double sa, double ra, double so = 9.0) {
    return {{"sa_deg", sa}, {"ra_deg", ra}, {"so_px", so}};
}

inline njson fixed_population() { return {{"mode", "fixed"}}; }

// Slow division, starvation pressure: a dense blob under these rules sheds
// unsupported mass and contracts onto reinforced trails.
inline njson shrink_bias() {
    return {{"mode", "adaptive"},
            {"division", {{"p_div", 0.02}}},
            {"survival", {{"survival_min", 2}, {"p_die", 0.05}}}};
}

inline njson node(const std::string& id, double x, double y, double radius,
                  double intensity) {
    return {{"id", id}, {"x", x}, {"y", y}, {"radius", radius}, {"intensity", intensity}};
}

inline njson consumable_node(const std::string& id, double x, double y, double radius,
                             double intensity) {
    njson n = node(id, x, y, radius, intensity);
    n["consumable"] = true;
    return n;
}

inline njson scatter_arena(const std::string& name, int size, const std::string& boundary,
                           int count, int steps) {
    return {{"name", name},
            {"arena", {{"width", size}, {"height", size}, {"boundary", boundary}}},
            {"steps", steps},
            {"population", fixed_population()},
            {"init", {{"shape", "random_scatter"}, {"count", count}}}};
}

// --------------------------------------------------------------- families

inline njson fig2() { return scatter_arena("fig2", 200, "periodic", 6000, 2000); }

inline njson fig5(const std::string& name, double sa, double ra) {
    njson j = scatter_arena(name, 200, "periodic", 6000, 10000);
    j["sensors"] = sensors(sa, ra);
    return j;
}

inline njson fig6(const std::string& name, double so) {
    njson j = scatter_arena(name, 200, "walled", 6000, 5000);
    j["sensors"] = sensors(60, 60, so);
    j["random_nodes"] = {{"count", 100},
                         {"x_min", 15}, {"x_max", 185},
                         {"y_min", 15}, {"y_max", 185},
                         {"min_dist", 10},
                         {"template", {{"id", "s"}, {"radius", 2.0}, {"intensity", 255}}}};
    return j;
}

inline njson fig7() {
    return {{"name", "fig7"},
            {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
            {"steps", 11000},
            {"sensors", sensors(60, 60)},
            {"population", shrink_bias()},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 107}, {"cy", 100}, {"radius", 75},
              {"count", 12000}}},
            {"nodes",
             {node("n0", 40, 120, 5, 255), node("n1", 85, 80, 5, 255),
              node("n2", 130, 120, 5, 255), node("n3", 175, 80, 5, 255)}},
            {"events", {{{"step", 6000}, {"action", "remove_node"}, {"id", "n2"}}}}};
}

inline njson light_bars() {
    njson bars = njson::array();
    for (const int x0 : {70, 95, 120})
        bars.push_back({{"shape", "rect"}, {"x0", x0}, {"y0", 60}, {"x1", x0 + 10},
                        {"y1", 140}});
    return bars;
}

inline njson fig8(const std::string& name, bool adaptive) {
    njson j = {{"name", name},
               {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
               {"sensors", sensors(60, 60)},
               {"nodes", {node("a0", 30, 100, 5, 255), node("a1", 170, 100, 5, 255)}},
               {"regions", {{"light", light_bars()}}}};
    if (adaptive) {
        j["steps"] = 8000;
        j["init"] = {{"shape", "at_nodes"}, {"per_node", 400}};
    } else {
        j["steps"] = 4000;
        j["population"] = fixed_population();
        j["init"] = {{"shape", "random_scatter"}, {"count", 6000}};
    }
    return j;
}

inline njson fig9() {
    njson square = {{"shape", "square"}, {"radius", 10.0}};
    auto sq = [&](const std::string& id, double x, double y, double intensity) {
        njson n = square;
        n["id"] = id;
        n["x"] = x;
        n["y"] = y;
        n["intensity"] = intensity;
        return n;
    };
    return {{"name", "fig9"},
            {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
            {"steps", 6000},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 100}, {"cy", 170}, {"radius", 15},
              {"count", 600}}},
            {"nodes",
             {sq("d0", 60, 60, 255), sq("d1", 140, 60, 255), sq("d2", 100, 110, 255),
              sq("r0", 60, 110, -255), sq("r1", 140, 110, -255)}}};
}

inline njson fig10() {
    return {{"name", "fig10"},
            {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
            {"steps", 9000},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 100}, {"cy", 50}, {"radius", 8},
              {"count", 150}}},
            {"nodes", {node("f0", 40, 50, 4, 255), node("f1", 100, 160, 4, 255)}},
            {"regions",
             {{"obstacle",
               {{{"shape", "rect"}, {"x0", 0}, {"y0", 0}, {"x1", 199}, {"y1", 199}},
                {{"shape", "rect"}, {"x0", 30}, {"y0", 40}, {"x1", 170}, {"y1", 60},
                 {"carve", true}},
                {{"shape", "rect"}, {"x0", 90}, {"y0", 40}, {"x1", 110}, {"y1", 170},
                 {"carve", true}}}}}}};
}

inline njson fig11() {
    return {{"name", "fig11"},
            {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
            {"steps", 15000},
            {"sensors", sensors(60, 60)},
            {"init", {{"shape", "single_node"}, {"node", "n0"}, {"count", 40}}},
            {"nodes",
             {node("n0", 100, 170, 4, 255), node("n1", 100, 130, 4, 255),
              node("n2", 60, 100, 4, 255), node("n3", 140, 95, 4, 255),
              node("n4", 80, 55, 4, 255), node("n5", 130, 40, 4, 255)}}};
}

inline njson fig12() {
    return {{"name", "fig12"},
            {"arena", {{"width", 280}, {"height", 280}, {"boundary", "walled"}}},
            {"steps", 15000},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 140}, {"cy", 140}, {"radius", 6},
              {"count", 80}}},
            {"nodes",
             {node("f50", 190, 140, 4, 255), node("f75", 140, 215, 4, 255),
              node("f100", 40, 140, 4, 255), node("f125", 140, 15, 4, 255)}}};
}

// Three nodes forming an angle theta at the middle node; a contracting blob
// settles on either the V of the two arms or a junction-bearing shortcut.
inline njson fig13(int theta_deg) {
    const double half = deg_to_rad(theta_deg / 2.0);
    const double ax = 100 + 60 * std::cos(half);
    const double ay = 100 - 60 * std::sin(half);
    const double by = 100 + 60 * std::sin(half);
    return {{"name", "fig13-" + std::to_string(theta_deg)},
            {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
            {"steps", 8000},
            {"sensors", sensors(60, 60)},
            {"population", shrink_bias()},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 120}, {"cy", 100}, {"radius", 72},
              {"count", 12000}}},
            {"nodes",
             {node("A", ax, ay, 4, 255), node("B", ax, by, 4, 255),
              node("C", 100, 100, 4, 255)}}};
}

inline njson fig14(const std::string& name, const std::vector<double>& intensities,
                   const std::vector<double>& radii) {
    const double cx[4] = {160, 100, 40, 100};
    const double cy[4] = {100, 160, 100, 40};
    njson nodes = njson::array();
    for (int i = 0; i < 4; ++i)
        nodes.push_back(
            consumable_node("n" + std::to_string(i), cx[i], cy[i], radii[i], intensities[i]));
    return {{"name", name},
            {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
            {"steps", 8000},
            {"projection", {{"r_scale", 2.0}}},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 100}, {"cy", 100}, {"radius", 10},
              {"count", 300}}},
            {"nodes", nodes},
            {"regions",
             {{"obstacle",
               {{{"shape", "rect"}, {"x0", 0}, {"y0", 0}, {"x1", 199}, {"y1", 199}},
                {{"shape", "disc"}, {"cx", 100}, {"cy", 100}, {"radius", 95},
                 {"carve", true}}}}}}};
}

inline njson fig15(const std::string& name, double left, double center, double right) {
    return {{"name", name},
            {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
            {"steps", 12000},
            {"projection", {{"r_scale", 2.0}}},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 100}, {"cy", 150}, {"radius", 12},
              {"count", 400}}},
            {"nodes",
             {consumable_node("L", 55, 75, 5, left),
              consumable_node("Cn", 100, 55, 5, center),
              consumable_node("R", 145, 75, 5, right)}}};
}

inline njson fig16_17(const std::string& name, double c_bg, int steps) {
    return {{"name", name},
            {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
            {"steps", steps},
            {"substrate",
             {{"shape", "disc"}, {"cx", 100}, {"cy", 100}, {"radius", 70}, {"c_bg", c_bg}}},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 100}, {"cy", 100}, {"radius", 6},
              {"count", 100}}}};
}

inline njson fig19() {
    njson nodes = njson::array();
    const double px[10] = {30, 60, 105, 160, 185, 165, 110, 55, 110, 145};
    const double py[10] = {110, 55, 35, 50, 105, 165, 185, 170, 110, 140};
    for (int i = 0; i < 10; ++i)
        nodes.push_back(node("n" + std::to_string(i), px[i], py[i], 4, 255));
    return {{"name", "fig19"},
            {"arena", {{"width", 220}, {"height", 220}, {"boundary", "walled"}}},
            {"steps", 15000},
            {"init", {{"shape", "single_node"}, {"node", "n0"}, {"count", 40}}},
            {"nodes", nodes},
            {"regions",
             {{"obstacle",
               {{{"shape", "rect"}, {"x0", 0}, {"y0", 0}, {"x1", 219}, {"y1", 219}},
                {{"shape", "disc"}, {"cx", 110}, {"cy", 110}, {"radius", 100},
                 {"carve", true}}}}}}};
}

inline njson fig20(const std::string& name, bool blob, double intensity) {
    njson j = {{"name", name},
               {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
               {"sensors", sensors(60, 60)},
               {"random_nodes",
                {{"count", 20},
                 {"x_min", 40}, {"x_max", 160},
                 {"y_min", 40}, {"y_max", 160},
                 {"min_dist", 18},
                 {"template", {{"id", "p"}, {"radius", 3.0}, {"intensity", intensity}}}}}};
    if (blob) {
        j["steps"] = 10000;
        j["population"] = shrink_bias();
        j["init"] = {{"shape", "filled_disc"}, {"cx", 100}, {"cy", 100}, {"radius", 75},
                     {"count", 12000}};
    } else {
        j["steps"] = 8000;
        j["population"] = fixed_population();
        j["init"] = {{"shape", "random_scatter"}, {"count", 6000}};
    }
    return j;
}

// Shrinking band enclosing a random point set. fig21 marks points as
// touch-activated attractants (the band snags on each point it meets);
// fig22 marks them repellent (the band settles just outside the set);
// fig23 starts from a uniform scatter with repellent points and relocates
// any particle that touches one, so the hull emerges by self-organisation.
inline njson hull_nodes(double intensity, const std::string& emit) {
    return {{"count", 20},
            {"x_min", 50}, {"x_max", 190},
            {"y_min", 50}, {"y_max", 190},
            {"min_dist", 15},
            {"template",
             {{"id", "h"}, {"radius", 3.0}, {"intensity", intensity}, {"emit", emit}}}};
}

inline njson fig21() {
    return {{"name", "fig21"},
            {"arena", {{"width", 240}, {"height", 240}, {"boundary", "walled"}}},
            {"steps", 12000},
            {"sensors", sensors(60, 60)},
            {"population", shrink_bias()},
            {"random_nodes", hull_nodes(255, "on_touch")},
            {"init",
             {{"shape", "ring_band"}, {"cx", 120}, {"cy", 120}, {"r_inner", 105},
              {"r_outer", 118}, {"count", 5500}}}};
}

inline njson fig22() {
    njson j = fig21();
    j["name"] = "fig22";
    j["random_nodes"] = hull_nodes(-255, "always");
    return j;
}

inline njson fig23() {
    return {{"name", "fig23"},
            {"arena", {{"width", 240}, {"height", 240}, {"boundary", "walled"}}},
            {"steps", 12000},
            {"population", fixed_population()},
            {"random_nodes", hull_nodes(-255, "always")},
            {"init", {{"shape", "random_scatter"}, {"count", 6000}}},
            {"flags", {{"respawn_on_node_touch", true}}}};
}

inline njson fig25() {
    njson nodes = njson::array();
    const int n = 14;
    for (int k = 0; k < n; ++k) {
        const double ang = deg_to_rad(30.0 + k * (300.0 / (n - 1)));
        nodes.push_back(node("c" + std::to_string(k), 150 + 80 * std::cos(ang),
                             150 + 80 * std::sin(ang), 4, 255));
    }
    return {{"name", "fig25"},
            {"arena", {{"width", 300}, {"height", 300}, {"boundary", "walled"}}},
            {"steps", 12000},
            {"sensors", sensors(60, 60, 7)},
            {"population", shrink_bias()},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 150}, {"cy", 150}, {"radius", 85},
              {"count", 18000}}},
            {"nodes", nodes}};
}

inline njson fig27() {
    njson nodes = njson::array();
    int k = 0;
    auto add = [&](double x, double y) {
        nodes.push_back(node("a" + std::to_string(k++), x, y, 3, 255));
    };
    add(100, 50);
    for (int i = 1; i <= 5; ++i) add(100 - 8 * i, 50 + 23 * i); // left leg
    for (int i = 1; i <= 5; ++i) add(100 + 8 * i, 50 + 23 * i); // right leg
    add(88, 116);
    add(100, 116);
    add(112, 116); // crossbar
    return {{"name", "fig27"},
            {"arena", {{"width", 200}, {"height", 200}, {"boundary", "walled"}}},
            {"steps", 12000},
            {"sensors", sensors(60, 60)},
            {"population", shrink_bias()},
            {"init",
             {{"shape", "filled_disc"}, {"cx", 100}, {"cy", 108}, {"radius", 78},
              {"count", 12000}}},
            {"nodes", nodes},
            {"events",
             {{{"step", 8000},
               {"action", "set_population_bias"},
               {"population",
                {{"division", {{"p_div", 1.0}}},
                 {"survival", {{"survival_min", 1}, {"p_die", 1.0}}}}}}}}};
}

inline njson border_attractants(int arena, double margin, int per_side) {
    njson nodes = njson::array();
    int k = 0;
    const double far = arena - 1 - margin;
    for (int i = 0; i < per_side; ++i) {
        const double t = 12.0 + i * (arena - 24.0) / (per_side - 1);
        nodes.push_back(node("b" + std::to_string(k++), t, margin, 2, 255));
        nodes.push_back(node("b" + std::to_string(k++), t, far, 2, 255));
        nodes.push_back(node("b" + std::to_string(k++), margin, t, 2, 255));
        nodes.push_back(node("b" + std::to_string(k++), far, t, 2, 255));
    }
    return nodes;
}

inline njson fig28() {
    return {{"name", "fig28"},
            {"arena", {{"width", 240}, {"height", 240}, {"boundary", "walled"}}},
            {"steps", 8000},
            {"sensors", sensors(60, 60)},
            {"population", fixed_population()},
            {"init", {{"shape", "random_scatter"}, {"count", 8000}}},
            {"nodes", border_attractants(240, 6, 10)},
            {"random_nodes",
             {{"count", 5},
              {"x_min", 45}, {"x_max", 195},
              {"y_min", 45}, {"y_max", 195},
              {"min_dist", 45},
              {"template", {{"id", "r"}, {"radius", 3.0}, {"intensity", -255}}}}}};
}

inline njson fig31(const std::string& name) {
    njson j = {{"name", name},
               {"arena", {{"width", 240}, {"height", 240}, {"boundary", "walled"}}},
               {"steps", 8000},
               {"sensors", sensors(60, 60)},
               {"population", fixed_population()},
               {"init", {{"shape", "random_scatter"}, {"count", 8000}}}};
    const double px[5] = {70, 170, 120, 65, 175};
    const double py[5] = {70, 65, 125, 170, 180};
    njson nodes = njson::array();
    if (name == "fig31a" || name == "fig31b") {
        for (int i = 0; i < 5; ++i) {
            const double r = name == "fig31b" ? 2.0 + i : 3.0;
            nodes.push_back(node("r" + std::to_string(i), px[i], py[i], r, -255));
        }
    } else {
        nodes.push_back(node("r0", 80, 80, 3, -255));
        nodes.push_back(node("r1", 160, 90, 3, -255));
        nodes.push_back(node("r2", 120, 165, 3, -255));
        nodes.push_back(node("b0", 40, 40, 3, 255));
        nodes.push_back(node("b1", 200, 40, 3, 255));
        nodes.push_back(node("b2", 40, 200, 3, 255));
        nodes.push_back(node("b3", 200, 200, 3, 255));
    }
    j["nodes"] = nodes;
    return j;
}

inline std::vector<std::pair<std::string, njson>> build_table() {
    std::vector<std::pair<std::string, njson>> t;
    auto put = [&](njson j) {
        std::string name = j.at("name").get<std::string>();
        t.emplace_back(std::move(name), std::move(j));
    };
    put(fig2());
    put(fig5("fig5a", 22.5, 45));
    put(fig5("fig5e", 60, 60));
    put(fig5("fig5i", 90, 45));
    put(fig6("fig6a", 15));
    put(fig6("fig6b", 10));
    put(fig6("fig6c", 5));
    put(fig7());
    put(fig8("fig8fixed", false));
    put(fig8("fig8adaptive", true));
    put(fig9());
    put(fig10());
    put(fig11());
    put(fig12());
    for (int theta = 180; theta >= 90; theta -= 10) put(fig13(theta));
    put(fig14("fig14eq", {255, 255, 255, 255}, {5, 5, 5, 5}));
    put(fig14("fig14conc", {255, 150, 100, 50}, {5, 5, 5, 5}));
    put(fig14("fig14size", {255, 255, 255, 255}, {7, 5, 4, 3}));
    put(fig15("fig15a", 50, 50, 50));
    put(fig15("fig15b", 50, 255, 50));
    put(fig15("fig15c", 255, 50, 255));
    put(fig15("fig15d", 255, 50, 50));
    put(fig15("fig15e", 255, 255, 50));
    put(fig16_17("fig16", 0.01, 6000));
    put(fig16_17("fig17", 0.001, 12000));
    put(fig19());
    put(fig20("fig20random", false, 255));
    put(fig20("fig20blob-high", true, 255));
    put(fig20("fig20blob-low", true, 50));
    put(fig21());
    put(fig22());
    put(fig23());
    put(fig25());
    put(fig27());
    put(fig28());
    put(fig31("fig31a"));
    put(fig31("fig31b"));
    put(fig31("fig31c"));
    return t;
}

} // namespace preset_detail

inline const std::vector<std::pair<std::string, nlohmann::json>>& preset_table() {
    static const std::vector<std::pair<std::string, nlohmann::json>> table =
        preset_detail::build_table();
    return table;
}

inline std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, j] : preset_table()) names.push_back(name);
    return names;
}

inline nlohmann::json preset_json(const std::string& name) {
    for (const auto& [id, j] : preset_table())
        if (id == name) return j;
    throw ValidationError("unknown preset '" + name + "' (see `preset --list`)");
}

inline Scenario preset_scenario(const std::string& name) {
    return load_scenario_json(preset_json(name), ".");
}

} // namespace physarum
