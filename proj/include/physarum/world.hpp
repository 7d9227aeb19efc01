#pragma once

// World: one running experiment. Owns the lattice, masks, particles, nodes,
// and substrate described by a Scenario, and advances them one tick at a
// time through a fixed phase order:
//
//   1. apply events due this tick
//   2. project node + substrate stimuli into the field
//   3. per particle, in a freshly shuffled order: motor step, then sense
//      and rotate (respawn-on-touch scenarios relocate instead of sensing)
//   4. on schedule: division pass, then survival pass, each over its own
//      occupancy snapshot and its own shuffled order
//   5. consumption (node reserves, substrate visits)
//   6. diffuse and decay the field
//   7. metrics sample
//
// Three RNG streams keep replay exact: stream 0 drives initial placement
// (node layouts, then particle cells and headings), stream 1 the per-tick
// order shuffles, stream 2 every per-particle decision. Identical
// (scenario, seed) pairs therefore produce identical metrics and frames.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "physarum/errors.hpp"
#include "physarum/image_io.hpp"
#include "physarum/particle.hpp"
#include "physarum/population.hpp"
#include "physarum/rng.hpp"
#include "physarum/scenario.hpp"
#include "physarum/stimulus.hpp"
#include "physarum/trail_field.hpp"

namespace physarum {

struct MetricsRow {
    int step = 0;
    long population = 0;
    long long cumulative_created = 0;
    double coverage = 0.0;
    long occupied = 0;
    double light_occupancy = 0.0;          // occupied fraction of lit cells
    std::vector<double> node_reserves;     // aligned with World::metric_node_ids()
    bool has_substrate = false;
    double substrate_remaining = 0.0;      // unconsumed fraction of substrate cells
};

class World {
public:
    World(Scenario scenario, std::uint64_t seed)
        : sc_(std::move(scenario)), seed_(seed) {
        build_masks();
        field_ = TrailField(sc_.width, sc_.height, sc_.boundary, &masks_, sc_.exposure);
        occ_ = OccupancyGrid(sc_.width, sc_.height);
        node_at_ = Grid<std::int16_t>(sc_.width, sc_.height, -1);

        placement_.reseed(seed_, 0);
        shuffle_.reseed(seed_, 1);
        decide_.reseed(seed_, 2);

        if ((!sc_.nodes.empty() || sc_.random_nodes.present) && sc_.projection.k_proj <= 0.0)
            throw ValidationError("scenario with nodes requires projection.k_proj > 0");

        for (const NodeSpec& ns : sc_.nodes) add_node_now(ns);
        place_random_nodes();
        rebuild_node_map();
        for (const StimulusNode& n : nodes_) metric_node_ids_.push_back(n.id);

        build_substrate();
        place_initial_particles();

        free_cells_ = 0;
        for (std::size_t i = 0; i < masks_.obstacle.size(); ++i)
            free_cells_ += masks_.obstacle[i] ? 0 : 1;
        recount_light_cells();

        peak_population_ = static_cast<long>(parts_.size());
        peak_step_ = 0;
    }

    // Worlds hand out a pointer to their own masks; pinning the object is
    // simpler than rebinding on every move.
    World(const World&) = delete;
    World& operator=(const World&) = delete;

    void tick() {
        ++step_;
        apply_due_events();

        project_stimuli(nodes_, substrate_, occ_, field_, step_, sc_.projection);

        const SensorTrig trig(sc_.sensors);
        order_.resize(parts_.size());
        std::iota(order_.begin(), order_.end(), 0u);
        shuffle_.shuffle(order_);
        for (const std::uint32_t idx : order_) {
            Particle& p = parts_[idx];
            motor_step(p, occ_, field_, sc_.sensors, decide_);
            if (sc_.respawn_on_node_touch &&
                node_at_.at(p.cell_x(), p.cell_y()) >= 0) {
                respawn(p);
                continue;
            }
            const SensorReads reads = sense(p, sc_.sensors, trig, field_);
            const double dh = decide_rotation(reads, sc_.sensors, decide_);
            if (dh != 0.0) p.set_heading(p.heading_deg + dh);
        }

        if (sc_.population.division.p_div > 0.0 &&
            step_ % sc_.population.division.interval == 0)
            division_pass();
        if (sc_.population.survival.survival_min > 0 &&
            step_ % sc_.population.survival.interval == 0)
            survival_pass();

        consume(nodes_, substrate_, occ_, step_, sc_.projection);
        field_.diffuse_and_decay(sc_.diffusion.decay);

        if (static_cast<long>(parts_.size()) != occ_.count())
            throw FieldError("world: population/occupancy bookkeeping diverged");

        if (static_cast<long>(parts_.size()) > peak_population_) {
            peak_population_ = static_cast<long>(parts_.size());
            peak_step_ = step_;
        }
        if (substrate_ && substrate_->cells_consumed != last_consumed_) {
            last_consumed_ = substrate_->cells_consumed;
            consumption_history_.emplace_back(step_, last_consumed_);
        }

        metrics_due_ = step_ % sc_.metrics.interval == 0;
        if (metrics_due_) compute_metrics();
    }

    // ------------------------------------------------------------- access

    int step() const { return step_; }
    const Scenario& scenario() const { return sc_; }
    std::uint64_t seed() const { return seed_; }
    const TrailField& field() const { return field_; }
    const OccupancyGrid& occupancy() const { return occ_; }
    const EnvironmentMasks& masks() const { return masks_; }
    const std::vector<Particle>& particles() const { return parts_; }
    const std::vector<StimulusNode>& nodes() const { return nodes_; }
    const std::optional<Substrate>& substrate() const { return substrate_; }
    long long cumulative_created() const { return created_; }
    bool metrics_due() const { return metrics_due_; }
    const MetricsRow& last_metrics() const { return row_; }
    const std::vector<std::string>& metric_node_ids() const { return metric_node_ids_; }
    long peak_population() const { return peak_population_; }
    int peak_step() const { return peak_step_; }
    int light_cell_count() const { return light_cells_; }
    int free_cell_count() const { return free_cells_; }

    PointSet node_centers() const {
        PointSet pts;
        for (const StimulusNode& n : nodes_) pts.push_back({n.x, n.y});
        return pts;
    }

    const StimulusNode* find_node(const std::string& id) const {
        for (const StimulusNode& n : nodes_)
            if (n.id == id) return &n;
        return nullptr;
    }

    // First step at which the substrate consumption count reached `frac` of
    // its final value; -1 when there is no substrate or nothing was eaten.
    int search_completion_step(double frac = 0.98) const {
        if (!substrate_ || consumption_history_.empty()) return -1;
        const double target = frac * consumption_history_.back().second;
        for (const auto& [step, consumed] : consumption_history_)
            if (consumed >= target) return step;
        return consumption_history_.back().first;
    }

    std::string metrics_header() const {
        std::string h = "step,population,cumulative_created,coverage,occupied,light_occupancy";
        for (const std::string& id : metric_node_ids_) h += ",node_" + id + "_reserve";
        if (substrate_) h += ",substrate_remaining";
        return h;
    }

private:
    // ------------------------------------------------------------- set-up

    void build_masks() {
        masks_.obstacle = BinaryMask(sc_.width, sc_.height, 0);
        masks_.light = BinaryMask(sc_.width, sc_.height, 0);
        masks_.repellent = BinaryMask(sc_.width, sc_.height, 0);
        load_mask_image(masks_.obstacle, sc_.obstacle_image);
        load_mask_image(masks_.light, sc_.light_image);
        load_mask_image(masks_.repellent, sc_.repellent_image);
        paint_regions(masks_.obstacle, sc_.obstacle_regions);
        paint_regions(masks_.light, sc_.light_regions);
        paint_regions(masks_.repellent, sc_.repellent_regions);
    }

    void load_mask_image(BinaryMask& mask, const std::string& rel_path) {
        if (rel_path.empty()) return;
        const Image8 img = read_pgm(resolve_path(rel_path));
        if (img.width != sc_.width || img.height != sc_.height)
            throw ValidationError("mask image '" + rel_path + "' does not match arena size");
        mask = to_mask(img);
    }

    std::string resolve_path(const std::string& rel) const {
        if (!rel.empty() && rel.front() == '/') return rel;
        return sc_.base_dir + "/" + rel;
    }

    StimulusNode make_node(const NodeSpec& ns) const {
        StimulusNode n;
        n.id = ns.id;
        n.x = ns.x;
        n.y = ns.y;
        n.shape = ns.shape;
        n.radius = ns.radius;
        n.concentration = ns.intensity * sc_.projection.k_proj;
        n.consumable = ns.consumable;
        n.emit = ns.emit;
        n.suppress_on_engulf = ns.suppress_on_engulf;
        return n;
    }

    void add_node_now(const NodeSpec& ns) {
        for (const StimulusNode& n : nodes_)
            if (n.id == ns.id)
                throw ValidationError("duplicate node id '" + ns.id + "'");
        StimulusNode n = make_node(ns);
        resolve_footprint(n, sc_.width, sc_.height, &masks_.obstacle);
        init_reserve(n, sc_.projection);
        nodes_.push_back(std::move(n));
    }

    // Non-throwing footprint feasibility check used by rejection sampling.
    bool footprint_fits(double x, double y, double radius, FootprintShape shape) const {
        const int x0 = static_cast<int>(std::floor(x - radius));
        const int x1 = static_cast<int>(std::ceil(x + radius));
        const int y0 = static_cast<int>(std::floor(y - radius));
        const int y1 = static_cast<int>(std::ceil(y + radius));
        const double r2 = radius * radius;
        bool any = false;
        for (int cy = y0; cy <= y1; ++cy) {
            for (int cx = x0; cx <= x1; ++cx) {
                const double dx = cx - x, dy = cy - y;
                const bool inside = shape == FootprintShape::disc
                                        ? dx * dx + dy * dy <= r2
                                        : std::abs(dx) <= radius && std::abs(dy) <= radius;
                if (!inside) continue;
                if (cx < 0 || cx >= sc_.width || cy < 0 || cy >= sc_.height) return false;
                if (masks_.obstacle.at(cx, cy)) return false;
                any = true;
            }
        }
        return any;
    }

    void place_random_nodes() {
        if (!sc_.random_nodes.present) return;
        const RandomNodesSpec& rn = sc_.random_nodes;
        const int xlo = static_cast<int>(std::ceil(rn.x_min));
        const int xhi = static_cast<int>(std::floor(rn.x_max));
        const int ylo = static_cast<int>(std::ceil(rn.y_min));
        const int yhi = static_cast<int>(std::floor(rn.y_max));
        if (xhi < xlo || yhi < ylo)
            throw ValidationError("random_nodes: region holds no lattice cells");
        const double min_d2 = rn.min_dist * rn.min_dist;
        for (int k = 0; k < rn.count; ++k) {
            bool placed = false;
            for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
                const int x = xlo + static_cast<int>(placement_.below(
                                        static_cast<std::uint64_t>(xhi - xlo + 1)));
                const int y = ylo + static_cast<int>(placement_.below(
                                        static_cast<std::uint64_t>(yhi - ylo + 1)));
                bool ok = footprint_fits(x, y, rn.tmpl.radius, rn.tmpl.shape);
                for (const StimulusNode& n : nodes_) {
                    if (!ok) break;
                    const double dx = x - n.x, dy = y - n.y;
                    ok = dx * dx + dy * dy >= min_d2;
                }
                if (!ok) continue;
                NodeSpec ns = rn.tmpl;
                ns.id = rn.tmpl.id + std::to_string(k);
                ns.x = x;
                ns.y = y;
                add_node_now(ns);
                placed = true;
            }
            if (!placed)
                throw ValidationError("random_nodes: could not place node " +
                                      std::to_string(k) + " after 10000 attempts");
        }
    }

    void rebuild_node_map() {
        node_at_.fill(-1);
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            for (const std::size_t cell : nodes_[i].cells)
                node_at_[cell] = static_cast<std::int16_t>(i);
    }

    void build_substrate() {
        if (sc_.substrate.kind == SubstrateSpec::Kind::none) return;
        substrate_.emplace(sc_.width, sc_.height);
        Substrate& sub = *substrate_;
        if (sc_.substrate.kind == SubstrateSpec::Kind::image) {
            const Image8 img = read_pgm(resolve_path(sc_.substrate.image_path));
            if (img.width != sc_.width || img.height != sc_.height)
                throw ValidationError("substrate image does not match arena size");
            for (int y = 0; y < sc_.height; ++y)
                for (int x = 0; x < sc_.width; ++x)
                    if (!masks_.obstacle.at(x, y))
                        sub.concentration.at(x, y) =
                            sc_.substrate.k_bg * img.pixels[img.at(x, y)];
        } else {
            RegionShape r;
            if (sc_.substrate.kind == SubstrateSpec::Kind::disc) {
                r.kind = RegionShape::Kind::disc;
                r.cx = sc_.substrate.cx;
                r.cy = sc_.substrate.cy;
                r.radius = sc_.substrate.radius;
            } else {
                r.kind = RegionShape::Kind::rect;
                r.x0 = sc_.substrate.x0;
                r.y0 = sc_.substrate.y0;
                r.x1 = sc_.substrate.x1;
                r.y1 = sc_.substrate.y1;
            }
            for (int y = 0; y < sc_.height; ++y)
                for (int x = 0; x < sc_.width; ++x)
                    if (r.contains(x, y) && !masks_.obstacle.at(x, y))
                        sub.concentration.at(x, y) = sc_.substrate.c_bg;
        }
        sub.finalize();
        if (sub.cells_total == 0)
            throw ValidationError("substrate region holds no usable cells");
    }

    // ---------------------------------------------------- initial particles

    bool cell_free(int x, int y) const {
        return !occ_.occupied(x, y) && !masks_.obstacle.at(x, y);
    }

    void spawn_at(int x, int y, Rng& rng) {
        Particle p;
        p.x = x;
        p.y = y;
        p.set_heading(rng.heading_deg());
        occ_.set(x, y);
        parts_.push_back(p);
    }

    std::vector<std::pair<int, int>> free_cells_in(const RegionShape& r) const {
        std::vector<std::pair<int, int>> cells;
        for (int y = 0; y < sc_.height; ++y)
            for (int x = 0; x < sc_.width; ++x)
                if (r.contains(x, y) && cell_free(x, y)) cells.emplace_back(x, y);
        return cells;
    }

    // Take `count` cells (0 = all) from `cells` with a partial shuffle, then
    // spawn in selection order. The draw budget is exactly `count` picks
    // plus one heading per particle.
    void spawn_from_candidates(std::vector<std::pair<int, int>> cells, int count,
                               const std::string& what) {
        if (count > static_cast<int>(cells.size()))
            throw ValidationError("init: " + what + " region has " +
                                  std::to_string(cells.size()) + " free cells, need " +
                                  std::to_string(count));
        const std::size_t take = count == 0 ? cells.size() : static_cast<std::size_t>(count);
        if (count != 0) {
            for (std::size_t i = 0; i < take; ++i) {
                const std::size_t j =
                    i + static_cast<std::size_t>(placement_.below(cells.size() - i));
                std::swap(cells[i], cells[j]);
            }
        }
        for (std::size_t i = 0; i < take; ++i)
            spawn_at(cells[i].first, cells[i].second, placement_);
    }

    // Closest free cells to a centre point, distance then raster order.
    void spawn_nearest(double cx, double cy, int count, const std::string& what) {
        std::vector<std::pair<double, std::size_t>> ranked;
        for (int y = 0; y < sc_.height; ++y) {
            for (int x = 0; x < sc_.width; ++x) {
                if (!cell_free(x, y)) continue;
                const double dx = x - cx, dy = y - cy;
                ranked.emplace_back(dx * dx + dy * dy,
                                    static_cast<std::size_t>(y) * sc_.width + x);
            }
        }
        if (count > static_cast<int>(ranked.size()))
            throw ValidationError("init: " + what + " needs " + std::to_string(count) +
                                  " free cells, lattice has " +
                                  std::to_string(ranked.size()));
        std::partial_sort(ranked.begin(), ranked.begin() + count, ranked.end());
        for (int i = 0; i < count; ++i) {
            const std::size_t cell = ranked[i].second;
            spawn_at(static_cast<int>(cell % sc_.width), static_cast<int>(cell / sc_.width),
                     placement_);
        }
    }

    void place_initial_particles() {
        const InitSpec& in = sc_.init;
        switch (in.shape) {
        case InitShape::random_scatter: {
            long free_count = 0;
            for (int y = 0; y < sc_.height; ++y)
                for (int x = 0; x < sc_.width; ++x) free_count += cell_free(x, y) ? 1 : 0;
            if (in.count > free_count)
                throw ValidationError("init: random_scatter count exceeds free cells");
            for (int k = 0; k < in.count; ++k) {
                bool placed = false;
                for (long attempt = 0;
                     attempt < 100L * sc_.width * sc_.height && !placed; ++attempt) {
                    const int x = static_cast<int>(
                        placement_.below(static_cast<std::uint64_t>(sc_.width)));
                    const int y = static_cast<int>(
                        placement_.below(static_cast<std::uint64_t>(sc_.height)));
                    if (!cell_free(x, y)) continue;
                    spawn_at(x, y, placement_);
                    placed = true;
                }
                if (!placed)
                    throw ValidationError("init: random_scatter could not find a free cell");
            }
            break;
        }
        case InitShape::filled_disc: {
            RegionShape r;
            r.kind = RegionShape::Kind::disc;
            r.cx = in.cx;
            r.cy = in.cy;
            r.radius = in.radius;
            spawn_from_candidates(free_cells_in(r), in.count, "filled_disc");
            break;
        }
        case InitShape::ring_band: {
            RegionShape r;
            r.kind = RegionShape::Kind::ring;
            r.cx = in.cx;
            r.cy = in.cy;
            r.r_inner = in.r_inner;
            r.r_outer = in.r_outer;
            spawn_from_candidates(free_cells_in(r), in.count, "ring_band");
            break;
        }
        case InitShape::region_from_image: {
            const Image8 img = read_pgm(resolve_path(in.image_path));
            if (img.width != sc_.width || img.height != sc_.height)
                throw ValidationError("init image does not match arena size");
            std::vector<std::pair<int, int>> cells;
            for (int y = 0; y < sc_.height; ++y)
                for (int x = 0; x < sc_.width; ++x)
                    if (img.pixels[img.at(x, y)] != 0 && cell_free(x, y))
                        cells.emplace_back(x, y);
            spawn_from_candidates(std::move(cells), in.count, "region_from_image");
            break;
        }
        case InitShape::at_nodes: {
            if (nodes_.empty())
                throw ValidationError("init: at_nodes requires at least one node");
            for (const StimulusNode& n : nodes_)
                spawn_nearest(n.x, n.y, in.per_node, "at_nodes('" + n.id + "')");
            break;
        }
        case InitShape::single_node: {
            const StimulusNode* n = find_node(in.node_id);
            if (!n)
                throw ValidationError("init: single_node references unknown node '" +
                                      in.node_id + "'");
            spawn_nearest(n->x, n->y, in.count, "single_node('" + in.node_id + "')");
            break;
        }
        }
    }

    // -------------------------------------------------------------- events

    void apply_due_events() {
        while (next_event_ < sc_.events.size() && sc_.events[next_event_].step <= step_) {
            apply_event(sc_.events[next_event_]);
            ++next_event_;
        }
    }

    void apply_event(const EventSpec& e) {
        switch (e.action) {
        case EventSpec::Action::add_node:
            add_node_now(e.node);
            rebuild_node_map();
            break;
        case EventSpec::Action::remove_node: {
            const auto it = std::find_if(nodes_.begin(), nodes_.end(),
                                         [&](const StimulusNode& n) { return n.id == e.id; });
            if (it == nodes_.end())
                throw ValidationError("remove_node: unknown node '" + e.id + "'");
            nodes_.erase(it);
            rebuild_node_map();
            break;
        }
        case EventSpec::Action::set_concentration: {
            const auto it = std::find_if(nodes_.begin(), nodes_.end(),
                                         [&](const StimulusNode& n) { return n.id == e.id; });
            if (it == nodes_.end())
                throw ValidationError("set_concentration: unknown node '" + e.id + "'");
            it->concentration = e.intensity * sc_.projection.k_proj;
            break;
        }
        case EventSpec::Action::set_light_region:
            if (e.clear_regions) masks_.light.fill(0);
            paint_regions(masks_.light, e.regions);
            recount_light_cells();
            break;
        case EventSpec::Action::set_repellent_region:
            if (e.clear_regions) masks_.repellent.fill(0);
            paint_regions(masks_.repellent, e.regions);
            break;
        case EventSpec::Action::set_population_bias:
            patch_population(e.population);
            break;
        }
    }

    void patch_population(const nlohmann::json& p) {
        PopulationParams next = sc_.population;
        if (p.contains("division")) {
            const auto& d = p.at("division");
            if (d.contains("gmin")) next.division.gmin = d.at("gmin").get<int>();
            if (d.contains("gmax")) next.division.gmax = d.at("gmax").get<int>();
            if (d.contains("interval")) next.division.interval = d.at("interval").get<int>();
            if (d.contains("p_div")) next.division.p_div = d.at("p_div").get<double>();
        }
        if (p.contains("survival")) {
            const auto& s = p.at("survival");
            if (s.contains("survival_min"))
                next.survival.survival_min = s.at("survival_min").get<int>();
            if (s.contains("interval")) next.survival.interval = s.at("interval").get<int>();
            if (s.contains("p_die")) next.survival.p_die = s.at("p_die").get<double>();
        }
        if (p.contains("mode")) {
            const std::string mode = p.at("mode").get<std::string>();
            if (mode == "fixed") {
                next.division.p_div = 0.0;
                next.survival.survival_min = 0;
            } else if (mode != "adaptive") {
                throw ValidationError("set_population_bias: unknown mode '" + mode + "'");
            }
        }
        validate(next);
        sc_.population = next;
    }

    void recount_light_cells() {
        light_cells_ = 0;
        for (std::size_t i = 0; i < masks_.light.size(); ++i)
            if (masks_.light[i] && !masks_.obstacle[i]) ++light_cells_;
    }

    // ---------------------------------------------------------- population

    void division_pass() {
        const std::size_t n0 = parts_.size();
        if (n0 == 0) return;
        pass_order_.resize(n0);
        std::iota(pass_order_.begin(), pass_order_.end(), 0u);
        shuffle_.shuffle(pass_order_);
        const BinaryMask snapshot = occ_.mask();
        Particle child;
        for (const std::uint32_t idx : pass_order_) {
            if (division_test(parts_[idx], snapshot, occ_, &masks_, sc_.boundary,
                              sc_.population.division, decide_, child)) {
                parts_.push_back(child);
                ++created_;
            }
        }
    }

    void survival_pass() {
        const std::size_t n = parts_.size();
        if (n == 0) return;
        pass_order_.resize(n);
        std::iota(pass_order_.begin(), pass_order_.end(), 0u);
        shuffle_.shuffle(pass_order_);
        const BinaryMask snapshot = occ_.mask();
        bool any_death = false;
        for (const std::uint32_t idx : pass_order_) {
            Particle& p = parts_[idx];
            if (!survival_test(p, snapshot, sc_.boundary, sc_.population.survival, decide_)) {
                p.alive = 0;
                occ_.clear(p.cell_x(), p.cell_y());
                any_death = true;
            }
        }
        if (any_death)
            parts_.erase(std::remove_if(parts_.begin(), parts_.end(),
                                        [](const Particle& p) { return !p.alive; }),
                         parts_.end());
    }

    // Annihilate-and-reinit: relocate a particle that stepped onto a node to
    // a uniformly drawn free cell away from every node footprint.
    void respawn(Particle& p) {
        occ_.clear(p.cell_x(), p.cell_y());
        for (int attempt = 0; attempt < 65536; ++attempt) {
            const int x =
                static_cast<int>(decide_.below(static_cast<std::uint64_t>(sc_.width)));
            const int y =
                static_cast<int>(decide_.below(static_cast<std::uint64_t>(sc_.height)));
            if (!cell_free(x, y) || node_at_.at(x, y) >= 0) continue;
            p.x = x;
            p.y = y;
            p.set_heading(decide_.heading_deg());
            occ_.set(x, y);
            return;
        }
        for (int y = 0; y < sc_.height; ++y) {
            for (int x = 0; x < sc_.width; ++x) {
                if (!cell_free(x, y) || node_at_.at(x, y) >= 0) continue;
                p.x = x;
                p.y = y;
                p.set_heading(decide_.heading_deg());
                occ_.set(x, y);
                return;
            }
        }
        throw FieldError("world: no free cell left to respawn into");
    }

    // -------------------------------------------------------------- metrics

    void compute_metrics() {
        row_.step = step_;
        row_.population = static_cast<long>(parts_.size());
        row_.cumulative_created = created_;
        row_.occupied = occ_.count();

        long covered = 0;
        const std::vector<double>& v = field_.values();
        const double thresh = sc_.metrics.coverage_threshold;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!masks_.obstacle[i] && v[i] >= thresh) ++covered;
        row_.coverage = free_cells_ > 0 ? static_cast<double>(covered) / free_cells_ : 0.0;

        if (light_cells_ > 0) {
            long lit = 0;
            const BinaryMask& occ = occ_.mask();
            for (std::size_t i = 0; i < occ.size(); ++i)
                if (occ[i] && masks_.light[i] && !masks_.obstacle[i]) ++lit;
            row_.light_occupancy = static_cast<double>(lit) / light_cells_;
        } else {
            row_.light_occupancy = 0.0;
        }

        row_.node_reserves.assign(metric_node_ids_.size(), 0.0);
        for (std::size_t i = 0; i < metric_node_ids_.size(); ++i) {
            const StimulusNode* n = find_node(metric_node_ids_[i]);
            if (n) row_.node_reserves[i] = n->reserve_fraction();
        }

        row_.has_substrate = substrate_.has_value();
        row_.substrate_remaining =
            substrate_ && substrate_->cells_total > 0
                ? static_cast<double>(substrate_->remaining()) / substrate_->cells_total
                : 0.0;
    }

    // --------------------------------------------------------------- state

    Scenario sc_;
    std::uint64_t seed_ = 0;
    EnvironmentMasks masks_;
    TrailField field_;
    OccupancyGrid occ_;
    Grid<std::int16_t> node_at_;
    std::vector<Particle> parts_;
    std::vector<StimulusNode> nodes_;
    std::optional<Substrate> substrate_;

    Rng placement_, shuffle_, decide_;
    std::vector<std::uint32_t> order_, pass_order_;

    int step_ = 0;
    std::size_t next_event_ = 0;
    long long created_ = 0;
    bool metrics_due_ = false;
    MetricsRow row_;
    std::vector<std::string> metric_node_ids_;

    long peak_population_ = 0;
    int peak_step_ = 0;
    int light_cells_ = 0;
    int free_cells_ = 0;
    int last_consumed_ = 0;
    std::vector<std::pair<int, int>> consumption_history_;
};

// Drives `steps` ticks, invoking the sinks as they come due. The frame sink
// also fires once before the first tick so a zero-step run still produces
// its initial frame.
struct RunSinks {
    int frames_every = 0;
    std::function<void(const World&)> on_frame;
    std::function<void(const World&)> on_metrics;
};

inline void run_world(World& world, int steps, const RunSinks& sinks) {
    if (sinks.on_frame) sinks.on_frame(world);
    for (int i = 0; i < steps; ++i) {
        world.tick();
        if (sinks.on_metrics && world.metrics_due()) sinks.on_metrics(world);
        if (sinks.on_frame && sinks.frames_every > 0 &&
            world.step() % sinks.frames_every == 0)
            sinks.on_frame(world);
    }
}

} // namespace physarum
