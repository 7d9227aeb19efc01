#pragma once

// Run output writers: the per-tick metrics CSV, the end-of-run summary
// JSON, and the effective-scenario echo. All files are written atomically
// (.tmp + rename) so a crashed run never leaves half a file behind.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"

#include "physarum/errors.hpp"
#include "physarum/world.hpp"

namespace physarum {

inline std::string format_metrics_row(const MetricsRow& row) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6);
    os << row.step << ',' << row.population << ',' << row.cumulative_created << ','
       << row.coverage << ',' << row.occupied << ',' << row.light_occupancy;
    for (const double r : row.node_reserves) os << ',' << r;
    if (row.has_substrate) os << ',' << row.substrate_remaining;
    return os.str();
}

class MetricsCsvWriter {
public:
    MetricsCsvWriter() = default;

    void open(const std::string& path, const World& world) {
        path_ = path;
        tmp_ = path + ".tmp";
        out_.open(tmp_, std::ios::trunc);
        if (!out_) throw IoError("cannot open metrics file '" + tmp_ + "'");
        out_ << world.metrics_header() << '\n';
    }

    void write_row(const World& world) {
        out_ << format_metrics_row(world.last_metrics()) << '\n';
        if (!out_) throw IoError("failed writing metrics to '" + tmp_ + "'");
    }

    void finalize() {
        if (!out_.is_open()) return;
        out_.flush();
        out_.close();
        if (std::rename(tmp_.c_str(), path_.c_str()) != 0)
            throw IoError("failed to finalize metrics file '" + path_ + "'");
    }

private:
    std::string path_, tmp_;
    std::ofstream out_;
};

inline nlohmann::json summary_json(const World& world) {
    nlohmann::json j;
    j["name"] = world.scenario().name;
    j["seed"] = world.seed();
    j["steps"] = world.step();
    j["population"] = static_cast<long>(world.particles().size());
    j["peak_population"] = world.peak_population();
    j["peak_step"] = world.peak_step();
    j["cumulative_created"] = world.cumulative_created();
    j["search_completion_step"] = world.search_completion_step();
    j["light_cells"] = world.light_cell_count();
    j["nodes"] = nlohmann::json::array();
    for (const StimulusNode& n : world.nodes()) {
        j["nodes"].push_back({{"id", n.id},
                              {"first_contact", n.first_contact_tick},
                              {"depleted_tick", n.depleted_tick},
                              {"reserve_fraction", n.reserve_fraction()}});
    }
    return j;
}

inline void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp + "'");
        out << text;
        if (!out) throw IoError("failed writing '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("failed to finalize '" + path + "'");
}

inline void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

} // namespace physarum
