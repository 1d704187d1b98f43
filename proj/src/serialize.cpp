#include "specsense/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace specsense {

using nlohmann::json;

json mask_to_json(const ActivityMask& mask) {
    json runs = json::array();
    for (const auto& [start, len] : mask.one_runs()) {
        runs.push_back(json::array({start, len}));
    }
    return json{{"n", mask.size()}, {"mask", std::move(runs)}};
}

ActivityMask mask_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("mask")) {
        throw std::runtime_error("mask document needs \"n\" and \"mask\" keys");
    }
    const auto n = j.at("n").get<std::size_t>();
    ActivityMask mask;
    mask.bits.assign(n, 0);
    for (const auto& run : j.at("mask")) {
        if (!run.is_array() || run.size() != 2) {
            throw std::runtime_error("mask runs must be [start, len] pairs");
        }
        const auto start = run[0].get<std::size_t>();
        const auto len = run[1].get<std::size_t>();
        if (start + len > n) throw std::runtime_error("mask run exceeds frame length");
        for (std::size_t i = start; i < start + len; ++i) mask.bits[i] = 1;
    }
    return mask;
}

json separation_result_to_json(const rss::SeparationResult& r) {
    json j = mask_to_json(r.mask);
    j["m_sec"] = r.m_sec;
    j["energy_decrease"] = r.energy_decrease;  // entry i is filter size k = i + 2
    j["degenerate"] = r.degenerate;
    return j;
}

json estimated_params_to_json(const edmodel::EstimatedParams& p) {
    json j{{"noise_var_hat", p.noise_var_hat},
           {"occupancy_hat", p.occupancy_hat},
           {"n0", p.n0},
           {"n1", p.n1},
           {"snr_clamped", p.snr_clamped}};
    // JSON has no -inf; a missing/null snr_hat_db means "no signal class".
    if (std::isfinite(p.snr_hat_db)) {
        j["snr_hat_db"] = p.snr_hat_db;
    } else {
        j["snr_hat_db"] = nullptr;
    }
    return j;
}

bench::SweepConfig sweep_config_from_json(const json& j) {
    static const char* known[] = {"snr_grid",    "occupancy_grid", "frames_per_cell",
                                  "frame_len",   "base_seed",      "separators",
                                  "noise_power", "measure_runtime", "n_grid"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw std::runtime_error("unknown sweep config key: " + key);
    }

    bench::SweepConfig cfg;
    if (j.contains("snr_grid")) cfg.snr_grid = j.at("snr_grid").get<std::vector<double>>();
    if (j.contains("occupancy_grid")) {
        cfg.occupancy_grid = j.at("occupancy_grid").get<std::vector<double>>();
    }
    if (j.contains("frames_per_cell")) {
        cfg.frames_per_cell = j.at("frames_per_cell").get<std::size_t>();
    }
    if (j.contains("frame_len")) cfg.frame_len = j.at("frame_len").get<std::size_t>();
    if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("noise_power")) cfg.noise_power = j.at("noise_power").get<double>();
    if (j.contains("measure_runtime")) cfg.measure_runtime = j.at("measure_runtime").get<bool>();
    if (j.contains("separators")) {
        cfg.separators.clear();
        for (const auto& name : j.at("separators")) {
            const auto sep = bench::separator_from_string(name.get<std::string>());
            if (!sep) throw std::runtime_error("unknown separator: " + name.get<std::string>());
            cfg.separators.push_back(*sep);
        }
    }
    cfg.validate();
    return cfg;
}

std::vector<std::size_t> n_grid_from_json(const json& j) {
    if (!j.contains("n_grid")) return {};
    return j.at("n_grid").get<std::vector<std::size_t>>();
}

}  // namespace specsense
