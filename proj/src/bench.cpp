#include "specsense/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "specsense/baselines.hpp"
#include "specsense/edmodel.hpp"
#include "specsense/rng.hpp"
#include "specsense/rss.hpp"
#include "specsense/siggen.hpp"

namespace specsense::bench {

const char* to_string(Separator s) {
    switch (s) {
        case Separator::Rss: return "rss";
        case Separator::Fcme: return "fcme";
        case Separator::Lda: return "lda";
    }
    return "?";
}

std::optional<Separator> separator_from_string(std::string_view name) {
    if (name == "rss") return Separator::Rss;
    if (name == "fcme") return Separator::Fcme;
    if (name == "lda") return Separator::Lda;
    return std::nullopt;
}

void SweepConfig::validate() const {
    if (snr_grid.empty()) throw std::invalid_argument("snr_grid must not be empty");
    if (occupancy_grid.empty()) throw std::invalid_argument("occupancy_grid must not be empty");
    for (const double occ : occupancy_grid) {
        if (!(occ > 0.0 && occ < 1.0)) {
            throw std::invalid_argument("occupancy values must be in (0,1)");
        }
    }
    if (frames_per_cell < 1) throw std::invalid_argument("frames_per_cell must be >= 1");
    if (frame_len < 64) throw std::invalid_argument("frame_len must be >= 64");
    if (separators.empty()) throw std::invalid_argument("separators must not be empty");
    if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power must be positive");
}

double signal_marking_efficiency(const ActivityMask& est, const ActivityMask& truth) {
    if (est.size() != truth.size()) throw std::invalid_argument("mask length mismatch");
    std::size_t hits = 0, total = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth.bits[i]) {
            ++total;
            if (est.bits[i]) ++hits;
        }
    }
    if (total == 0) throw std::invalid_argument("truth mask has no signal samples");
    return static_cast<double>(hits) / static_cast<double>(total);
}

double total_separation_efficiency(const ActivityMask& est, const ActivityMask& truth) {
    if (est.size() != truth.size()) throw std::invalid_argument("mask length mismatch");
    if (est.size() == 0) throw std::invalid_argument("empty masks");
    std::size_t agree = 0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        if (est.bits[i] == truth.bits[i]) ++agree;
    }
    return static_cast<double>(agree) / static_cast<double>(est.size());
}

namespace {

constexpr std::uint64_t kMaskStream = 0;
constexpr std::uint64_t kNoiseStream = 1;

siggen::PuTrafficParams cell_params(const SweepConfig& cfg, double snr_db, double occupancy) {
    siggen::PuTrafficParams p;
    p.frame_len = cfg.frame_len;
    p.mean_on = occupancy * static_cast<double>(cfg.frame_len);
    p.mean_off = (1.0 - occupancy) * static_cast<double>(cfg.frame_len);
    p.snr_db = snr_db;
    p.noise_power = cfg.noise_power;
    return p;
}

ActivityMask run_separator(Separator sep, const IqFrame& frame) {
    switch (sep) {
        case Separator::Rss:
            return rss::separate(frame, rss::SeparationConfig::for_frame_len(frame.size()), 1).mask;
        case Separator::Fcme:
            return baselines::fcme_separate(frame, baselines::FcmeConfig{});
        case Separator::Lda:
            return baselines::lda_separate(frame, baselines::LdaConfig{}).mask;
    }
    throw std::logic_error("unknown separator");
}

struct TrialResult {
    double signal_eff = 0.0;
    bool has_signal = false;
    double total_eff = 0.0;
    double occupancy_hat = 0.0;
    double runtime_s = 0.0;
    bool failed = false;
};

TrialResult run_trial(const SweepConfig& cfg, Separator sep, const siggen::PuTrafficParams& params,
                      std::uint64_t seed_mask, std::uint64_t seed_noise) {
    TrialResult r;
    try {
        const ActivityMask truth = siggen::generate_on_off_mask(params, seed_mask);
        const IqFrame frame = siggen::synthesize_frame(truth, params, seed_noise);

        ActivityMask est;
        if (cfg.measure_runtime) {
            const auto t0 = std::chrono::steady_clock::now();
            est = run_separator(sep, frame);
            const auto t1 = std::chrono::steady_clock::now();
            r.runtime_s = std::chrono::duration<double>(t1 - t0).count();
        } else {
            est = run_separator(sep, frame);
        }

        r.total_eff = total_separation_efficiency(est, truth);
        r.has_signal = truth.count_ones() > 0;
        if (r.has_signal) r.signal_eff = signal_marking_efficiency(est, truth);
        if (est.count_ones() < est.size()) {
            r.occupancy_hat =
                edmodel::estimate_parameters(rss::energy_vector(frame), est).occupancy_hat;
        } else {
            r.occupancy_hat = 1.0;  // all-busy mask leaves no noise reference
        }
    } catch (const std::exception&) {
        r.failed = true;  // recorded and excluded from the averages
    }
    return r;
}

}  // namespace

std::vector<MetricsRecord> run_sweep(const SweepConfig& cfg, unsigned threads) {
    cfg.validate();
    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (workers == 0) workers = 1;

    struct Cell {
        Separator sep;
        std::size_t snr_idx, occ_idx;
    };
    std::vector<Cell> cells;
    for (const Separator sep : cfg.separators) {
        for (std::size_t i = 0; i < cfg.snr_grid.size(); ++i) {
            for (std::size_t o = 0; o < cfg.occupancy_grid.size(); ++o) {
                cells.push_back({sep, i, o});
            }
        }
    }

    const std::size_t frames = cfg.frames_per_cell;
    const std::size_t total_trials = cells.size() * frames;
    std::vector<TrialResult> results(total_trials);

    // Flat trial list with per-trial seeds derived from the cell coordinates,
    // so any worker schedule produces the same numbers.
    std::atomic<std::size_t> cursor{0};
    const auto work = [&]() {
        for (;;) {
            const std::size_t t = cursor.fetch_add(1);
            if (t >= total_trials) return;
            const Cell& cell = cells[t / frames];
            const std::size_t trial = t % frames;
            const double snr_db = cfg.snr_grid[cell.snr_idx];
            const double occupancy = cfg.occupancy_grid[cell.occ_idx];
            const auto params = cell_params(cfg, snr_db, occupancy);
            // Frames are identical across separators for a fair comparison:
            // the seed path ignores the separator index.
            const std::uint64_t seed_mask = derive_seed(
                cfg.base_seed, {cell.snr_idx, cell.occ_idx, trial, kMaskStream});
            const std::uint64_t seed_noise = derive_seed(
                cfg.base_seed, {cell.snr_idx, cell.occ_idx, trial, kNoiseStream});
            results[t] = run_trial(cfg, cell.sep, params, seed_mask, seed_noise);
        }
    };

    if (workers <= 1 || total_trials <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const unsigned count = std::min<unsigned>(workers, static_cast<unsigned>(total_trials));
        pool.reserve(count);
        for (unsigned w = 0; w < count; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::vector<MetricsRecord> records;
    records.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        double sum_signal = 0.0, sum_total = 0.0, sum_occ = 0.0, sum_rt = 0.0;
        std::size_t ok = 0, with_signal = 0;
        for (std::size_t trial = 0; trial < frames; ++trial) {
            const TrialResult& r = results[c * frames + trial];
            if (r.failed) continue;
            ++ok;
            sum_total += r.total_eff;
            sum_occ += r.occupancy_hat;
            sum_rt += r.runtime_s;
            if (r.has_signal) {
                ++with_signal;
                sum_signal += r.signal_eff;
            }
        }
        MetricsRecord rec;
        rec.separator = cell.sep;
        rec.snr_db = cfg.snr_grid[cell.snr_idx];
        rec.occupancy = cfg.occupancy_grid[cell.occ_idx];
        rec.signal_eff = with_signal > 0 ? sum_signal / static_cast<double>(with_signal) : 0.0;
        rec.total_eff = ok > 0 ? sum_total / static_cast<double>(ok) : 0.0;
        rec.occupancy_hat = ok > 0 ? sum_occ / static_cast<double>(ok) : 0.0;
        rec.occupancy_abs_err = std::abs(rec.occupancy_hat - rec.occupancy);
        rec.mean_runtime = ok > 0 ? sum_rt / static_cast<double>(ok) : 0.0;
        rec.frames = ok;
        records.push_back(rec);
    }
    return records;
}

std::vector<TimingRecord> time_separators(const SweepConfig& cfg,
                                          const std::vector<std::size_t>& n_grid) {
    cfg.validate();
    if (n_grid.empty()) throw std::invalid_argument("n_grid must not be empty");
    for (const std::size_t n : n_grid) {
        if (n < 64) throw std::invalid_argument("every N in n_grid must be >= 64");
    }

    const std::size_t calls = std::max<std::size_t>(1000, cfg.frames_per_cell);
    const double snr_db = cfg.snr_grid.front();
    const double occupancy = cfg.occupancy_grid.front();

    std::vector<TimingRecord> records;
    for (const std::size_t n : n_grid) {
        SweepConfig local = cfg;
        local.frame_len = n;
        const auto params = cell_params(local, snr_db, occupancy);

        std::vector<IqFrame> framepool;
        framepool.reserve(calls);
        for (std::size_t t = 0; t < calls; ++t) {
            const std::uint64_t seed_mask = derive_seed(cfg.base_seed, {n, t, kMaskStream});
            const std::uint64_t seed_noise = derive_seed(cfg.base_seed, {n, t, kNoiseStream});
            framepool.push_back(
                siggen::synthesize_frame(siggen::generate_on_off_mask(params, seed_mask),
                                         params, seed_noise));
        }

        for (const Separator sep : cfg.separators) {
            // Warm-up outside the measurement.
            for (std::size_t t = 0; t < std::min<std::size_t>(3, calls); ++t) {
                (void)run_separator(sep, framepool[t]);
            }
            double sum = 0.0, sum_sq = 0.0;
            for (std::size_t t = 0; t < calls; ++t) {
                const auto t0 = std::chrono::steady_clock::now();
                (void)run_separator(sep, framepool[t]);
                const auto t1 = std::chrono::steady_clock::now();
                const double dt = std::chrono::duration<double>(t1 - t0).count();
                sum += dt;
                sum_sq += dt * dt;
            }
            TimingRecord rec;
            rec.separator = sep;
            rec.n = n;
            rec.calls = calls;
            rec.mean_s = sum / static_cast<double>(calls);
            rec.std_s = std::sqrt(
                std::max(0.0, sum_sq / static_cast<double>(calls) - rec.mean_s * rec.mean_s));
            records.push_back(rec);
        }
    }
    return records;
}

namespace {

std::string format_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void emit_csv(const std::vector<MetricsRecord>& records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("no records to emit");
    std::vector<MetricsRecord> sorted(records);
    std::sort(sorted.begin(), sorted.end(), [](const MetricsRecord& a, const MetricsRecord& b) {
        if (a.separator != b.separator) return a.separator < b.separator;
        if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
        return a.occupancy < b.occupancy;
    });

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "separator,snr_db,occupancy,signal_eff,total_eff,occupancy_hat,"
           "occupancy_abs_err,mean_runtime_s,frames\n";
    for (const auto& r : sorted) {
        out << to_string(r.separator) << ',' << format_g6(r.snr_db) << ','
            << format_g6(r.occupancy) << ',' << format_g6(r.signal_eff) << ','
            << format_g6(r.total_eff) << ',' << format_g6(r.occupancy_hat) << ','
            << format_g6(r.occupancy_abs_err) << ',' << format_g6(r.mean_runtime) << ','
            << r.frames << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

void emit_timing_csv(const std::vector<TimingRecord>& records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("no records to emit");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "separator,n,calls,mean_s,std_s\n";
    for (const auto& r : records) {
        out << to_string(r.separator) << ',' << r.n << ',' << r.calls << ','
            << format_g6(r.mean_s) << ',' << format_g6(r.std_s) << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace specsense::bench
