#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specsense/types.hpp"

namespace specsense::bench {

enum class Separator { Rss = 0, Fcme = 1, Lda = 2 };  // also the CSV sort order

const char* to_string(Separator s);
std::optional<Separator> separator_from_string(std::string_view name);

struct SweepConfig {
    std::vector<double> snr_grid;        // dB
    std::vector<double> occupancy_grid;  // mean ON fraction, in (0,1)
    std::size_t frames_per_cell = 1000;
    std::size_t frame_len = 1024;
    std::uint64_t base_seed = 1;
    std::vector<Separator> separators = {Separator::Rss, Separator::Fcme, Separator::Lda};
    double noise_power = 1.0;
    bool measure_runtime = true;  // disable for byte-identical CSV across runs

    void validate() const;
};

/// One sweep cell: averages over frames_per_cell frames.
struct MetricsRecord {
    Separator separator;
    double snr_db;
    double occupancy;          // configured mean ON fraction
    double signal_eff;         // correctly recognized signal samples / true signal samples
    double total_eff;          // per-sample agreement over both classes
    double occupancy_hat;      // mean estimated busy fraction
    double occupancy_abs_err;  // |occupancy_hat - occupancy|
    double mean_runtime;       // seconds per separator call (0 when not measured)
    std::size_t frames;        // frames aggregated (failures excluded)
};

struct TimingRecord {
    Separator separator;
    std::size_t n;
    std::size_t calls;
    double mean_s;
    double std_s;
};

/// Fraction of true signal samples the estimate recovered. Requires at least
/// one true signal sample.
double signal_marking_efficiency(const ActivityMask& est, const ActivityMask& truth);

/// Per-sample agreement over both classes.
double total_separation_efficiency(const ActivityMask& est, const ActivityMask& truth);

/// Monte-Carlo sweep over (separator, snr, occupancy) cells. Per-trial seeds
/// are derived from base_seed and the cell coordinates, so results do not
/// depend on the worker count. threads = 0 uses the hardware concurrency.
std::vector<MetricsRecord> run_sweep(const SweepConfig& cfg, unsigned threads = 0);

/// Single-threaded timing protocol: for each separator and N, the mean and
/// standard deviation of wall-clock time over >= 1000 calls on pre-generated
/// frames (generation excluded).
std::vector<TimingRecord> time_separators(const SweepConfig& cfg,
                                          const std::vector<std::size_t>& n_grid);

/// CSV with the fixed header
/// separator,snr_db,occupancy,signal_eff,total_eff,occupancy_hat,occupancy_abs_err,mean_runtime_s,frames
/// numbers formatted %.6g, rows sorted by (separator, snr_db, occupancy).
void emit_csv(const std::vector<MetricsRecord>& records, const std::string& path);

/// CSV header: separator,n,calls,mean_s,std_s
void emit_timing_csv(const std::vector<TimingRecord>& records, const std::string& path);

}  // namespace specsense::bench
