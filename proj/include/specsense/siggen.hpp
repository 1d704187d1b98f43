#pragma once

#include <cstdint>
#include <string>

#include "specsense/types.hpp"

namespace specsense::siggen {

/// Alternating-renewal traffic description for one frame. ON and OFF holding
/// times are exponential with means mean_on / mean_off (in samples).
struct PuTrafficParams {
    std::size_t frame_len = 1024;  // N
    double mean_on = 102.4;        // samples
    double mean_off = 921.6;       // samples
    double snr_db = 10.0;          // -inf disables the signal entirely
    double noise_power = 1.0;      // linear power per sample

    /// Long-run ON fraction implied by the means.
    double occupancy() const { return mean_on / (mean_on + mean_off); }

    void validate() const;  // throws std::invalid_argument
};

/// Ground-truth ON/OFF labels. The frame starts in OFF with a fresh
/// exponential draw; run lengths are exponential variates rounded up to at
/// least one sample; the sequence is truncated at frame_len.
ActivityMask generate_on_off_mask(const PuTrafficParams& params, std::uint64_t seed);

/// Circularly-symmetric complex Gaussian noise of per-sample power
/// noise_power, plus a constant-envelope pulse wherever mask = 1. Pulse
/// amplitude satisfies a^2 / noise_power = 10^(snr_db/10); each pulse gets an
/// independent uniform phase.
IqFrame synthesize_frame(const ActivityMask& mask, const PuTrafficParams& params,
                         std::uint64_t seed);

enum class TraceFormat {
    F32le,  // interleaved little-endian float32 pairs, I then Q
    Csv,    // two decimal columns per line: i,q
};

IqFrame load_iq_trace(const std::string& path, TraceFormat format);
void save_iq_trace(const IqFrame& frame, const std::string& path, TraceFormat format);

}  // namespace specsense::siggen
