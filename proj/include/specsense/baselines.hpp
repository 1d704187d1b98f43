#pragma once

#include <cstddef>

#include "specsense/types.hpp"

namespace specsense::baselines {

struct FcmeConfig {
    std::size_t segment_len = 64;     // periodogram segment size
    double ed_window_frac = 0.05;     // energy-detection window as a frame fraction
    double pfa = 0.01;                // per-window false alarm target
    double pfa_cme = 0.01;            // clean-set threshold rate
    double initial_clean_frac = 0.1;  // smallest bins taken as the initial clean set

    void validate(std::size_t frame_len) const;
};

struct LdaConfig {
    std::size_t smoothing_len = 16;  // pre-smoothing MAV length
    std::size_t max_iters = 100;     // reserved for iterative solvers; the exact scan ignores it

    void validate(std::size_t frame_len) const;
};

struct LdaResult {
    ActivityMask mask;
    bool degenerate = false;  // constant input, no valid split
};

/// Averaged periodogram over 50%-overlapping Hann-windowed segments,
/// normalized so the mean bin value estimates per-sample noise power for
/// white input. Output length = segment_len.
EnergyVector welch_periodogram(const IqFrame& x, std::size_t segment_len);

/// Forward consecutive mean excision over sorted spectrum bins: grow a clean
/// set below T = -ln(pfa_cme) * mean(clean) until stable; the floor is the
/// clean-set mean.
double fcme_noise_floor(const EnergyVector& spectrum, const FcmeConfig& cfg);

/// Block energy detection against the FCME noise floor: window mean compared
/// with floor * (1 + Qinv(pfa)/sqrt(W)); the mask is filled block-wise.
ActivityMask fcme_separate(const IqFrame& x, const FcmeConfig& cfg);

/// Fisher-discriminant split of the smoothed energies: the threshold
/// maximizing (mu1-mu0)^2 / (v1+v0) over all distinct splits of the sorted
/// values, found exactly with prefix sums.
LdaResult lda_separate(const IqFrame& x, const LdaConfig& cfg);

}  // namespace specsense::baselines
