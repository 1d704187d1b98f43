#pragma once

#include <cstddef>
#include <vector>

#include "specsense/types.hpp"

namespace specsense::rss {

struct SeparationConfig {
    std::size_t m_init = 14;      // initial moving-average size, << N
    std::size_t lambda_msw = 52;  // minimal signal width, the resolution floor

    /// Defaults used throughout: m_init = 14 capped at N/8, lambda_msw =
    /// ceil(0.05 * N).
    static SeparationConfig for_frame_len(std::size_t frame_len);

    void validate(std::size_t frame_len) const;
};

struct RofScanResult {
    std::size_t m_sec = 0;               // filter size with the largest relative energy drop
    std::vector<double> energy_decrease; // e'_k for k = 2..floor(N/2); index i holds k = i+2
    bool degenerate = false;             // no drop anywhere (constant input)
};

struct SeparationResult {
    ActivityMask mask;
    std::size_t m_sec = 0;
    std::vector<double> energy_decrease;
    bool degenerate = false;
};

/// Element-wise squared magnitude.
EnergyVector energy_vector(const IqFrame& x);

/// Warm-up policy for the trailing moving average. ZeroPrefix divides by the
/// full width with the missing prefix counted as zeros (a rising ramp);
/// Shrink divides by the number of samples actually seen, which keeps the
/// level unbiased at the frame head. The separation pipeline uses Shrink:
/// a ramp would read as rising energy and mark the head of every frame.
enum class Warmup { ZeroPrefix, Shrink };

/// Trailing moving average of width m, O(1) per sample via the running-sum
/// recursion with compensated accumulation, so it tracks direct summation to
/// better than 1e-10 relative.
EnergyVector moving_average(const EnergyVector& y, std::size_t m,
                            Warmup warmup = Warmup::ZeroPrefix);

/// Window minimum/maximum over a centered window of nominal width k spanning
/// [n - floor(k/2), n + ceil(k/2) - 1], truncated at the edges. O(N) via a
/// monotonic queue.
EnergyVector sliding_min(const EnergyVector& y, std::size_t k);
EnergyVector sliding_max(const EnergyVector& y, std::size_t k);

/// Erosion/dilation size scan: for k = 2..floor(N/2), e_k is the mean of
/// sliding_max(sliding_min(y_bar, k), k), and e'_k = (e_{k-1} - e_k)/e_{k-1}
/// with e_1 = mean(y_bar). Returns the argmax of e' (smallest k on ties) and
/// the full curve. Results are identical for any worker count.
RofScanResult rof_scan(const EnergyVector& y_bar, unsigned threads = 1);

/// Derivative-based marking: binarize rising slopes, bridge single-sample
/// gaps, then keep runs longer than lambda_msw. A positive first difference
/// at index i marks sample i+1.
ActivityMask mark_from_derivative(const EnergyVector& y_bb, std::size_t lambda_msw);

/// Full pipeline: energy -> MAV(m_init) -> size scan -> MAV(m_sec) ->
/// derivative marking.
SeparationResult separate(const IqFrame& x, const SeparationConfig& cfg,
                          unsigned threads = 1);

}  // namespace specsense::rss
