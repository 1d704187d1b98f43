#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace specsense {

/// Complex baseband frame plus capture rate. Samples are stored as
/// interleavable float32 pairs, matching the on-disk trace formats.
struct IqFrame {
    std::vector<std::complex<float>> samples;
    double sample_rate = 1.0;  // Hz

    std::size_t size() const { return samples.size(); }
};

/// Per-sample busy/idle labels, 0 = noise only, 1 = signal present.
struct ActivityMask {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }

    std::size_t count_ones() const {
        std::size_t c = 0;
        for (auto b : bits) c += b;
        return c;
    }

    /// Runs of consecutive ones as (start, length), in order.
    std::vector<std::pair<std::size_t, std::size_t>> one_runs() const {
        std::vector<std::pair<std::size_t, std::size_t>> runs;
        std::size_t i = 0;
        const std::size_t n = bits.size();
        while (i < n) {
            if (bits[i]) {
                std::size_t start = i;
                while (i < n && bits[i]) ++i;
                runs.emplace_back(start, i - start);
            } else {
                ++i;
            }
        }
        return runs;
    }

    bool operator==(const ActivityMask& other) const = default;
};

/// Non-negative per-sample power values (|x|^2 and its filtered versions).
using EnergyVector = std::vector<double>;

}  // namespace specsense
