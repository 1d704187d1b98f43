#include "specsense/rss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace specsense::rss {

SeparationConfig SeparationConfig::for_frame_len(std::size_t frame_len) {
    SeparationConfig cfg;
    // 14 balances the false-positive rate of the marking stage (which grows
    // quickly with the smoothing length once derivative sign-runs approach
    // lambda_msw) against pulse contrast in the size scan at low SNR.
    cfg.m_init = std::max<std::size_t>(1, std::min<std::size_t>(14, frame_len / 8));
    cfg.lambda_msw = (frame_len + 19) / 20;  // ceil(0.05 * N), the 5% resolution floor
    return cfg;
}

void SeparationConfig::validate(std::size_t frame_len) const {
    if (m_init < 1) throw std::invalid_argument("m_init must be >= 1");
    if (m_init * 8 > frame_len) {
        throw std::invalid_argument("m_init must be at most frame_len / 8");
    }
    if (lambda_msw < 1 || lambda_msw >= frame_len) {
        throw std::invalid_argument("lambda_msw must be in [1, frame_len)");
    }
}

EnergyVector energy_vector(const IqFrame& x) {
    if (x.samples.empty()) throw std::invalid_argument("empty frame");
    EnergyVector y(x.samples.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double re = x.samples[i].real();
        const double im = x.samples[i].imag();
        y[i] = re * re + im * im;
    }
    return y;
}

EnergyVector moving_average(const EnergyVector& y, std::size_t m, Warmup warmup) {
    if (m < 1 || m > y.size()) {
        throw std::invalid_argument("moving_average: window must be in [1, length]");
    }
    EnergyVector out(y.size());
    // Recursive trailing window with Kahan-compensated increments.
    double sum = 0.0, comp = 0.0;
    const auto add = [&](double v) {
        const double t = v - comp;
        const double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    };
    const double width = static_cast<double>(m);
    for (std::size_t i = 0; i < y.size(); ++i) {
        add(y[i]);
        if (i >= m) add(-y[i - m]);
        const double divisor =
            (warmup == Warmup::Shrink && i + 1 < m) ? static_cast<double>(i + 1) : width;
        out[i] = sum / divisor;
    }
    return out;
}

namespace {

// Monotonic-queue window extreme over the centered, edge-truncated window
// [i - floor(k/2), i + ceil(k/2) - 1]. ring must hold n indices; each index
// is pushed exactly once, so no wraparound occurs.
template <bool kIsMin>
void sliding_extreme_into(const double* y, std::size_t n, std::size_t k, double* out,
                          std::int32_t* ring) {
    const std::size_t reach_left = k / 2;
    const std::size_t reach_right = (k + 1) / 2 - 1;
    std::size_t head = 0, tail = 0, next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t hi = std::min(n - 1, i + reach_right);
        const std::size_t lo = i >= reach_left ? i - reach_left : 0;
        while (next <= hi) {
            if constexpr (kIsMin) {
                while (tail > head && y[ring[tail - 1]] >= y[next]) --tail;
            } else {
                while (tail > head && y[ring[tail - 1]] <= y[next]) --tail;
            }
            ring[tail++] = static_cast<std::int32_t>(next++);
        }
        while (head < tail && static_cast<std::size_t>(ring[head]) < lo) ++head;
        out[i] = y[ring[head]];
    }
}

void check_energy_values(const EnergyVector& y, const char* who) {
    for (const double v : y) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string(who) +
                                        ": energy values must be finite and non-negative");
        }
    }
}

}  // namespace

EnergyVector sliding_min(const EnergyVector& y, std::size_t k) {
    if (k < 1 || k > y.size()) {
        throw std::invalid_argument("sliding_min: window must be in [1, length]");
    }
    EnergyVector out(y.size());
    std::vector<std::int32_t> ring(y.size());
    sliding_extreme_into<true>(y.data(), y.size(), k, out.data(), ring.data());
    return out;
}

EnergyVector sliding_max(const EnergyVector& y, std::size_t k) {
    if (k < 1 || k > y.size()) {
        throw std::invalid_argument("sliding_max: window must be in [1, length]");
    }
    EnergyVector out(y.size());
    std::vector<std::int32_t> ring(y.size());
    sliding_extreme_into<false>(y.data(), y.size(), k, out.data(), ring.data());
    return out;
}

RofScanResult rof_scan(const EnergyVector& y_bar, unsigned threads) {
    const std::size_t n = y_bar.size();
    if (n < 4) throw std::invalid_argument("rof_scan: need at least 4 samples");
    check_energy_values(y_bar, "rof_scan");

    const std::size_t k_max = n / 2;
    std::vector<double> e(k_max + 1, 0.0);  // e[k], k = 1..k_max

    double total = 0.0;
    for (const double v : y_bar) total += v;
    e[1] = total / static_cast<double>(n);
    if (!(e[1] > 0.0)) throw std::runtime_error("zero-energy frame");

    // Each k is independent: erosion, dilation, then an in-order mean. The
    // in-order summation makes e[k] identical for any thread count.
    const auto scan_range = [&](std::size_t k_begin, std::size_t k_end) {
        std::vector<double> eroded(n), opened(n);
        std::vector<std::int32_t> ring(n);
        for (std::size_t k = k_begin; k < k_end; ++k) {
            sliding_extreme_into<true>(y_bar.data(), n, k, eroded.data(), ring.data());
            sliding_extreme_into<false>(eroded.data(), n, k, opened.data(), ring.data());
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += opened[i];
            e[k] = sum / static_cast<double>(n);
        }
    };

    const std::size_t k_count = k_max - 1;
    const unsigned workers =
        std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(1, k_count)));
    if (workers <= 1) {
        scan_range(2, k_max + 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (k_count + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t k_begin = 2 + static_cast<std::size_t>(w) * chunk;
            const std::size_t k_end = std::min(k_max + 1, k_begin + chunk);
            if (k_begin >= k_end) break;
            pool.emplace_back(scan_range, k_begin, k_end);
        }
        for (auto& t : pool) t.join();
    }

    RofScanResult result;
    result.energy_decrease.resize(k_count);
    for (std::size_t k = 2; k <= k_max; ++k) {
        const double prev = e[k - 1];
        result.energy_decrease[k - 2] = prev > 0.0 ? (prev - e[k]) / prev : 0.0;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.energy_decrease.size(); ++i) {
        if (result.energy_decrease[i] > result.energy_decrease[best]) best = i;
    }
    result.m_sec = best + 2;
    result.degenerate = !(result.energy_decrease[best] > 0.0);
    return result;
}

ActivityMask mark_from_derivative(const EnergyVector& y_bb, std::size_t lambda_msw) {
    const std::size_t n = y_bb.size();
    if (lambda_msw < 1) throw std::invalid_argument("lambda_msw must be >= 1");
    if (n < lambda_msw + 2) {
        throw std::invalid_argument("mark_from_derivative: frame shorter than lambda_msw + 2");
    }

    // First difference, oriented so rising energy is positive. Entry i
    // describes the step onto sample i+1.
    const std::size_t d = n - 1;
    std::vector<std::uint8_t> rising(d);
    for (std::size_t i = 0; i < d; ++i) rising[i] = y_bb[i + 1] > y_bb[i] ? 1 : 0;

    // Bridge runs separated by a single non-positive entry. Sequential on
    // purpose: a bridged entry can support the next bridge.
    for (std::size_t i = 2; i < d; ++i) {
        if (rising[i] && rising[i - 2]) rising[i - 1] = 1;
    }

    ActivityMask mask;
    mask.bits.assign(n, 0);
    std::size_t run = 0;
    for (std::size_t i = 0; i < d; ++i) {
        run = rising[i] ? run + 1 : 0;
        if (run == lambda_msw + 1) {
            // Width threshold crossed: back-mark the run's full extent.
            for (std::size_t j = i - lambda_msw; j <= i; ++j) mask.bits[j + 1] = 1;
        } else if (run > lambda_msw) {
            mask.bits[i + 1] = 1;
        }
    }
    return mask;
}

SeparationResult separate(const IqFrame& x, const SeparationConfig& cfg, unsigned threads) {
    cfg.validate(x.size());
    const EnergyVector y = energy_vector(x);
    const EnergyVector y_bar = moving_average(y, cfg.m_init, Warmup::Shrink);
    RofScanResult scan = rof_scan(y_bar, threads);
    const EnergyVector y_bb = moving_average(y_bar, scan.m_sec, Warmup::Shrink);

    SeparationResult result;
    result.mask = mark_from_derivative(y_bb, cfg.lambda_msw);
    result.m_sec = scan.m_sec;
    result.energy_decrease = std::move(scan.energy_decrease);
    result.degenerate = scan.degenerate;
    return result;
}

}  // namespace specsense::rss
