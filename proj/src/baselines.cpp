#include "specsense/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "specsense/fft.hpp"
#include "specsense/rss.hpp"
#include "specsense/stats.hpp"

namespace specsense::baselines {

namespace {

void check_frac(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
        throw std::invalid_argument(std::string(name) + " must be in (0,1)");
    }
}

}  // namespace

void FcmeConfig::validate(std::size_t frame_len) const {
    if (segment_len < 1) throw std::invalid_argument("segment_len must be >= 1");
    if (segment_len > frame_len) {
        throw std::invalid_argument("segment_len exceeds frame length");
    }
    check_frac(ed_window_frac, "ed_window_frac");
    check_frac(pfa, "pfa");
    check_frac(pfa_cme, "pfa_cme");
    check_frac(initial_clean_frac, "initial_clean_frac");
}

void LdaConfig::validate(std::size_t frame_len) const {
    if (smoothing_len < 1) throw std::invalid_argument("smoothing_len must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (frame_len < 2 * smoothing_len) {
        throw std::invalid_argument("frame shorter than twice the smoothing length");
    }
}

EnergyVector welch_periodogram(const IqFrame& x, std::size_t segment_len) {
    const std::size_t n = x.samples.size();
    if (segment_len < 1) throw std::invalid_argument("segment_len must be >= 1");
    if (n < segment_len) throw std::invalid_argument("frame shorter than one segment");

    const std::size_t len = segment_len;
    const std::size_t hop = std::max<std::size_t>(1, len / 2);

    // Periodic Hann window; its energy normalizes each bin so that white
    // input of power P averages to P per bin.
    std::vector<double> window(len);
    double window_energy = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        window[i] = 0.5 * (1.0 - std::cos(6.283185307179586476925286766559 *
                                          static_cast<double>(i) / static_cast<double>(len)));
        window_energy += window[i] * window[i];
    }

    EnergyVector acc(len, 0.0);
    std::vector<std::complex<double>> seg(len);
    std::size_t segments = 0;
    for (std::size_t start = 0; start + len <= n; start += hop) {
        for (std::size_t i = 0; i < len; ++i) {
            const auto& s = x.samples[start + i];
            seg[i] = {window[i] * static_cast<double>(s.real()),
                      window[i] * static_cast<double>(s.imag())};
        }
        fft_forward(seg);
        for (std::size_t b = 0; b < len; ++b) acc[b] += std::norm(seg[b]);
        ++segments;
    }
    const double scale = 1.0 / (static_cast<double>(segments) * window_energy);
    for (auto& v : acc) v *= scale;
    return acc;
}

double fcme_noise_floor(const EnergyVector& spectrum, const FcmeConfig& cfg) {
    if (spectrum.empty()) throw std::invalid_argument("empty spectrum");
    for (const double v : spectrum) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("spectrum bins must be finite and non-negative");
        }
    }

    std::vector<double> bins(spectrum);
    std::sort(bins.begin(), bins.end());
    if (!(bins.back() > 0.0)) throw std::runtime_error("all-zero spectrum");

    const double t_cme = -std::log(cfg.pfa_cme);
    std::size_t clean =
        std::min(bins.size(), static_cast<std::size_t>(std::ceil(
                                  cfg.initial_clean_frac * static_cast<double>(bins.size()))));
    if (clean == 0) clean = 1;

    double mean = std::accumulate(bins.begin(), bins.begin() + clean, 0.0) /
                  static_cast<double>(clean);
    // Grow the clean set below the adaptive threshold until it stabilizes.
    for (int iter = 0; iter < 100; ++iter) {
        const double threshold = t_cme * mean;
        std::size_t next = clean;
        while (next < bins.size() && bins[next] < threshold) ++next;
        if (next == clean) break;
        mean = std::accumulate(bins.begin(), bins.begin() + next, 0.0) /
               static_cast<double>(next);
        clean = next;
    }
    return mean;
}

ActivityMask fcme_separate(const IqFrame& x, const FcmeConfig& cfg) {
    const std::size_t n = x.samples.size();
    cfg.validate(n);

    const double floor = fcme_noise_floor(welch_periodogram(x, cfg.segment_len), cfg);
    const EnergyVector y = rss::energy_vector(x);

    const std::size_t w =
        std::max<std::size_t>(1, static_cast<std::size_t>(
                                     std::ceil(cfg.ed_window_frac * static_cast<double>(n))));
    if (n < w) throw std::invalid_argument("frame shorter than the ED window");

    const double q = qfunc_inv(cfg.pfa);
    ActivityMask mask;
    mask.bits.assign(n, 0);
    for (std::size_t start = 0; start < n; start += w) {
        const std::size_t end = std::min(n, start + w);
        const std::size_t len = end - start;
        double sum = 0.0;
        for (std::size_t i = start; i < end; ++i) sum += y[i];
        // Threshold uses the actual block length, so a short tail block keeps
        // the same false-alarm target.
        const double gamma = floor * (1.0 + q / std::sqrt(static_cast<double>(len)));
        if (sum / static_cast<double>(len) > gamma) {
            for (std::size_t i = start; i < end; ++i) mask.bits[i] = 1;
        }
    }
    return mask;
}

LdaResult lda_separate(const IqFrame& x, const LdaConfig& cfg) {
    const std::size_t n = x.samples.size();
    cfg.validate(n);

    const EnergyVector smoothed =
        rss::moving_average(rss::energy_vector(x), cfg.smoothing_len, rss::Warmup::Shrink);

    std::vector<double> sorted(smoothed);
    std::sort(sorted.begin(), sorted.end());

    LdaResult result;
    result.mask.bits.assign(n, 0);
    if (sorted.front() == sorted.back()) {
        result.degenerate = true;  // constant vector, no threshold can split it
        return result;
    }

    // Prefix sums over the sorted values let every candidate split be scored
    // in O(1): J(t) = (mu1 - mu0)^2 / (v1 + v0) with population variances.
    std::vector<double> prefix(n + 1, 0.0), prefix_sq(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        prefix[i + 1] = prefix[i] + sorted[i];
        prefix_sq[i + 1] = prefix_sq[i] + sorted[i] * sorted[i];
    }

    double best_j = -1.0;
    double best_threshold = 0.0;
    for (std::size_t s = 1; s < n; ++s) {
        if (sorted[s] == sorted[s - 1]) continue;  // not realizable by a value threshold
        const double n0 = static_cast<double>(s);
        const double n1 = static_cast<double>(n - s);
        const double mu0 = prefix[s] / n0;
        const double mu1 = (prefix[n] - prefix[s]) / n1;
        const double v0 = std::max(0.0, prefix_sq[s] / n0 - mu0 * mu0);
        const double v1 = std::max(0.0, (prefix_sq[n] - prefix_sq[s]) / n1 - mu1 * mu1);
        const double sep = mu1 - mu0;
        const double denom = v0 + v1;
        const double j = denom > 0.0 ? sep * sep / denom
                                     : std::numeric_limits<double>::infinity();
        if (j > best_j) {
            best_j = j;
            best_threshold = 0.5 * (sorted[s - 1] + sorted[s]);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        result.mask.bits[i] = smoothed[i] > best_threshold ? 1 : 0;
    }
    return result;
}

}  // namespace specsense::baselines
