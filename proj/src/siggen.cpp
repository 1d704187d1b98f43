#include "specsense/siggen.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "specsense/rng.hpp"

namespace specsense::siggen {

void PuTrafficParams::validate() const {
    if (frame_len < 2) throw std::invalid_argument("frame_len must be >= 2");
    if (!(mean_on > 0.0)) throw std::invalid_argument("mean_on must be positive");
    if (!(mean_off > 0.0)) throw std::invalid_argument("mean_off must be positive");
    if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power must be positive");
    if (std::isnan(snr_db)) throw std::invalid_argument("snr_db must not be NaN");
}

ActivityMask generate_on_off_mask(const PuTrafficParams& params, std::uint64_t seed) {
    params.validate();
    Rng rng(seed);

    ActivityMask mask;
    mask.bits.assign(params.frame_len, 0);

    // Alternating renewal sequence, starting idle. Each run length is an
    // exponential variate rounded up, never shorter than one sample.
    bool on = false;
    std::size_t pos = 0;
    while (pos < params.frame_len) {
        const double mean = on ? params.mean_on : params.mean_off;
        const double draw = rng.exponential(mean);
        std::size_t run = static_cast<std::size_t>(std::ceil(draw));
        if (run < 1) run = 1;
        const std::size_t end = std::min(params.frame_len, pos + run);
        if (on) {
            for (std::size_t i = pos; i < end; ++i) mask.bits[i] = 1;
        }
        pos = end;
        on = !on;
    }
    return mask;
}

IqFrame synthesize_frame(const ActivityMask& mask, const PuTrafficParams& params,
                         std::uint64_t seed) {
    params.validate();
    if (mask.size() != params.frame_len) {
        throw std::invalid_argument("mask length does not match frame_len");
    }
    Rng rng(seed);

    const std::size_t n = params.frame_len;
    IqFrame frame;
    frame.samples.resize(n);

    // Noise first: one Gaussian pair per sample so the stream layout is fixed.
    const double sigma = std::sqrt(params.noise_power / 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [re, im] = rng.gaussian_pair();
        frame.samples[i] = {static_cast<float>(sigma * re),
                            static_cast<float>(sigma * im)};
    }

    // Rectangular pulses: constant envelope, one random phase per pulse.
    const double amplitude =
        std::sqrt(params.noise_power * std::pow(10.0, params.snr_db / 10.0));
    if (amplitude > 0.0) {
        for (const auto& [start, len] : mask.one_runs()) {
            const double phase = 6.283185307179586476925286766559 * rng.uniform01();
            const std::complex<float> pulse(static_cast<float>(amplitude * std::cos(phase)),
                                            static_cast<float>(amplitude * std::sin(phase)));
            for (std::size_t i = start; i < start + len; ++i) {
                frame.samples[i] += pulse;
            }
        }
    }
    return frame;
}

namespace {

void check_finite(const IqFrame& frame, const std::string& path) {
    for (const auto& s : frame.samples) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw std::runtime_error(path + ": non-finite sample value");
        }
    }
}

IqFrame load_f32le(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    in.seekg(0, std::ios::beg);
    if (bytes == 0) throw std::runtime_error(path + ": empty trace file");
    if (bytes % (2 * sizeof(float)) != 0) {
        throw std::runtime_error(path + ": byte count is not a whole number of I/Q pairs");
    }
    IqFrame frame;
    frame.samples.resize(bytes / (2 * sizeof(float)));
    static_assert(sizeof(std::complex<float>) == 2 * sizeof(float));
    in.read(reinterpret_cast<char*>(frame.samples.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw std::runtime_error(path + ": short read");
    check_finite(frame, path);
    return frame;
}

IqFrame load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    IqFrame frame;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error(path + ": missing comma on line " + std::to_string(lineno));
        }
        try {
            std::size_t used = 0;
            const float i = std::stof(line.substr(0, comma), &used);
            const float q = std::stof(line.substr(comma + 1));
            (void)used;
            frame.samples.emplace_back(i, q);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": unparsable values on line " + std::to_string(lineno));
        }
    }
    if (frame.samples.empty()) throw std::runtime_error(path + ": empty trace file");
    check_finite(frame, path);
    return frame;
}

}  // namespace

IqFrame load_iq_trace(const std::string& path, TraceFormat format) {
    return format == TraceFormat::F32le ? load_f32le(path) : load_csv(path);
}

void save_iq_trace(const IqFrame& frame, const std::string& path, TraceFormat format) {
    if (frame.samples.empty()) throw std::invalid_argument("refusing to write an empty frame");
    if (format == TraceFormat::F32le) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + path + " for writing");
        out.write(reinterpret_cast<const char*>(frame.samples.data()),
                  static_cast<std::streamsize>(frame.samples.size() * 2 * sizeof(float)));
        if (!out) throw std::runtime_error(path + ": write failed");
    } else {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + path + " for writing");
        char buf[80];
        for (const auto& s : frame.samples) {
            // %.9g round-trips float32 exactly.
            std::snprintf(buf, sizeof(buf), "%.9g,%.9g\n", static_cast<double>(s.real()),
                          static_cast<double>(s.imag()));
            out << buf;
        }
        if (!out) throw std::runtime_error(path + ": write failed");
    }
}

}  // namespace specsense::siggen
