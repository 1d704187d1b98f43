#include "specsense/edmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specsense/stats.hpp"

namespace specsense::edmodel {

void DetectionModel::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(noise_var > 0.0)) throw std::invalid_argument("noise_var must be positive");
    if (!(snr >= 0.0)) throw std::invalid_argument("snr must be non-negative");
    if (!(p0 >= 0.0 && p0 <= 1.0) || !(p1 >= 0.0 && p1 <= 1.0)) {
        throw std::invalid_argument("p0 and p1 must be in [0,1]");
    }
    if (std::abs(p0 + p1 - 1.0) > 1e-12) {
        throw std::invalid_argument("p0 + p1 must equal 1");
    }
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
}

double test_statistic(const EnergyVector& y, const ActivityMask& mask) {
    if (y.empty()) throw std::invalid_argument("empty energy vector");
    if (y.size() != mask.size()) throw std::invalid_argument("mask length mismatch");

    double sum0 = 0.0, sum1 = 0.0;
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (mask.bits[i]) {
            sum1 += y[i];
            ++n1;
        } else {
            sum0 += y[i];
            ++n0;
        }
    }
    const double n = static_cast<double>(y.size());
    // Empirical class weights; an empty class carries zero weight.
    double beta = 0.0;
    if (n0 > 0) beta += (static_cast<double>(n0) / n) * (sum0 / static_cast<double>(n0));
    if (n1 > 0) beta += (static_cast<double>(n1) / n) * (sum1 / static_cast<double>(n1));
    return beta;
}

double pd_theory(const DetectionModel& m) {
    m.validate();
    const double root_n = std::sqrt(static_cast<double>(m.n_samples));
    const double shift = 1.0 + m.p1 * m.snr;
    const double spread = std::sqrt(1.0 + m.p1 * (m.snr * m.snr + 2.0 * m.snr));
    return qfunc(root_n * (m.gamma / m.noise_var - shift) / spread);
}

double pf_theory(const DetectionModel& m) {
    m.validate();
    const double root_n = std::sqrt(static_cast<double>(m.n_samples));
    return qfunc(root_n * (m.gamma / m.noise_var - 1.0));
}

double gamma_for_pf(double target_pf, double noise_var, std::size_t n) {
    if (!(target_pf > 0.0 && target_pf < 1.0)) {
        throw std::invalid_argument("target_pf must be in (0,1)");
    }
    if (!(noise_var > 0.0)) throw std::invalid_argument("noise_var must be positive");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return noise_var * (1.0 + qfunc_inv(target_pf) / std::sqrt(static_cast<double>(n)));
}

EstimatedParams estimate_parameters(const EnergyVector& y, const ActivityMask& mask) {
    if (y.empty()) throw std::invalid_argument("empty energy vector");
    if (y.size() != mask.size()) throw std::invalid_argument("mask length mismatch");

    double sum0 = 0.0, sum1 = 0.0;
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (mask.bits[i]) {
            sum1 += y[i];
            ++n1;
        } else {
            sum0 += y[i];
            ++n0;
        }
    }
    if (n0 == 0) throw std::runtime_error("no noise reference: mask marks every sample busy");

    EstimatedParams out;
    out.n0 = n0;
    out.n1 = n1;
    out.noise_var_hat = sum0 / static_cast<double>(n0);
    out.occupancy_hat = static_cast<double>(n1) / static_cast<double>(y.size());
    if (n1 == 0) {
        out.snr_hat_db = -std::numeric_limits<double>::infinity();
        return out;
    }
    const double ratio = (sum1 / static_cast<double>(n1)) / out.noise_var_hat - 1.0;
    out.snr_clamped = ratio < 0.0;
    const double snr_linear = std::max(0.0, ratio);
    out.snr_hat_db = 10.0 * std::log10(snr_linear);  // -inf when clamped to zero
    return out;
}

}  // namespace specsense::edmodel
