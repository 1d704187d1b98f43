#pragma once

#include <cstddef>

#include "specsense/types.hpp"

namespace specsense::edmodel {

/// Parameter bundle for the dynamic-PU energy-detection statistics.
struct DetectionModel {
    double gamma = 1.0;            // decision threshold on mean energy
    double noise_var = 1.0;        // sigma_w^2
    double snr = 0.0;              // linear SNR, rho >= 0
    double p0 = 0.9;               // idle probability
    double p1 = 0.1;               // busy probability, p0 + p1 = 1
    std::size_t n_samples = 1024;  // N

    void validate() const;
};

struct EstimatedParams {
    double noise_var_hat = 0.0;
    double snr_hat_db = 0.0;     // -inf when there is no signal class
    double occupancy_hat = 0.0;  // n1 / (n0 + n1)
    std::size_t n0 = 0;
    std::size_t n1 = 0;
    bool snr_clamped = false;    // signal-class mean fell below the noise mean
};

/// Two-class weighted mean energy, beta = p0*mean(y|0) + p1*mean(y|1) with
/// empirical weights p_i = N_i/N. An empty class contributes zero weight.
double test_statistic(const EnergyVector& y, const ActivityMask& mask);

/// Detection probability of mean-energy detection under partial occupancy:
/// Pd = Q(sqrt(N) * (gamma/noise_var - (1 + p1*rho)) / sqrt(1 + p1*(rho^2 + 2*rho))).
double pd_theory(const DetectionModel& m);

/// False-alarm probability Pf = Q(sqrt(N) * (gamma/noise_var - 1)).
double pf_theory(const DetectionModel& m);

/// Threshold achieving a target false-alarm rate:
/// gamma = noise_var * (1 + Qinv(pf)/sqrt(N)). Round-trips with pf_theory
/// to 1e-10.
double gamma_for_pf(double target_pf, double noise_var, std::size_t n);

/// Channel-parameter estimation from a separation mask: noise variance from
/// the idle class, SNR from the class-mean ratio (clamped at 0 linear),
/// occupancy from the busy fraction. Requires at least one idle sample.
EstimatedParams estimate_parameters(const EnergyVector& y, const ActivityMask& mask);

}  // namespace specsense::edmodel
