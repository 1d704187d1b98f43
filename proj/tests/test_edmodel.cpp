#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "specsense/edmodel.hpp"
#include "specsense/rng.hpp"
#include "specsense/stats.hpp"

using namespace specsense;
using edmodel::DetectionModel;

namespace {

DetectionModel base_model() {
    DetectionModel m;
    m.gamma = 1.05;
    m.noise_var = 1.0;
    m.snr = 1.0;
    m.p0 = 0.8;
    m.p1 = 0.2;
    m.n_samples = 1024;
    return m;
}

// Mean |x|^2 of a frame with n1 unit-SNR-rho signal samples over unit noise.
double simulated_statistic(Rng& rng, std::size_t n, std::size_t n1, double rho,
                           double noise_var) {
    double sum = 0.0;
    const double amp = std::sqrt(rho * noise_var);
    const double sigma = std::sqrt(noise_var / 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto [a, b] = rng.gaussian_pair();
        double re = sigma * a, im = sigma * b;
        if (i < n1) re += amp;  // constant envelope; phase does not matter for power
        sum += re * re + im * im;
    }
    return sum / static_cast<double>(n);
}

}  // namespace

TEST_CASE("the test statistic is the class-weighted mean energy") {
    EnergyVector y = {1.0, 2.0, 3.0, 4.0};
    ActivityMask zeros;
    zeros.bits.assign(4, 0);
    CHECK(edmodel::test_statistic(y, zeros) == doctest::Approx(2.5).epsilon(1e-12));

    ActivityMask mixed;
    mixed.bits = {0, 1, 1, 0};
    EnergyVector constant(4, 7.0);
    CHECK(edmodel::test_statistic(constant, mixed) == doctest::Approx(7.0).epsilon(1e-12));

    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    EnergyVector r(257);
    ActivityMask m;
    m.bits.resize(257);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = u(g);
        m.bits[i] = g() % 2;
    }
    double s0 = 0, s1 = 0;
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (m.bits[i]) {
            s1 += r[i];
            ++n1;
        } else {
            s0 += r[i];
            ++n0;
        }
    }
    const double n = static_cast<double>(r.size());
    const double expected = (n0 / n) * (s0 / n0) + (n1 / n) * (s1 / n1);
    CHECK(edmodel::test_statistic(r, m) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("the test statistic ignores ordering within classes") {
    std::mt19937_64 g(2);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    EnergyVector y(100);
    ActivityMask m;
    m.bits.resize(100);
    for (std::size_t i = 0; i < 100; ++i) {
        y[i] = u(g);
        m.bits[i] = i < 30;
    }
    const double before = edmodel::test_statistic(y, m);
    std::shuffle(y.begin(), y.begin() + 30, g);
    std::shuffle(y.begin() + 30, y.end(), g);
    CHECK(edmodel::test_statistic(y, m) == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("the test statistic validates its inputs") {
    CHECK_THROWS_AS(edmodel::test_statistic(EnergyVector{}, ActivityMask{}),
                    std::invalid_argument);
    EnergyVector y = {1.0};
    ActivityMask m;
    m.bits = {0, 1};
    CHECK_THROWS_AS(edmodel::test_statistic(y, m), std::invalid_argument);
}

TEST_CASE("zero SNR collapses detection onto false alarm") {
    auto m = base_model();
    m.snr = 0.0;
    for (double gamma : {0.9, 0.95, 1.0, 1.02, 1.1}) {
        m.gamma = gamma;
        CHECK(edmodel::pd_theory(m) == edmodel::pf_theory(m));
    }
}

TEST_CASE("threshold at the busy mean gives even odds") {
    auto m = base_model();
    m.gamma = m.noise_var * (1.0 + m.p1 * m.snr);
    CHECK(edmodel::pd_theory(m) == doctest::Approx(0.5).epsilon(1e-12));

    m.gamma = m.noise_var;
    CHECK(edmodel::pf_theory(m) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("detection probability is monotone in threshold and SNR") {
    auto m = base_model();
    double prev = 1.1;
    for (double gamma = 0.8; gamma <= 1.4; gamma += 0.02) {
        m.gamma = gamma;
        const double pd = edmodel::pd_theory(m);
        CHECK(pd <= prev + 1e-15);
        prev = pd;
    }
    m = base_model();
    m.gamma = 1.1;
    prev = -0.1;
    for (double rho = 0.0; rho <= 4.0; rho += 0.1) {
        m.snr = rho;
        const double pd = edmodel::pd_theory(m);
        CHECK(pd >= prev - 1e-15);
        prev = pd;
    }
}

TEST_CASE("threshold and false-alarm rate round-trip") {
    for (const double p : {1e-4, 1e-2, 0.1, 0.5, 0.9, 0.999}) {
        for (const std::size_t n : {64u, 1024u, 65536u}) {
            const double gamma = edmodel::gamma_for_pf(p, 2.0, n);
            DetectionModel m;
            m.gamma = gamma;
            m.noise_var = 2.0;
            m.snr = 0.0;
            m.p0 = 1.0;
            m.p1 = 0.0;
            m.n_samples = n;
            CHECK(std::abs(edmodel::pf_theory(m) - p) < 1e-10);
        }
    }
    CHECK_THROWS_AS(edmodel::gamma_for_pf(0.0, 1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(edmodel::gamma_for_pf(1.0, 1.0, 16), std::invalid_argument);
}

TEST_CASE("false-alarm model matches simulation") {
    const std::size_t n = 1024;
    const double gamma = edmodel::gamma_for_pf(0.01, 1.0, n);
    Rng rng(99);
    int fires = 0;
    const int frames = 10000;
    for (int f = 0; f < frames; ++f) {
        if (simulated_statistic(rng, n, 0, 0.0, 1.0) > gamma) ++fires;
    }
    DetectionModel m;
    m.gamma = gamma;
    m.noise_var = 1.0;
    m.snr = 0.0;
    m.p0 = 1.0;
    m.p1 = 0.0;
    m.n_samples = n;
    const double theory = edmodel::pf_theory(m);
    CHECK(std::abs(static_cast<double>(fires) / frames - theory) <= 0.005);
}

TEST_CASE("detection model matches simulation under partial occupancy") {
    const std::size_t n = 1024, n1 = 205;
    const double rho = 1.0;
    DetectionModel m;
    m.noise_var = 1.0;
    m.snr = rho;
    m.p1 = static_cast<double>(n1) / static_cast<double>(n);
    m.p0 = 1.0 - m.p1;
    m.n_samples = n;
    m.gamma = edmodel::gamma_for_pf(0.01, 1.0, n);

    Rng rng(123);
    int fires = 0;
    const int frames = 10000;
    for (int f = 0; f < frames; ++f) {
        if (simulated_statistic(rng, n, n1, rho, 1.0) > m.gamma) ++fires;
    }
    CHECK(std::abs(static_cast<double>(fires) / frames - edmodel::pd_theory(m)) <= 0.02);
}

TEST_CASE("model validation rejects inconsistent probabilities") {
    auto m = base_model();
    m.p0 = 0.5;
    m.p1 = 0.4;
    CHECK_THROWS_AS(edmodel::pd_theory(m), std::invalid_argument);
    m = base_model();
    m.noise_var = 0.0;
    CHECK_THROWS_AS(edmodel::pf_theory(m), std::invalid_argument);
}

TEST_CASE("parameter estimation recovers the generator on the true mask") {
    const std::size_t n = 1 << 16;
    const std::size_t n1 = n / 5;
    const double rho = 10.0;  // +10 dB
    Rng rng(7);
    EnergyVector y(n);
    ActivityMask mask;
    mask.bits.assign(n, 0);
    const double amp = std::sqrt(rho);
    for (std::size_t i = 0; i < n; ++i) {
        auto [a, b] = rng.gaussian_pair();
        double re = a / std::sqrt(2.0), im = b / std::sqrt(2.0);
        if (i < n1) {
            re += amp;
            mask.bits[i] = 1;
        }
        y[i] = re * re + im * im;
    }
    const auto est = edmodel::estimate_parameters(y, mask);
    CHECK(est.noise_var_hat == doctest::Approx(1.0).epsilon(0.02));
    CHECK(est.snr_hat_db == doctest::Approx(10.0).epsilon(0.05));
    CHECK(std::abs(est.snr_hat_db - 10.0) <= 0.5);
    CHECK(est.occupancy_hat == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(est.n0 + est.n1 == n);
    CHECK_FALSE(est.snr_clamped);
}

TEST_CASE("parameter estimation is consistent as frames grow") {
    double err_small = 0.0, err_big = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        for (const std::size_t n : {std::size_t{1} << 12, std::size_t{1} << 16}) {
            Rng rng(derive_seed(40 + rep, {n}));
            EnergyVector y(n);
            ActivityMask mask;
            mask.bits.assign(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                auto [a, b] = rng.gaussian_pair();
                y[i] = (a * a + b * b) / 2.0;
            }
            const auto est = edmodel::estimate_parameters(y, mask);
            (n == (std::size_t{1} << 12) ? err_small : err_big) +=
                std::abs(est.noise_var_hat - 1.0);
        }
    }
    CHECK(err_big < err_small);
}

TEST_CASE("estimation edge cases: empty classes") {
    EnergyVector y(64, 1.0);
    ActivityMask none;
    none.bits.assign(64, 0);
    const auto est = edmodel::estimate_parameters(y, none);
    CHECK(est.occupancy_hat == 0.0);
    CHECK(std::isinf(est.snr_hat_db));
    CHECK(est.snr_hat_db < 0.0);

    ActivityMask all;
    all.bits.assign(64, 1);
    CHECK_THROWS_AS(edmodel::estimate_parameters(y, all), std::runtime_error);
}

TEST_CASE("negative SNR estimates clamp to zero linear") {
    EnergyVector y(100);
    ActivityMask mask;
    mask.bits.assign(100, 0);
    for (std::size_t i = 0; i < 100; ++i) {
        y[i] = i < 50 ? 2.0 : 1.0;  // "busy" class is weaker
        mask.bits[i] = i >= 50;
    }
    const auto est = edmodel::estimate_parameters(y, mask);
    CHECK(est.snr_clamped);
    CHECK(std::isinf(est.snr_hat_db));
}

TEST_CASE("qfunc basics") {
    CHECK(qfunc(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(qfunc(3.0) == doctest::Approx(0.0013498980316301).epsilon(1e-9));
    CHECK(qfunc_inv(0.5) == doctest::Approx(0.0).epsilon(1e-10));
    for (double p : {1e-6, 1e-3, 0.2, 0.8, 0.999}) {
        CHECK(qfunc(qfunc_inv(p)) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK_THROWS_AS(qfunc_inv(0.0), std::invalid_argument);
}
