#include <cmath>
#include <complex>

#include "doctest.h"
#include "staterate/channel.hpp"

using namespace staterate;

namespace {

EnvironmentSpec pure_scatter_env(int n_taps = 1) {
    EnvironmentSpec env;
    env.name = "scatter";
    env.path_loss_exponent = 2.0;
    env.pl0_db = 0.0;
    env.shadowing_sigma_db = 0.0;
    env.rician_k_db = -100.0;  // negligible LOS
    env.n_taps = n_taps;
    env.tap_delay_spread_s = n_taps > 1 ? 200e-9 : 0.0;
    return env;
}

}  // namespace

TEST_CASE("coherence time matches the Doppler formula") {
    CHECK(coherence_time_s(20.0, 2.4e9) == doctest::Approx(2.644e-3).epsilon(4e-4));
    CHECK(coherence_time_s(5.0, 2.4e9) == doctest::Approx(10.575e-3).epsilon(1e-4));
    CHECK(std::isinf(coherence_time_s(0.0, 2.4e9)));
    CHECK_THROWS_AS(coherence_time_s(-1.0, 2.4e9), std::domain_error);
}

TEST_CASE("log-distance path loss") {
    EnvironmentSpec env;
    env.path_loss_exponent = 2.0;
    env.pl0_db = 40.0;
    CHECK(path_loss_db(env, 1.0) == doctest::Approx(40.0));
    CHECK(path_loss_db(env, 10.0) == doctest::Approx(60.0));
    env.path_loss_exponent = 2.7;
    CHECK(path_loss_db(env, 100.0) == doctest::Approx(94.0));

    bool clamped = false;
    CHECK(path_loss_db(env, 0.2, &clamped) == doctest::Approx(40.0));
    CHECK(clamped);
    path_loss_db(env, 5.0, &clamped);
    CHECK(!clamped);
}

TEST_CASE("reciprocity window") {
    CHECK(reciprocity_valid(10e-6, 20.0, 2.4e9));
    CHECK(!reciprocity_valid(5e-3, 20.0, 2.4e9));
    CHECK(reciprocity_valid(100.0, 0.0, 2.4e9));
}

TEST_CASE("static channel does not evolve") {
    const auto env = environment_preset("playground");
    auto st = init_fading(env, 5);
    const auto before = st.scatter;
    const double shadow_before = st.shadowing_db;
    st = evolve_fading(st, 0.01, 0.0, 2.4e9, env);
    for (size_t j = 0; j < before.size(); ++j) {
        CHECK(st.scatter[j].real() == doctest::Approx(before[j].real()).epsilon(1e-12));
        CHECK(st.scatter[j].imag() == doctest::Approx(before[j].imag()).epsilon(1e-12));
    }
    CHECK(st.shadowing_db == doctest::Approx(shadow_before).epsilon(1e-12));
}

TEST_CASE("pure LOS tap stays constant") {
    EnvironmentSpec env = pure_scatter_env();
    env.rician_k_db = std::numeric_limits<double>::infinity();
    auto st = init_fading(env, 1);
    CHECK(st.los_amplitude == doctest::Approx(1.0));
    const std::complex<double> tap0 = st.scatter[0] + st.los_amplitude;
    for (int i = 0; i < 50; ++i) st = evolve_fading(st, 0.01, 8.0, 2.4e9, env);
    const std::complex<double> tap1 = st.scatter[0] + st.los_amplitude;
    CHECK(std::abs(tap0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(tap1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tap autocorrelation tracks the Bessel oracle") {
    const auto env = pure_scatter_env();
    const double v = 10.0, fc = 2.4e9, dt = 0.01;
    const double fm = v * fc / kSpeedOfLight;
    const double rho_expect = std::cyl_bessel_j(0.0, 2.0 * M_PI * fm * dt);

    auto st = init_fading(env, 17);
    const int n = 40000;
    std::vector<std::complex<double>> taps(n);
    for (int i = 0; i < n; ++i) {
        st = evolve_fading(st, dt, v, fc, env);
        taps[i] = st.scatter[0];
    }
    std::complex<double> num{0, 0};
    double den = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        num += taps[i + 1] * std::conj(taps[i]);
        den += std::norm(taps[i]);
    }
    const double rho_measured = num.real() / den;
    CHECK(std::abs(rho_measured - rho_expect) < 0.05);
}

TEST_CASE("expected tap power is one at init") {
    for (const char* name : {"square", "playground", "pool", "grove"}) {
        const auto env = environment_preset(name);
        double power = 0.0;
        const int trials = 4000;
        for (int t = 0; t < trials; ++t) {
            const auto st = init_fading(env, 1000 + t);
            for (size_t j = 0; j < st.scatter.size(); ++j) {
                auto tap = st.scatter[j];
                if (j == 0) tap += st.los_amplitude;
                power += std::norm(tap);
            }
        }
        CHECK(power / trials == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("single unit tap renders a flat channel") {
    EnvironmentSpec env = pure_scatter_env();
    FadingState st;
    st.scatter = {{1.0, 0.0}};
    st.scatter_power = {1.0};
    st.tap_delay_s = {0.0};
    st.los_amplitude = 0.0;

    std::mt19937_64 rng(0);
    const auto ch = render_csi(st, env, 1.0, 0.0, LinkBudget{}, rng);
    REQUIRE(static_cast<int>(ch.csi.size()) == kNumSubcarriers);
    for (const auto& h : ch.csi) CHECK(std::abs(h) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ch.rssi_dbm == doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("two equal taps produce a frequency null where the DFT says so") {
    EnvironmentSpec env = pure_scatter_env(2);
    const double tau = 0.5 / (26.0 * kSubcarrierSpacingHz);
    FadingState st;
    st.scatter = {{M_SQRT1_2, 0.0}, {M_SQRT1_2, 0.0}};
    st.scatter_power = {0.5, 0.5};
    st.tap_delay_s = {0.0, tau};
    st.los_amplitude = 0.0;

    std::mt19937_64 rng(0);
    const auto ch = render_csi(st, env, 1.0, 0.0, LinkBudget{}, rng);
    double peak = 0.0;
    for (const auto& h : ch.csi) peak = std::max(peak, std::abs(h));
    double min_mag = 1e9;
    int min_k = -1;
    for (int k = 0; k < kNumSubcarriers; ++k) {
        if (std::abs(ch.csi[k]) < min_mag) {
            min_mag = std::abs(ch.csi[k]);
            min_k = k;
        }
    }
    CHECK(min_k == 26);
    CHECK(min_mag < 0.1 * peak);
    // analytic oracle: |h_k| = sqrt(2)*|cos(pi k df tau)|
    for (int k = 0; k < kNumSubcarriers; ++k) {
        const double expect =
            std::sqrt(2.0) * std::abs(std::cos(M_PI * k * kSubcarrierSpacingHz * tau));
        CHECK(std::abs(ch.csi[k]) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("path loss shifts rssi linearly in dB") {
    EnvironmentSpec env = pure_scatter_env();
    FadingState st;
    st.scatter = {{1.0, 0.0}};
    st.scatter_power = {1.0};
    st.tap_delay_s = {0.0};
    st.los_amplitude = 0.0;

    std::mt19937_64 rng(0);
    env.pl0_db = 0.0;
    const auto ref = render_csi(st, env, 1.0, 0.0, LinkBudget{}, rng);
    env.pl0_db = 60.0;
    const auto attenuated = render_csi(st, env, 1.0, 0.0, LinkBudget{}, rng);
    CHECK(ref.rssi_dbm - attenuated.rssi_dbm == doctest::Approx(60.0).epsilon(1e-9));
    const double ratio = std::abs(ref.csi[0]) / std::abs(attenuated.csi[0]);
    CHECK(ratio == doctest::Approx(1000.0).epsilon(1e-9));
}

TEST_CASE("rssi decorrelation grows with velocity and csi similarity drops") {
    const auto env = environment_preset("playground");
    const double dt = 0.005, fc = 2.4e9;
    const int frames = 4000;

    auto mean_drssi_and_sim = [&](double v, uint64_t seed) {
        auto st = init_fading(env, seed);
        std::mt19937_64 noise_rng(seed ^ 0x9e3779b97f4a7c15ULL);
        double last_rssi = 0.0;
        std::vector<std::complex<double>> last_csi;
        double drssi_sum = 0.0, sim_sum = 0.0;
        for (int i = 0; i < frames; ++i) {
            st = evolve_fading(st, dt, v, fc, env);
            const auto ch = render_csi(st, env, 30.0, 0.05, LinkBudget{}, noise_rng);
            if (i > 0) {
                drssi_sum += std::abs(ch.rssi_dbm - last_rssi);
                std::complex<double> inner{0, 0};
                double na = 0, nb = 0;
                for (size_t k = 0; k < ch.csi.size(); ++k) {
                    inner += ch.csi[k] * std::conj(last_csi[k]);
                    na += std::norm(ch.csi[k]);
                    nb += std::norm(last_csi[k]);
                }
                sim_sum += std::abs(inner) / std::sqrt(na * nb);
            }
            last_rssi = ch.rssi_dbm;
            last_csi = ch.csi;
        }
        return std::pair<double, double>{drssi_sum / (frames - 1), sim_sum / (frames - 1)};
    };

    for (uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto [d0, s0] = mean_drssi_and_sim(0.0, seed);
        const auto [d4, s4] = mean_drssi_and_sim(4.0, seed);
        const auto [d8, s8] = mean_drssi_and_sim(8.0, seed);
        CHECK(d0 < d4);
        CHECK(d4 < d8);
        CHECK(s0 >= 0.99);
        CHECK(s8 < s0);
    }
}

TEST_CASE("fading evolution is deterministic under a fixed seed") {
    const auto env = environment_preset("grove");
    auto a = init_fading(env, 99);
    auto b = init_fading(env, 99);
    for (int i = 0; i < 100; ++i) {
        a = evolve_fading(a, 0.005, 6.0, 2.4e9, env);
        b = evolve_fading(b, 0.005, 6.0, 2.4e9, env);
    }
    for (size_t j = 0; j < a.scatter.size(); ++j) {
        CHECK(a.scatter[j] == b.scatter[j]);
    }
    CHECK(a.shadowing_db == b.shadowing_db);
}
