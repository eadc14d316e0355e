#include "staterate/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace staterate {

EnvironmentSpec environment_preset(const std::string& name) {
    EnvironmentSpec env;
    env.name = name;
    if (name == "square") {
        env.path_loss_exponent = 2.0;
        env.pl0_db = 58.0;
        env.shadowing_sigma_db = 1.0;
        env.rician_k_db = 10.0;
        env.n_taps = 2;
        env.tap_delay_spread_s = 150e-9;
    } else if (name == "playground") {
        env.path_loss_exponent = 2.2;
        env.pl0_db = 60.0;
        env.shadowing_sigma_db = 1.5;
        env.rician_k_db = 8.0;
        env.n_taps = 3;
        env.tap_delay_spread_s = 250e-9;
    } else if (name == "pool") {
        env.path_loss_exponent = 2.5;
        env.pl0_db = 62.0;
        env.shadowing_sigma_db = 2.0;
        env.rician_k_db = 6.0;
        env.n_taps = 3;
        env.tap_delay_spread_s = 300e-9;
    } else if (name == "grove") {
        env.path_loss_exponent = 2.7;
        env.pl0_db = 64.0;
        env.shadowing_sigma_db = 2.5;
        env.rician_k_db = 3.0;
        env.n_taps = 5;
        env.tap_delay_spread_s = 400e-9;
    } else {
        throw std::invalid_argument("unknown environment preset: " + name);
    }
    return env;
}

namespace {

void validate(const EnvironmentSpec& env) {
    if (env.path_loss_exponent < 1.6 || env.path_loss_exponent > 4.0)
        throw std::invalid_argument("path_loss_exponent out of [1.6, 4.0]");
    if (env.n_taps < 1) throw std::invalid_argument("n_taps must be >= 1");
    if (env.shadowing_sigma_db < 0.0) throw std::invalid_argument("shadowing_sigma must be >= 0");
}

// K-factor in linear scale; +inf dB means a pure LOS channel.
double rician_k_linear(double k_db) {
    if (std::isinf(k_db) && k_db > 0) return std::numeric_limits<double>::infinity();
    return std::pow(10.0, k_db / 10.0);
}

}  // namespace

FadingState init_fading(const EnvironmentSpec& env, uint64_t seed) {
    validate(env);
    FadingState st;
    st.rng.seed(seed);
    st.scatter.resize(env.n_taps);
    st.scatter_power.resize(env.n_taps);
    st.tap_delay_s.resize(env.n_taps);

    const double k = rician_k_linear(env.rician_k_db);
    double scatter_total;
    if (std::isinf(k)) {
        st.los_amplitude = 1.0;
        scatter_total = 0.0;
    } else {
        st.los_amplitude = std::sqrt(k / (k + 1.0));
        scatter_total = 1.0 / (k + 1.0);
    }

    const double delta =
        env.n_taps > 1 ? env.tap_delay_spread_s / static_cast<double>(env.n_taps - 1) : 0.0;
    const double decay = env.tap_delay_spread_s > 0.0 ? env.tap_delay_spread_s / 2.0 : 1.0;
    double weight_sum = 0.0;
    for (int j = 0; j < env.n_taps; ++j) {
        st.tap_delay_s[j] = j * delta;
        st.scatter_power[j] = std::exp(-st.tap_delay_s[j] / decay);
        weight_sum += st.scatter_power[j];
    }
    for (int j = 0; j < env.n_taps; ++j) {
        st.scatter_power[j] *= scatter_total / weight_sum;
    }

    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < env.n_taps; ++j) {
        const double s = std::sqrt(st.scatter_power[j] / 2.0);
        st.scatter[j] = {s * gauss(st.rng), s * gauss(st.rng)};
    }
    st.shadowing_db = env.shadowing_sigma_db > 0.0 ? env.shadowing_sigma_db * gauss(st.rng) : 0.0;
    return st;
}

double coherence_time_s(double v_mps, double carrier_hz) {
    if (v_mps < 0.0) throw std::domain_error("velocity must be >= 0");
    if (carrier_hz <= 0.0) throw std::domain_error("carrier frequency must be > 0");
    if (v_mps == 0.0) return std::numeric_limits<double>::infinity();
    const double doppler_hz = v_mps * carrier_hz / kSpeedOfLight;
    return 0.423 / doppler_hz;
}

double path_loss_db(const EnvironmentSpec& env, double distance_m, bool* clamped) {
    constexpr double d0 = 1.0;
    if (clamped) *clamped = distance_m < d0;
    const double d = std::max(distance_m, d0);
    return env.pl0_db + 10.0 * env.path_loss_exponent * std::log10(d / d0);
}

FadingState evolve_fading(const FadingState& state, double dt_s, double v_mps,
                          double carrier_hz, const EnvironmentSpec& env) {
    if (dt_s <= 0.0) throw std::invalid_argument("dt must be > 0");

    FadingState next = state;
    const double doppler_hz = v_mps * carrier_hz / kSpeedOfLight;
    const double rho = std::cyl_bessel_j(0.0, 2.0 * M_PI * doppler_hz * dt_s);
    const double innov = std::sqrt(std::max(0.0, 1.0 - rho * rho));

    std::normal_distribution<double> gauss(0.0, 1.0);
    for (size_t j = 0; j < next.scatter.size(); ++j) {
        const double s = std::sqrt(next.scatter_power[j] / 2.0);
        const std::complex<double> w{s * gauss(next.rng), s * gauss(next.rng)};
        next.scatter[j] = rho * next.scatter[j] + innov * w;
    }

    if (env.shadowing_sigma_db > 0.0) {
        const double rho_sh = std::exp(-(v_mps * dt_s) / env.shadowing_decorrelation_m);
        const double innov_sh = std::sqrt(std::max(0.0, 1.0 - rho_sh * rho_sh));
        next.shadowing_db =
            rho_sh * next.shadowing_db + innov_sh * env.shadowing_sigma_db * gauss(next.rng);
    }
    return next;
}

ChannelState render_csi(const FadingState& state, const EnvironmentSpec& env,
                        double distance_m, double est_noise_sigma, const LinkBudget& link,
                        std::mt19937_64& noise_rng, double timestamp_s, int n_subcarriers) {
    ChannelState ch;
    ch.timestamp_s = timestamp_s;
    ch.csi.resize(n_subcarriers);

    const double pl = path_loss_db(env, distance_m);
    const double gain = std::pow(10.0, -(pl + state.shadowing_db) / 20.0);

    double power_sum = 0.0;
    double mag_sum = 0.0;
    for (int k = 0; k < n_subcarriers; ++k) {
        std::complex<double> h{0.0, 0.0};
        for (size_t j = 0; j < state.scatter.size(); ++j) {
            std::complex<double> tap = state.scatter[j];
            if (j == 0) tap += state.los_amplitude;
            const double phase = -2.0 * M_PI * k * kSubcarrierSpacingHz * state.tap_delay_s[j];
            h += tap * std::polar(1.0, phase);
        }
        ch.csi[k] = h * gain;
        power_sum += std::norm(ch.csi[k]);
        mag_sum += std::abs(ch.csi[k]);
    }

    const double mean_power = std::max(power_sum / n_subcarriers, 1e-30);
    ch.rssi_dbm = link.tx_power_dbm + 10.0 * std::log10(mean_power);

    if (est_noise_sigma > 0.0) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double sigma = est_noise_sigma * (mag_sum / n_subcarriers);
        for (int k = 0; k < n_subcarriers; ++k) {
            ch.csi[k] += std::complex<double>{sigma * gauss(noise_rng), sigma * gauss(noise_rng)};
        }
    }
    return ch;
}

bool reciprocity_valid(double frame_gap_s, double v_mps, double carrier_hz) {
    if (frame_gap_s < 0.0) throw std::domain_error("frame gap must be >= 0");
    return frame_gap_s < coherence_time_s(v_mps, carrier_hz);
}

}  // namespace staterate
