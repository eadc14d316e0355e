#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace staterate {

inline constexpr double kSpeedOfLight = 3.0e8;  // m/s
inline constexpr int kNumSubcarriers = 52;
inline constexpr double kSubcarrierSpacingHz = 312.5e3;  // 20 MHz OFDM numerology

// RSSI/SNR reference. With these constants SNR = rssi - noise_floor.
struct LinkBudget {
    double tx_power_dbm = 20.0;
    double noise_floor_dbm = -90.0;
};

// Per-frame channel measurement. csi carries the estimation noise the
// transmitter actually sees; rssi is derived from the noiseless gains.
struct ChannelState {
    std::vector<std::complex<double>> csi;  // per-subcarrier complex gain, linear
    double rssi_dbm = 0.0;
    double timestamp_s = 0.0;
};

struct EnvironmentSpec {
    std::string name = "square";
    double path_loss_exponent = 2.0;
    double pl0_db = 58.0;  // path loss at d0 = 1 m
    double shadowing_sigma_db = 1.0;
    double shadowing_decorrelation_m = 25.0;
    double rician_k_db = 10.0;
    int n_taps = 2;
    double tap_delay_spread_s = 150e-9;
};

// square / playground / pool / grove
EnvironmentSpec environment_preset(const std::string& name);

// Carrier of the frame-to-frame temporal correlation. `scatter` holds the
// diffuse part of each tap; the Rician mean of tap 0 is kept separately so it
// never decorrelates.
struct FadingState {
    std::vector<std::complex<double>> scatter;
    std::vector<double> scatter_power;  // stationary E|scatter_j|^2
    std::vector<double> tap_delay_s;
    double los_amplitude = 0.0;
    double shadowing_db = 0.0;
    std::mt19937_64 rng{0};
};

FadingState init_fading(const EnvironmentSpec& env, uint64_t seed);

// T_m = 0.423/f_m with f_m = v*f_c/c. Returns +infinity for v = 0.
double coherence_time_s(double v_mps, double carrier_hz);

// Log-distance path loss, shadowing excluded. d below 1 m clamps; the optional
// flag reports that a clamp happened.
double path_loss_db(const EnvironmentSpec& env, double distance_m, bool* clamped = nullptr);

// Advances every diffuse tap by a Gauss-Markov step with lag-1 correlation
// J0(2*pi*f_m*dt), and the shadowing by a distance-based AR(1).
FadingState evolve_fading(const FadingState& state, double dt_s, double v_mps,
                          double carrier_hz, const EnvironmentSpec& env);

// Renders per-subcarrier CSI from the tap state, applies path loss plus
// shadowing, adds complex Gaussian estimation noise of per-component sigma
// est_noise_sigma * mean(|csi|). rssi always comes from the noiseless gains.
ChannelState render_csi(const FadingState& state, const EnvironmentSpec& env,
                        double distance_m, double est_noise_sigma, const LinkBudget& link,
                        std::mt19937_64& noise_rng, double timestamp_s = 0.0,
                        int n_subcarriers = kNumSubcarriers);

// True iff the feedback delay is below the coherence time.
bool reciprocity_valid(double frame_gap_s, double v_mps, double carrier_hz);

}  // namespace staterate
