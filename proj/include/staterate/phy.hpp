#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "staterate/channel.hpp"

namespace staterate {

inline constexpr int kNumRates = 8;

enum class Modulation { Bpsk, Qpsk, Qam16, Qam64 };

struct McsEntry {
    int index = 0;
    Modulation modulation = Modulation::Bpsk;
    int code_rate_num = 1;
    int code_rate_den = 2;
    int bits_per_symbol = 1;
    double data_rate_mbps = 6.0;
    double snr_threshold_db = 2.0;  // PER-curve midpoint
};

// The 8-rate 802.11a/g set: BPSK/QPSK/16QAM at 1/2 and 3/4, 64QAM at 2/3 and
// 3/4. Rates follow 48 data subcarriers x bits x code rate / 4 us symbol.
const std::array<McsEntry, kNumRates>& mcs_table();

struct PhyConfig {
    LinkBudget link;
    double per_slope_per_db = 2.0;
    std::array<double, kNumRates> snr_thresholds_db = {2, 5, 8, 11, 15, 19, 22, 25};
    int payload_bytes = 1500;
    double preamble_us = 60.0;
};

struct TransmissionRecord {
    int frame_index = 0;
    int mcs = 0;
    bool success = false;
    long payload_bits = 0;
    double airtime_s = 0.0;
};

using Label = std::array<double, kNumRates>;

Label one_hot(int mcs);
int argmax_rate(const std::array<double, kNumRates>& weights);  // ties -> lower index

// Per-subcarrier SNR in dB; a zero-magnitude subcarrier yields -infinity.
std::vector<double> subcarrier_snr_db(const ChannelState& ch, double tx_power_dbm,
                                      double noise_floor_dbm);

// Effective SNR: average the per-subcarrier uncoded BER of the modulation and
// invert the same BER curve back to dB. All-zero CSI yields -infinity.
double esnr_db(const ChannelState& ch, Modulation mod, const PhyConfig& cfg);
double esnr_db(const ChannelState& ch, int mcs, const PhyConfig& cfg);

// Logistic PER around the per-rate threshold: 1/(1+exp(s*(esnr-thr))).
double per_from_esnr(double esnr, int mcs, const PhyConfig& cfg);
double packet_error_rate(int mcs, const ChannelState& ch, int payload_bits, const PhyConfig& cfg);

TransmissionRecord simulate_tx(int mcs, const ChannelState& ch, int payload_bits,
                               const PhyConfig& cfg, std::mt19937_64& rng, int frame_index = 0);

// Highest-index MCS whose PER stays below 10%; index 0 if none qualifies.
int optimal_mcs(const ChannelState& ch, const PhyConfig& cfg);

double airtime_s(int mcs, int payload_bits, const PhyConfig& cfg);
double throughput_mbps(const std::vector<TransmissionRecord>& records);

// log of the uncoded AWGN BER at linear SNR, used by the ESNR inversion
double log_ber(Modulation mod, double snr_linear);

}  // namespace staterate
