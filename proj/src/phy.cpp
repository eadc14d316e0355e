#include "staterate/phy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace staterate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kDataSubcarriers = 48;
constexpr double kSymbolTimeUs = 4.0;

std::array<McsEntry, kNumRates> build_table() {
    struct Row {
        Modulation mod;
        int num, den, bits;
    };
    const Row rows[kNumRates] = {
        {Modulation::Bpsk, 1, 2, 1},  {Modulation::Bpsk, 3, 4, 1},
        {Modulation::Qpsk, 1, 2, 2},  {Modulation::Qpsk, 3, 4, 2},
        {Modulation::Qam16, 1, 2, 4}, {Modulation::Qam16, 3, 4, 4},
        {Modulation::Qam64, 2, 3, 6}, {Modulation::Qam64, 3, 4, 6},
    };
    const PhyConfig defaults;
    std::array<McsEntry, kNumRates> table;
    for (int i = 0; i < kNumRates; ++i) {
        McsEntry& e = table[i];
        e.index = i;
        e.modulation = rows[i].mod;
        e.code_rate_num = rows[i].num;
        e.code_rate_den = rows[i].den;
        e.bits_per_symbol = rows[i].bits;
        e.data_rate_mbps = kDataSubcarriers * rows[i].bits *
                           (static_cast<double>(rows[i].num) / rows[i].den) / kSymbolTimeUs;
        e.snr_threshold_db = defaults.snr_thresholds_db[i];
    }
    return table;
}

void check_mcs(int mcs) {
    if (mcs < 0 || mcs >= kNumRates) throw std::invalid_argument("MCS index out of range");
}

// BER(mod, g) = coeff * Q(sqrt(scale * g)), standard Gray-coded approximations
struct BerCurve {
    double coeff;
    double scale;
};

BerCurve ber_curve(Modulation mod) {
    switch (mod) {
        case Modulation::Bpsk: return {1.0, 2.0};
        case Modulation::Qpsk: return {1.0, 1.0};
        case Modulation::Qam16: return {0.75, 1.0 / 5.0};
        case Modulation::Qam64: return {7.0 / 12.0, 1.0 / 21.0};
    }
    return {1.0, 2.0};
}

// log Q(x), switching to the asymptotic expansion where erfc underflows
double log_q(double x) {
    if (x < 25.0) return std::log(0.5 * std::erfc(x / std::sqrt(2.0)));
    const double x2 = x * x;
    return -0.5 * x2 - std::log(x) - 0.5 * std::log(2.0 * M_PI) +
           std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

// log(mean_k exp(log_vals_k)) without underflow
double log_mean_exp(const std::vector<double>& log_vals) {
    double m = -kInf;
    for (double v : log_vals) m = std::max(m, v);
    if (std::isinf(m)) return -kInf;
    double s = 0.0;
    for (double v : log_vals) s += std::exp(v - m);
    return m + std::log(s / log_vals.size());
}

}  // namespace

const std::array<McsEntry, kNumRates>& mcs_table() {
    static const std::array<McsEntry, kNumRates> table = build_table();
    return table;
}

Label one_hot(int mcs) {
    check_mcs(mcs);
    Label l{};
    l[mcs] = 1.0;
    return l;
}

int argmax_rate(const std::array<double, kNumRates>& weights) {
    int best = 0;
    for (int i = 1; i < kNumRates; ++i) {
        if (weights[i] > weights[best]) best = i;
    }
    return best;
}

std::vector<double> subcarrier_snr_db(const ChannelState& ch, double tx_power_dbm,
                                      double noise_floor_dbm) {
    std::vector<double> snr(ch.csi.size());
    for (size_t k = 0; k < ch.csi.size(); ++k) {
        const double mag = std::abs(ch.csi[k]);
        snr[k] = mag > 0.0 ? tx_power_dbm + 20.0 * std::log10(mag) - noise_floor_dbm : -kInf;
    }
    return snr;
}

double log_ber(Modulation mod, double snr_linear) {
    const BerCurve c = ber_curve(mod);
    return std::log(c.coeff) + log_q(std::sqrt(c.scale * std::max(0.0, snr_linear)));
}

double esnr_db(const ChannelState& ch, Modulation mod, const PhyConfig& cfg) {
    if (ch.csi.empty()) throw std::invalid_argument("empty CSI");
    const double gain0 =
        std::pow(10.0, (cfg.link.tx_power_dbm - cfg.link.noise_floor_dbm) / 10.0);

    std::vector<double> log_bers(ch.csi.size());
    double max_power = 0.0;
    for (size_t k = 0; k < ch.csi.size(); ++k) {
        const double p = std::norm(ch.csi[k]);
        max_power = std::max(max_power, p);
        log_bers[k] = log_ber(mod, gain0 * p);
    }
    if (max_power == 0.0) return -kInf;

    const double target = log_mean_exp(log_bers);
    // invert the same curve: log_ber is strictly decreasing in SNR
    double lo = -60.0, hi = 120.0;
    if (log_ber(mod, std::pow(10.0, lo / 10.0)) <= target) return -kInf;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (log_ber(mod, std::pow(10.0, mid / 10.0)) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double esnr_db(const ChannelState& ch, int mcs, const PhyConfig& cfg) {
    check_mcs(mcs);
    return esnr_db(ch, mcs_table()[mcs].modulation, cfg);
}

double per_from_esnr(double esnr, int mcs, const PhyConfig& cfg) {
    check_mcs(mcs);
    if (std::isinf(esnr)) return esnr > 0 ? 0.0 : 1.0;
    const double x = cfg.per_slope_per_db * (esnr - cfg.snr_thresholds_db[mcs]);
    return 1.0 / (1.0 + std::exp(x));
}

double packet_error_rate(int mcs, const ChannelState& ch, int payload_bits,
                         const PhyConfig& cfg) {
    if (payload_bits <= 0) throw std::invalid_argument("payload_bits must be > 0");
    return per_from_esnr(esnr_db(ch, mcs, cfg), mcs, cfg);
}

double airtime_s(int mcs, int payload_bits, const PhyConfig& cfg) {
    check_mcs(mcs);
    return cfg.preamble_us * 1e-6 + payload_bits / (mcs_table()[mcs].data_rate_mbps * 1e6);
}

TransmissionRecord simulate_tx(int mcs, const ChannelState& ch, int payload_bits,
                               const PhyConfig& cfg, std::mt19937_64& rng, int frame_index) {
    const double per = packet_error_rate(mcs, ch, payload_bits, cfg);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    TransmissionRecord rec;
    rec.frame_index = frame_index;
    rec.mcs = mcs;
    rec.success = unit(rng) >= per;
    rec.payload_bits = payload_bits;
    rec.airtime_s = airtime_s(mcs, payload_bits, cfg);
    return rec;
}

int optimal_mcs(const ChannelState& ch, const PhyConfig& cfg) {
    // one ESNR per modulation covers all 8 rates
    double esnr_by_mod[4];
    esnr_by_mod[0] = esnr_db(ch, Modulation::Bpsk, cfg);
    esnr_by_mod[1] = esnr_db(ch, Modulation::Qpsk, cfg);
    esnr_by_mod[2] = esnr_db(ch, Modulation::Qam16, cfg);
    esnr_by_mod[3] = esnr_db(ch, Modulation::Qam64, cfg);
    for (int i = kNumRates - 1; i >= 0; --i) {
        const double esnr = esnr_by_mod[static_cast<int>(mcs_table()[i].modulation)];
        if (per_from_esnr(esnr, i, cfg) < 0.10) return i;
    }
    return 0;
}

double throughput_mbps(const std::vector<TransmissionRecord>& records) {
    if (records.empty()) throw std::invalid_argument("throughput of an empty record set");
    double bits = 0.0, time_s = 0.0;
    for (const auto& r : records) {
        if (r.success) bits += static_cast<double>(r.payload_bits);
        time_s += r.airtime_s;
    }
    return bits / time_s / 1e6;
}

}  // namespace staterate
