#include "staterate/flightsim.hpp"

#include <random>
#include <stdexcept>

namespace staterate {

TrajectoryKind trajectory_kind_from_string(const std::string& s) {
    if (s == "hover") return TrajectoryKind::Hover;
    if (s == "constant_velocity") return TrajectoryKind::ConstantVelocity;
    if (s == "variable_back_and_forth") return TrajectoryKind::VariableBackAndForth;
    if (s == "random") return TrajectoryKind::Random;
    throw std::invalid_argument("unknown trajectory kind: " + s);
}

std::string to_string(TrajectoryKind kind) {
    switch (kind) {
        case TrajectoryKind::Hover: return "hover";
        case TrajectoryKind::ConstantVelocity: return "constant_velocity";
        case TrajectoryKind::VariableBackAndForth: return "variable_back_and_forth";
        case TrajectoryKind::Random: return "random";
    }
    return "?";
}

namespace {

void validate(const TrajectorySpec& spec, double dt_s) {
    if (spec.duration_s <= 0.0) throw std::invalid_argument("trajectory duration must be > 0");
    if (spec.height_m <= 0.0) throw std::invalid_argument("trajectory height must be > 0");
    if (spec.drift_sigma_m < 0.0) throw std::invalid_argument("drift_sigma must be >= 0");
    if (dt_s <= 0.0) throw std::invalid_argument("dt must be > 0");
    if (dt_s > spec.duration_s) throw std::invalid_argument("dt must not exceed duration");
    if (spec.max_speed_mps <= 0.0) throw std::invalid_argument("max_speed must be > 0");
}

}  // namespace

std::vector<FlightState> generate_trajectory(const TrajectorySpec& spec, double dt_s) {
    validate(spec, dt_s);

    const int n = static_cast<int>(std::ceil(spec.duration_s / dt_s));
    std::vector<FlightState> out;
    out.reserve(n);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Vec3 pos;
    Vec3 vel;
    const Vec3 anchor{spec.hover_distance_m, 0.0, spec.height_m};

    // drive strength giving stationary Var(pos) = drift_sigma^2 per axis
    const double drift_drive =
        spec.drift_sigma_m * std::sqrt(2.0 * spec.hover.spring * spec.hover.damping);

    // random kind: piecewise-constant acceleration, redrawn every 1-3 s
    Vec3 segment_acc;
    double segment_left_s = 0.0;

    switch (spec.kind) {
        case TrajectoryKind::Hover:
            pos = anchor;
            break;
        case TrajectoryKind::ConstantVelocity:
            pos = {spec.start_distance_m, 0.0, spec.height_m};
            vel = {spec.cruise_speed_mps, 0.0, 0.0};
            break;
        case TrajectoryKind::VariableBackAndForth:
            pos = {spec.start_distance_m, 0.0, spec.height_m};
            break;
        case TrajectoryKind::Random:
            pos = {20.0, 0.0, spec.height_m};
            break;
    }

    const double omega = 2.0 * M_PI / spec.period_s;
    const double line_amp = 0.5 * (spec.far_distance_m - spec.start_distance_m);

    for (int i = 0; i < n; ++i) {
        const double t = i * dt_s;

        Vec3 acc;
        switch (spec.kind) {
            case TrajectoryKind::Hover: {
                if (spec.drift_sigma_m > 0.0) {
                    const Vec3 off = pos - anchor;
                    const double noise_scale = drift_drive / std::sqrt(dt_s);
                    acc = off * (-spec.hover.spring) + vel * (-spec.hover.damping) +
                          Vec3{gauss(rng), gauss(rng), gauss(rng)} * noise_scale;
                }
                break;
            }
            case TrajectoryKind::ConstantVelocity:
                break;  // acc stays zero
            case TrajectoryKind::VariableBackAndForth:
                // x(t) = start + amp*(1 - cos(w t)); integrate its acceleration
                acc = {line_amp * omega * omega * std::cos(omega * t), 0.0, 0.0};
                break;
            case TrajectoryKind::Random: {
                if (segment_left_s <= 0.0) {
                    segment_left_s = 1.0 + 2.0 * unit(rng);
                    const double heading = 2.0 * M_PI * unit(rng);
                    const double mag = 0.5 + 2.0 * unit(rng);
                    const double vertical = 0.3 * mag * (2.0 * unit(rng) - 1.0);
                    segment_acc = {mag * std::cos(heading), mag * std::sin(heading), vertical};
                }
                segment_left_s -= dt_s;
                acc = segment_acc;
                // soft containment: horizontal radius and height band
                const double r = std::sqrt(pos.x * pos.x + pos.y * pos.y);
                if (r > spec.containment_radius_m && r > 0.0) {
                    const double pull = 0.5 * (r - spec.containment_radius_m);
                    acc.x -= pull * pos.x / r;
                    acc.y -= pull * pos.y / r;
                }
                if (pos.z < 0.5 * spec.height_m) acc.z += 0.5 * (0.5 * spec.height_m - pos.z);
                if (pos.z > 1.5 * spec.height_m) acc.z -= 0.5 * (pos.z - 1.5 * spec.height_m);
                break;
            }
        }

        Vec3 vel_next = vel + acc * dt_s;
        const double speed_next = vel_next.norm();
        if (speed_next > spec.max_speed_mps) {
            vel_next = vel_next * (spec.max_speed_mps / speed_next);
        }
        const Vec3 acc_eff = (vel_next - vel) * (1.0 / dt_s);

        FlightState st;
        st.timestamp_s = t;
        st.position_m = pos;
        st.distance_m = pos.norm();
        st.speed_mps = vel.norm();
        st.accel_mps2 = acc_eff.norm();
        out.push_back(st);

        pos = pos + vel * dt_s;
        vel = vel_next;
    }
    return out;
}

std::vector<FlightState> sample_sensors(const std::vector<FlightState>& states,
                                        double sensor_rate_hz,
                                        const SensorNoiseSpec& noise) {
    if (states.empty()) return {};
    if (sensor_rate_hz <= 0.0) throw std::invalid_argument("sensor_rate must be > 0");

    double src_dt = 0.0;
    if (states.size() > 1) {
        src_dt = (states.back().timestamp_s - states.front().timestamp_s) /
                 static_cast<double>(states.size() - 1);
    }
    const double src_rate = src_dt > 0.0 ? 1.0 / src_dt : sensor_rate_hz;
    if (sensor_rate_hz > src_rate * (1.0 + 1e-9)) {
        throw std::invalid_argument("sensor_rate exceeds the input state rate");
    }

    const int stride = std::max(1, static_cast<int>(std::llround(src_rate / sensor_rate_hz)));

    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<FlightState> out;
    out.reserve(states.size() / stride + 1);
    for (size_t i = 0; i < states.size(); i += stride) {
        FlightState st = states[i];
        st.speed_mps = std::max(0.0, st.speed_mps + noise.sigma_v * gauss(rng));
        st.distance_m = std::max(0.0, st.distance_m + noise.sigma_d * gauss(rng));
        st.accel_mps2 = std::max(0.0, st.accel_mps2 + noise.sigma_a * gauss(rng));
        out.push_back(st);
    }
    return out;
}

}  // namespace staterate
