#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace staterate {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Motion state of the UAV at one instant. The receiver sits at the origin,
// so distance_m is the 3D transmitter-receiver separation.
struct FlightState {
    double timestamp_s = 0.0;
    Vec3 position_m;
    double distance_m = 0.0;
    double speed_mps = 0.0;
    double accel_mps2 = 0.0;
};

enum class TrajectoryKind { Hover, ConstantVelocity, VariableBackAndForth, Random };

TrajectoryKind trajectory_kind_from_string(const std::string& s);
std::string to_string(TrajectoryKind kind);

// Spring/damper constants for the mean-reverting hover drift. The white-noise
// drive is scaled so the stationary position std equals drift_sigma_m.
struct HoverDynamics {
    double spring = 1.0;   // 1/s^2
    double damping = 1.2;  // 1/s
};

struct TrajectorySpec {
    TrajectoryKind kind = TrajectoryKind::Hover;
    double duration_s = 60.0;
    double height_m = 25.0;
    double hover_distance_m = 10.0;  // horizontal anchor distance for hover
    double cruise_speed_mps = 5.0;   // constant-velocity kind
    double start_distance_m = 5.0;   // line start (constant velocity / back-and-forth)
    double far_distance_m = 55.0;    // line end for back-and-forth
    double period_s = 20.0;          // back-and-forth cycle time
    double max_speed_mps = 10.0;     // hard speed cap, all kinds
    double drift_sigma_m = 0.0;      // hover drift scale (stationary position std)
    double containment_radius_m = 80.0;  // random kind: soft horizontal bound
    HoverDynamics hover;
    uint64_t seed = 0;
};

struct SensorNoiseSpec {
    double sigma_v = 0.1;  // m/s
    double sigma_d = 0.5;  // m
    double sigma_a = 0.2;  // m/s^2
    uint64_t seed = 0;
};

// Samples the trajectory at fixed dt. Velocity and acceleration magnitudes are
// exactly the finite differences of the emitted positions/velocities, so
// downstream consumers can trust the kinematic relation at any dt.
std::vector<FlightState> generate_trajectory(const TrajectorySpec& spec, double dt_s);

// Decimates a frame-rate state stream to the (lower) sensor rate and adds
// Gaussian measurement noise to v, a, d. Timestamps come from the kept states.
std::vector<FlightState> sample_sensors(const std::vector<FlightState>& states,
                                        double sensor_rate_hz,
                                        const SensorNoiseSpec& noise);

}  // namespace staterate
