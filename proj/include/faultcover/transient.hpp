#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace faultcover {

inline constexpr double kGravity = 9.81;       // m/s^2
inline constexpr double kWaterDensity = 1000;  // kg/m^3

/// Discretized pipe for the characteristics scheme. The grid is built from
/// the Courant condition: the time step is exactly dx / wave_speed.
struct PipeParams {
    double length_m = 0.0;
    double diameter_m = 0.0;
    double wave_speed_m_s = 0.0;
    double friction = 0.0;     // friction factor c
    std::size_t segments = 2;  // spatial intervals, >= 2

    double area() const;        // pi d^2 / 4
    double dx() const { return length_m / static_cast<double>(segments); }
    double dt() const { return dx() / wave_speed_m_s; }
    double impedance() const;   // b = a / (g A), transient-state coefficient
    double resistance() const;  // r = c dx / (2 g D A^2), steady-state coefficient

    void validate() const;  // throws std::invalid_argument
};

/// Heads and flows over one characteristics grid at one time step.
struct GridState {
    std::vector<double> head_m;
    std::vector<double> flow_m3s;
    std::uint64_t step = 0;
};

/// Orifice opening at one grid point. The area series is indexed by time
/// step and must be zero before the burst onset; it is padded with its last
/// value past the end.
struct BurstSpec {
    std::size_t grid_index = 0;
    double discharge_coefficient = 0.0;
    std::vector<double> orifice_area_m2;

    double area_at(std::uint64_t step) const;
};

/// Advance the interior points one step along the characteristic lines,
/// with explicit impedance and resistance coefficients. Boundary points
/// (first and last) are carried over unchanged; the caller supplies boundary
/// conditions separately. With zero impedance the scheme degenerates to the
/// steady state and flows are carried over as-is.
GridState step_characteristics(const GridState& prev, double impedance, double resistance);

/// step_characteristics with the pipe's own coefficients.
GridState step_interior(const GridState& prev, const PipeParams& params);

/// Head at a bursting grid point: the orifice head-flow relation
/// h + (b/2) Cd Ad sqrt(2 g h) = (C_M + C_P) / 2 solved for its
/// non-negative root via u = sqrt(h). With Ad = 0 this equals the plain
/// interior update. Throws std::runtime_error when (C_M + C_P)/2 < 0
/// (no non-negative head exists).
double apply_burst_boundary(const GridState& prev, const PipeParams& params,
                            std::size_t grid_index, double discharge_coefficient,
                            double orifice_area_m2);

struct SensorSpec {
    std::size_t grid_index = 0;
    double elevation_m = 0.0;
};

/// Pressure trace and thresholded output of one monitoring point.
/// `pressure_pa[t] = (head[t] - elevation) * rho * g`; the boolean output
/// compares |p - p_expected| against the threshold and latches: one
/// exceedance at any step after the start makes `triggered` true.
struct SensorReading {
    std::size_t grid_index = 0;
    double elevation_m = 0.0;
    std::vector<double> pressure_pa;
    std::vector<bool> output;  // per step
    bool triggered = false;
};

/// Scenario: pipes in series sharing one Courant-compatible time step,
/// fixed-head reservoirs at both ends, an optional burst, and monitoring
/// points. The initial condition is the steady profile for `initial_flow`
/// unless a right head override forces a startup transient.
struct Scenario {
    std::vector<PipeParams> pipes;
    double left_head_m = 0.0;
    std::optional<double> right_head_m;  // default: steady profile end value
    double initial_flow_m3s = 0.0;
    std::optional<BurstSpec> burst;
    std::uint64_t horizon_steps = 0;
    std::vector<SensorSpec> sensors;
    double threshold_pa = 0.0;  // detection threshold on |p - p_expected|
};

Scenario parse_scenario(const std::string& text);

struct SimulationResult {
    std::vector<SensorReading> readings;
    std::vector<GridState> history;  // index 0 = initial state
    double dt_s = 0.0;
};

/// Time-march the scenario over the full horizon. Throws std::runtime_error
/// on instability (non-finite state) or an unphysical burst head, and
/// std::invalid_argument on inconsistent grids.
SimulationResult simulate(const Scenario& scenario);

/// The steady-state head profile for a uniform flow: heads drop by
/// r q |q| per segment from the left boundary head.
std::vector<double> steady_head_profile(const std::vector<PipeParams>& pipes,
                                        double left_head_m, double flow_m3s);

}  // namespace faultcover
