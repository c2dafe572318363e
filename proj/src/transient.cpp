#include "faultcover/transient.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace faultcover {

namespace {

constexpr double kPi = 3.14159265358979323846;

double characteristic_term(double head, double flow, double b, double r, int sign) {
    // C_P (sign +1) or C_M (sign -1) of the compatibility equations.
    return head + sign * flow * (b - r * std::abs(flow));
}

}  // namespace

double PipeParams::area() const { return kPi * diameter_m * diameter_m / 4.0; }

double PipeParams::impedance() const { return wave_speed_m_s / (kGravity * area()); }

double PipeParams::resistance() const {
    return friction * dx() / (2.0 * kGravity * diameter_m * area() * area());
}

void PipeParams::validate() const {
    if (!(length_m > 0.0)) throw std::invalid_argument("pipe length must be positive");
    if (!(diameter_m > 0.0)) throw std::invalid_argument("pipe diameter must be positive");
    if (!(wave_speed_m_s > 0.0)) throw std::invalid_argument("wave speed must be positive");
    if (friction < 0.0) throw std::invalid_argument("friction must be non-negative");
    if (segments < 2) throw std::invalid_argument("pipe needs at least 2 segments");
}

double BurstSpec::area_at(std::uint64_t step) const {
    if (orifice_area_m2.empty()) return 0.0;
    if (step < orifice_area_m2.size()) return orifice_area_m2[step];
    return orifice_area_m2.back();
}

GridState step_characteristics(const GridState& prev, double impedance, double resistance) {
    const std::size_t points = prev.head_m.size();
    if (points < 3 || prev.flow_m3s.size() != points)
        throw std::invalid_argument("grid state needs matching head/flow arrays of >= 3 points");

    GridState next = prev;
    next.step = prev.step + 1;
    for (std::size_t i = 1; i + 1 < points; ++i) {
        const double cp = characteristic_term(prev.head_m[i - 1], prev.flow_m3s[i - 1],
                                              impedance, resistance, +1);
        const double cm = characteristic_term(prev.head_m[i + 1], prev.flow_m3s[i + 1],
                                              impedance, resistance, -1);
        next.head_m[i] = 0.5 * (cp + cm);
        // b = 0 degenerates to the steady state; flow is carried over.
        next.flow_m3s[i] =
            impedance > 0.0 ? (next.head_m[i] - cm) / impedance : prev.flow_m3s[i];
    }
    return next;
}

GridState step_interior(const GridState& prev, const PipeParams& params) {
    if (prev.head_m.size() != params.segments + 1)
        throw std::invalid_argument("grid state does not match the pipe discretization");
    return step_characteristics(prev, params.impedance(), params.resistance());
}

double apply_burst_boundary(const GridState& prev, const PipeParams& params,
                            std::size_t grid_index, double discharge_coefficient,
                            double orifice_area_m2) {
    if (grid_index == 0 || grid_index + 1 >= prev.head_m.size())
        throw std::invalid_argument("burst grid index must be an interior point");
    if (orifice_area_m2 < 0.0)
        throw std::invalid_argument("orifice area must be non-negative");

    const double b = params.impedance();
    const double r = params.resistance();
    const double cp = characteristic_term(prev.head_m[grid_index - 1],
                                          prev.flow_m3s[grid_index - 1], b, r, +1);
    const double cm = characteristic_term(prev.head_m[grid_index + 1],
                                          prev.flow_m3s[grid_index + 1], b, r, -1);
    const double mean_characteristic = 0.5 * (cp + cm);
    const double orifice_term =
        0.5 * b * discharge_coefficient * orifice_area_m2 * std::sqrt(2.0 * kGravity);

    if (mean_characteristic < 0.0)
        throw std::runtime_error("unphysical head at burst node: (C_M + C_P)/2 = " +
                                 std::to_string(mean_characteristic));
    if (orifice_term == 0.0) return mean_characteristic;
    // u^2 + orifice_term * u - mean_characteristic = 0, u = sqrt(h) >= 0.
    const double root =
        std::sqrt(orifice_term * orifice_term + 4.0 * mean_characteristic);
    const double u =
        mean_characteristic == 0.0 ? 0.0 : 2.0 * mean_characteristic / (orifice_term + root);
    return u * u;
}

std::vector<double> steady_head_profile(const std::vector<PipeParams>& pipes,
                                        double left_head_m, double flow_m3s) {
    std::vector<double> heads;
    heads.push_back(left_head_m);
    double head = left_head_m;
    for (const PipeParams& pipe : pipes) {
        const double drop = pipe.resistance() * flow_m3s * std::abs(flow_m3s);
        for (std::size_t s = 0; s < pipe.segments; ++s) {
            head -= drop;
            heads.push_back(head);
        }
    }
    return heads;
}

namespace {

// Series-of-pipes grid: pipes share junction points, one head/flow value per
// point, except that a bursting point carries distinct upstream and
// downstream flows (the orifice discharge leaves between them).
class SeriesStepper {
public:
    explicit SeriesStepper(const Scenario& scenario) : scenario_(scenario) {
        if (scenario.pipes.empty())
            throw std::invalid_argument("scenario needs at least one pipe");
        for (const PipeParams& p : scenario.pipes) p.validate();
        dt_ = scenario.pipes.front().dt();
        for (const PipeParams& p : scenario.pipes) {
            if (std::abs(p.dt() - dt_) > 1e-9 * dt_)
                throw std::invalid_argument(
                    "pipes have incompatible time steps; adjust segment counts so "
                    "dx / wave_speed matches");
        }

        // Map each point to the pipes on its left and right.
        std::size_t offset = 0;
        for (std::size_t p = 0; p < scenario.pipes.size(); ++p) {
            const std::size_t segs = scenario.pipes[p].segments;
            for (std::size_t local = 0; local <= segs; ++local) {
                const std::size_t global = offset + local;
                if (global >= left_pipe_.size()) {
                    left_pipe_.push_back(-1);
                    right_pipe_.push_back(-1);
                }
                if (local > 0) left_pipe_[global] = static_cast<int>(p);
                if (local < segs) right_pipe_[global] = static_cast<int>(p);
            }
            offset += segs;
        }
        points_ = left_pipe_.size();

        if (scenario.burst) {
            burst_index_ = scenario.burst->grid_index;
            if (*burst_index_ == 0 || *burst_index_ + 1 >= points_)
                throw std::invalid_argument("burst grid index must be an interior point");
            const double bl = scenario.pipes[left_pipe_[*burst_index_]].impedance();
            const double br = scenario.pipes[right_pipe_[*burst_index_]].impedance();
            if (std::abs(bl - br) > 1e-9 * std::max(bl, br))
                throw std::invalid_argument(
                    "burst at a junction of pipes with different impedance is not supported");
            for (double a : scenario.burst->orifice_area_m2)
                if (a < 0.0) throw std::invalid_argument("orifice area must be non-negative");
            burst_up_flow_ = scenario.initial_flow_m3s;
        }
        for (const SensorSpec& s : scenario.sensors)
            if (s.grid_index >= points_)
                throw std::invalid_argument("sensor grid index out of range");
    }

    std::size_t points() const { return points_; }
    double dt() const { return dt_; }

    GridState initial_state() const {
        GridState state;
        state.head_m = steady_head_profile(scenario_.pipes, scenario_.left_head_m,
                                           scenario_.initial_flow_m3s);
        if (scenario_.right_head_m) state.head_m.back() = *scenario_.right_head_m;
        state.flow_m3s.assign(points_, scenario_.initial_flow_m3s);
        return state;
    }

    GridState advance(const GridState& prev) {
        prev_up_flow_ = burst_up_flow_;
        GridState next;
        next.step = prev.step + 1;
        next.head_m.assign(points_, 0.0);
        next.flow_m3s.assign(points_, 0.0);

        for (std::size_t i = 0; i < points_; ++i) {
            if (burst_index_ && i == *burst_index_) {
                advance_burst(prev, next, i);
            } else if (i == 0) {
                advance_left_boundary(prev, next);
            } else if (i + 1 == points_) {
                advance_right_boundary(prev, next);
            } else {
                advance_interior(prev, next, i);
            }
        }

        for (double v : next.head_m)
            if (!std::isfinite(v)) throw std::runtime_error("transient instability: non-finite head");
        for (double v : next.flow_m3s)
            if (!std::isfinite(v)) throw std::runtime_error("transient instability: non-finite flow");
        return next;
    }

private:
    // Flow carried by the characteristic leaving point j toward its left
    // neighbor (the upstream side of a bursting point) or its right neighbor.
    double flow_toward_left(const GridState& s, std::size_t j) const {
        if (burst_index_ && j == *burst_index_) return prev_up_flow_;
        return s.flow_m3s[j];
    }
    double flow_toward_right(const GridState& s, std::size_t j) const {
        return s.flow_m3s[j];  // bursting points store the downstream flow
    }

    double c_plus(const GridState& prev, std::size_t i, const PipeParams& pipe) const {
        const double q = flow_toward_right(prev, i - 1);
        return characteristic_term(prev.head_m[i - 1], q, pipe.impedance(), pipe.resistance(), +1);
    }
    double c_minus(const GridState& prev, std::size_t i, const PipeParams& pipe) const {
        const double q = flow_toward_left(prev, i + 1);
        return characteristic_term(prev.head_m[i + 1], q, pipe.impedance(), pipe.resistance(), -1);
    }

    void advance_left_boundary(const GridState& prev, GridState& next) const {
        const PipeParams& pipe = scenario_.pipes[right_pipe_[0]];
        const double cm = c_minus(prev, 0, pipe);
        next.head_m[0] = prev.head_m[0];  // fixed reservoir head
        const double b = pipe.impedance();
        next.flow_m3s[0] = b > 0.0 ? (next.head_m[0] - cm) / b : prev.flow_m3s[0];
    }

    void advance_right_boundary(const GridState& prev, GridState& next) const {
        const std::size_t i = points_ - 1;
        const PipeParams& pipe = scenario_.pipes[left_pipe_[i]];
        const double cp = c_plus(prev, i, pipe);
        next.head_m[i] = prev.head_m[i];
        const double b = pipe.impedance();
        next.flow_m3s[i] = b > 0.0 ? (cp - next.head_m[i]) / b : prev.flow_m3s[i];
    }

    void advance_interior(const GridState& prev, GridState& next, std::size_t i) const {
        const PipeParams& left = scenario_.pipes[left_pipe_[i]];
        const PipeParams& right = scenario_.pipes[right_pipe_[i]];
        const double cp = c_plus(prev, i, left);
        const double cm = c_minus(prev, i, right);
        const double bl = left.impedance();
        const double br = right.impedance();
        if (bl + br > 0.0) {
            const double q = (cp - cm) / (bl + br);
            next.flow_m3s[i] = q;
            next.head_m[i] = cp - bl * q;
        } else {
            next.flow_m3s[i] = prev.flow_m3s[i];
            next.head_m[i] = 0.5 * (cp + cm);
        }
    }

    void advance_burst(const GridState& prev, GridState& next, std::size_t i) {
        const PipeParams& left = scenario_.pipes[left_pipe_[i]];
        const PipeParams& right = scenario_.pipes[right_pipe_[i]];
        const double b = left.impedance();
        const double cp = c_plus(prev, i, left);
        const double cm = c_minus(prev, i, right);
        const double mean_characteristic = 0.5 * (cp + cm);
        if (mean_characteristic < 0.0)
            throw std::runtime_error("unphysical head at burst node: (C_M + C_P)/2 = " +
                                     std::to_string(mean_characteristic));

        const double area = scenario_.burst->area_at(next.step);
        const double orifice_term = 0.5 * b * scenario_.burst->discharge_coefficient * area *
                                    std::sqrt(2.0 * kGravity);
        double head = mean_characteristic;
        if (orifice_term > 0.0 && mean_characteristic > 0.0) {
            const double root =
                std::sqrt(orifice_term * orifice_term + 4.0 * mean_characteristic);
            const double u = 2.0 * mean_characteristic / (orifice_term + root);
            head = u * u;
        }
        next.head_m[i] = head;
        // The solved head fixes both characteristic flows; their difference
        // is the orifice discharge.
        if (b > 0.0) {
            burst_up_flow_ = (cp - head) / b;
            next.flow_m3s[i] = (head - cm) / b;
        } else {
            burst_up_flow_ = prev.flow_m3s[i];
            next.flow_m3s[i] = prev.flow_m3s[i];
        }
    }

    const Scenario& scenario_;
    std::size_t points_ = 0;
    double dt_ = 0.0;
    std::vector<int> left_pipe_;
    std::vector<int> right_pipe_;
    std::optional<std::size_t> burst_index_;
    double burst_up_flow_ = 0.0;   // upstream-side flow at the burst point
    double prev_up_flow_ = 0.0;    // same, frozen at the start of each advance
};

}  // namespace

SimulationResult simulate(const Scenario& scenario) {
    if (!(scenario.threshold_pa > 0.0))
        throw std::invalid_argument("detection threshold must be positive");
    SeriesStepper stepper(scenario);

    SimulationResult result;
    result.dt_s = stepper.dt();
    result.history.reserve(scenario.horizon_steps + 1);
    result.history.push_back(stepper.initial_state());
    for (std::uint64_t t = 0; t < scenario.horizon_steps; ++t)
        result.history.push_back(stepper.advance(result.history.back()));

    for (const SensorSpec& spec : scenario.sensors) {
        SensorReading reading;
        reading.grid_index = spec.grid_index;
        reading.elevation_m = spec.elevation_m;
        reading.pressure_pa.reserve(result.history.size());
        reading.output.reserve(result.history.size());
        const double expected =
            (result.history.front().head_m[spec.grid_index] - spec.elevation_m) *
            kWaterDensity * kGravity;
        for (std::size_t t = 0; t < result.history.size(); ++t) {
            const double pressure =
                (result.history[t].head_m[spec.grid_index] - spec.elevation_m) *
                kWaterDensity * kGravity;
            reading.pressure_pa.push_back(pressure);
            const bool exceeded = std::abs(pressure - expected) >= scenario.threshold_pa;
            reading.output.push_back(exceeded);
            if (t > 0 && exceeded) reading.triggered = true;
        }
        result.readings.push_back(std::move(reading));
    }
    return result;
}

Scenario parse_scenario(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed scenario document: ") + e.what());
    }

    Scenario scenario;
    try {
        for (const auto& jp : doc.at("pipes")) {
            PipeParams pipe;
            pipe.length_m = jp.at("length_m").get<double>();
            pipe.diameter_m = jp.at("diameter_m").get<double>();
            pipe.wave_speed_m_s = jp.at("wave_speed_m_s").get<double>();
            pipe.friction = jp.value("friction", 0.0);
            pipe.segments = jp.at("segments").get<std::size_t>();
            scenario.pipes.push_back(pipe);
        }
        scenario.left_head_m = doc.at("left_head_m").get<double>();
        if (doc.contains("right_head_m") && !doc.at("right_head_m").is_null())
            scenario.right_head_m = doc.at("right_head_m").get<double>();
        scenario.initial_flow_m3s = doc.value("initial_flow_m3s", 0.0);
        scenario.horizon_steps = doc.at("horizon_steps").get<std::uint64_t>();
        scenario.threshold_pa = doc.at("threshold_pa").get<double>();
        for (const auto& js : doc.value("sensors", nlohmann::json::array())) {
            SensorSpec sensor;
            sensor.grid_index = js.at("grid_index").get<std::size_t>();
            sensor.elevation_m = js.value("elevation_m", 0.0);
            scenario.sensors.push_back(sensor);
        }
        if (doc.contains("burst") && !doc.at("burst").is_null()) {
            const auto& jb = doc.at("burst");
            BurstSpec burst;
            burst.grid_index = jb.at("grid_index").get<std::size_t>();
            burst.discharge_coefficient = jb.at("discharge_coefficient").get<double>();
            if (jb.contains("area_series")) {
                burst.orifice_area_m2 = jb.at("area_series").get<std::vector<double>>();
            } else {
                const double area = jb.at("orifice_area_m2").get<double>();
                const std::uint64_t onset = jb.value("onset_step", std::uint64_t(0));
                burst.orifice_area_m2.assign(onset, 0.0);
                burst.orifice_area_m2.push_back(area);
            }
            scenario.burst = std::move(burst);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed scenario document: ") + e.what());
    }
    return scenario;
}

}  // namespace faultcover
