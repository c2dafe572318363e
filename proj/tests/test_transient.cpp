#include "faultcover/transient.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <stdexcept>

#include "doctest.h"

using namespace faultcover;

namespace {

PipeParams test_pipe() {
    PipeParams pipe;
    pipe.length_m = 1000.0;
    pipe.diameter_m = 0.5;
    pipe.wave_speed_m_s = 1000.0;
    pipe.friction = 0.02;
    pipe.segments = 20;
    return pipe;
}

GridState uniform_state(std::size_t points, double head, double flow) {
    GridState state;
    state.head_m.assign(points, head);
    state.flow_m3s.assign(points, flow);
    return state;
}

std::string fixture_text(const std::string& name) {
    std::ifstream in(std::string(FAULTCOVER_FIXTURE_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("derived pipe coefficients") {
    const PipeParams pipe = test_pipe();
    const double area = 3.14159265358979323846 * 0.25 * 0.25;
    CHECK(pipe.area() == doctest::Approx(area).epsilon(1e-12));
    CHECK(pipe.dx() == 50.0);
    CHECK(pipe.dt() == 0.05);
    CHECK(pipe.impedance() == doctest::Approx(1000.0 / (9.81 * area)).epsilon(1e-12));
    CHECK(pipe.resistance() ==
          doctest::Approx(0.02 * 50.0 / (2 * 9.81 * 0.5 * area * area)).epsilon(1e-12));
    CHECK_THROWS_AS(
        [] {
            PipeParams bad = test_pipe();
            bad.segments = 1;
            bad.validate();
        }(),
        std::invalid_argument);
}

TEST_CASE("zero-flow uniform head is an exact fixed point") {
    const PipeParams pipe = test_pipe();
    GridState state = uniform_state(pipe.segments + 1, 55.0, 0.0);
    for (int t = 0; t < 1000; ++t) {
        state = step_interior(state, pipe);
        for (double h : state.head_m) CHECK(h == 55.0);
        for (double q : state.flow_m3s) CHECK(q == 0.0);
    }
    CHECK(state.step == 1000);
}

TEST_CASE("with zero impedance a frictional steady profile is preserved") {
    const PipeParams pipe = test_pipe();
    const double r = pipe.resistance();
    const double flow = 0.2;

    GridState state;
    state.head_m.resize(pipe.segments + 1);
    state.head_m[0] = 120.0;
    for (std::size_t i = 1; i < state.head_m.size(); ++i)
        state.head_m[i] = state.head_m[i - 1] - 2.0 * r * flow * std::abs(flow);
    state.flow_m3s.assign(pipe.segments + 1, flow);
    const GridState initial = state;

    for (int t = 0; t < 1000; ++t) {
        state = step_characteristics(state, 0.0, r);
        // Fixed-head ends.
        state.head_m.front() = initial.head_m.front();
        state.head_m.back() = initial.head_m.back();
        state.flow_m3s.front() = flow;
        state.flow_m3s.back() = flow;
    }
    for (std::size_t i = 0; i < state.head_m.size(); ++i) {
        CHECK(state.head_m[i] == doctest::Approx(initial.head_m[i]).epsilon(1e-12));
        CHECK(state.flow_m3s[i] == flow);
    }
}

TEST_CASE("a mirror-symmetric disturbance stays mirror-symmetric") {
    const PipeParams pipe = test_pipe();
    const std::size_t points = pipe.segments + 1;
    GridState state = uniform_state(points, 50.0, 0.0);
    // Even head bump around the center, zero (odd) flow.
    for (std::size_t i = 0; i < points; ++i) {
        const double offset =
            static_cast<double>(i) - static_cast<double>(points - 1) / 2.0;
        state.head_m[i] += 5.0 * std::exp(-offset * offset / 8.0);
    }
    for (int t = 0; t < 15; ++t) {
        state = step_interior(state, pipe);
        for (std::size_t i = 0; i < points; ++i) {
            const std::size_t mirror = points - 1 - i;
            CHECK(state.head_m[i] == doctest::Approx(state.head_m[mirror]).epsilon(1e-12));
            CHECK(state.flow_m3s[i] ==
                  doctest::Approx(-state.flow_m3s[mirror]).epsilon(1e-12));
        }
    }
}

TEST_CASE("a closed orifice reproduces the interior update exactly") {
    const PipeParams pipe = test_pipe();
    GridState state = uniform_state(pipe.segments + 1, 60.0, 0.1);
    state.head_m[9] = 63.0;
    state.head_m[10] = 61.0;
    state.head_m[11] = 58.5;
    state.flow_m3s[9] = 0.12;
    state.flow_m3s[11] = 0.08;

    const GridState stepped = step_interior(state, pipe);
    const double burst_head = apply_burst_boundary(state, pipe, 10, 0.8, 0.0);
    CHECK(burst_head == stepped.head_m[10]);
}

TEST_CASE("opening the orifice lowers the head monotonically") {
    const PipeParams pipe = test_pipe();
    GridState state = uniform_state(pipe.segments + 1, 60.0, 0.1);

    const double closed = apply_burst_boundary(state, pipe, 10, 0.8, 0.0);
    double previous = closed;
    for (int step = 1; step <= 10; ++step) {
        const double area = 0.002 * step;
        const double head = apply_burst_boundary(state, pipe, 10, 0.8, area);
        CHECK(head < closed);
        CHECK(head <= previous);
        previous = head;
    }

    // Doubling the discharge capacity keeps pushing it down.
    const double once = apply_burst_boundary(state, pipe, 10, 0.8, 0.004);
    const double twice = apply_burst_boundary(state, pipe, 10, 0.8, 0.008);
    CHECK(twice < once);
}

TEST_CASE("a negative incoming characteristic mean is rejected") {
    const PipeParams pipe = test_pipe();
    GridState state = uniform_state(pipe.segments + 1, -50.0, 0.0);
    CHECK_THROWS_AS(apply_burst_boundary(state, pipe, 10, 0.8, 0.01), std::runtime_error);
    CHECK_THROWS_AS(apply_burst_boundary(state, pipe, 0, 0.8, 0.01), std::invalid_argument);
}

TEST_CASE("steady scenario without a burst never trips a sensor") {
    Scenario scenario;
    scenario.pipes = {test_pipe()};
    scenario.left_head_m = 80.0;
    scenario.initial_flow_m3s = 0.15;
    scenario.horizon_steps = 500;
    scenario.sensors = {{2, 0.0}, {10, 0.0}, {18, 0.0}};
    scenario.threshold_pa = 100.0;

    const SimulationResult result = simulate(scenario);
    REQUIRE(result.history.size() == 501);
    for (const SensorReading& reading : result.readings) {
        CHECK_FALSE(reading.triggered);
        for (bool out : reading.output) CHECK_FALSE(out);
    }
    // The steady profile is preserved throughout.
    for (std::size_t i = 0; i < result.history.front().head_m.size(); ++i)
        CHECK(result.history.back().head_m[i] ==
              doctest::Approx(result.history.front().head_m[i]).epsilon(1e-9));
}

TEST_CASE("a midpipe burst reaches the adjacent sensor within half a pipe travel") {
    Scenario scenario;
    scenario.pipes = {test_pipe()};  // 20 segments, burst at the middle point
    scenario.left_head_m = 80.0;
    scenario.initial_flow_m3s = 0.15;
    BurstSpec burst;
    burst.grid_index = 10;
    burst.discharge_coefficient = 0.8;
    burst.orifice_area_m2.assign(10, 0.0);  // opens at step 10
    burst.orifice_area_m2.push_back(0.01);
    scenario.burst = burst;
    scenario.horizon_steps = 120;
    scenario.sensors = {{11, 0.0}};
    scenario.threshold_pa = 2000.0;

    const SimulationResult result = simulate(scenario);
    const SensorReading& reading = result.readings.front();
    CHECK(reading.triggered);
    std::size_t first = reading.output.size();
    for (std::size_t t = 0; t < reading.output.size(); ++t) {
        if (reading.output[t]) {
            first = t;
            break;
        }
    }
    // No exceedance before the orifice opens, and the wave needs at most
    // L/(2a) = 10 steps to reach a point one segment away.
    CHECK(first > 10);
    CHECK(first <= 20);
}

TEST_CASE("a threshold above the largest deviation keeps outputs at zero") {
    Scenario scenario = parse_scenario(fixture_text("example_scenario.json"));
    scenario.threshold_pa = 1e12;
    const SimulationResult result = simulate(scenario);
    for (const SensorReading& reading : result.readings) CHECK_FALSE(reading.triggered);
}

TEST_CASE("the bundled scenario trips all sensors and stays finite") {
    const Scenario scenario = parse_scenario(fixture_text("example_scenario.json"));
    const SimulationResult result = simulate(scenario);
    REQUIRE(result.readings.size() == 3);
    for (const SensorReading& reading : result.readings) {
        CHECK(reading.triggered);
        for (double p : reading.pressure_pa) CHECK(std::isfinite(p));
        CHECK_FALSE(reading.output[0]);  // expected pressure matches at start
    }
}

TEST_CASE("series pipes must share the time step") {
    Scenario scenario;
    scenario.pipes = {test_pipe(), test_pipe()};
    scenario.pipes[1].wave_speed_m_s = 800.0;  // dt mismatch
    scenario.left_head_m = 50.0;
    scenario.horizon_steps = 1;
    scenario.threshold_pa = 1.0;
    CHECK_THROWS_AS(simulate(scenario), std::invalid_argument);

    // Matching dx / a works even with different speeds.
    scenario.pipes[1].wave_speed_m_s = 800.0;
    scenario.pipes[1].length_m = 800.0;
    CHECK_NOTHROW(simulate(scenario));
}

TEST_CASE("a junction of dissimilar pipes preserves the steady profile") {
    Scenario scenario;
    PipeParams narrow = test_pipe();
    narrow.diameter_m = 0.3;
    narrow.friction = 0.025;
    scenario.pipes = {test_pipe(), narrow};
    scenario.left_head_m = 90.0;
    scenario.initial_flow_m3s = 0.12;
    scenario.horizon_steps = 400;
    scenario.sensors = {{20, 0.0}};  // the junction point
    scenario.threshold_pa = 50.0;

    const SimulationResult result = simulate(scenario);
    CHECK_FALSE(result.readings.front().triggered);
    const GridState& first = result.history.front();
    const GridState& last = result.history.back();
    for (std::size_t i = 0; i < first.head_m.size(); ++i) {
        CHECK(last.head_m[i] == doctest::Approx(first.head_m[i]).epsilon(1e-9));
        CHECK(last.flow_m3s[i] == doctest::Approx(0.12).epsilon(1e-9));
    }
}

TEST_CASE("a burst at a junction of equal-impedance pipes is accepted") {
    Scenario scenario;
    PipeParams second = test_pipe();
    second.friction = 0.03;  // impedance depends only on speed and area
    scenario.pipes = {test_pipe(), second};
    scenario.left_head_m = 90.0;
    scenario.initial_flow_m3s = 0.1;
    BurstSpec burst;
    burst.grid_index = 20;
    burst.discharge_coefficient = 0.8;
    burst.orifice_area_m2 = {0.0, 0.0, 0.008};
    scenario.burst = burst;
    scenario.horizon_steps = 60;
    scenario.sensors = {{19, 0.0}, {21, 0.0}};
    scenario.threshold_pa = 2000.0;

    const SimulationResult result = simulate(scenario);
    CHECK(result.readings[0].triggered);
    CHECK(result.readings[1].triggered);

    // Different impedances at the burst point are rejected.
    scenario.pipes[1].diameter_m = 0.4;
    CHECK_THROWS_AS(simulate(scenario), std::invalid_argument);
}

TEST_CASE("scenario parsing reads the bundled fixture") {
    const Scenario scenario = parse_scenario(fixture_text("example_scenario.json"));
    REQUIRE(scenario.pipes.size() == 1);
    CHECK(scenario.pipes[0].segments == 40);
    CHECK(scenario.left_head_m == 80.0);
    REQUIRE(scenario.burst.has_value());
    CHECK(scenario.burst->grid_index == 20);
    CHECK(scenario.burst->area_at(9) == 0.0);
    CHECK(scenario.burst->area_at(10) == 0.01);
    CHECK(scenario.burst->area_at(400) == 0.01);
    CHECK(scenario.sensors.size() == 3);
    CHECK(scenario.threshold_pa == 2000.0);

    CHECK_THROWS_AS(parse_scenario("{"), std::runtime_error);
    CHECK_THROWS_AS(parse_scenario("{}"), std::runtime_error);
}
