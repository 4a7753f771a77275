#include "kdvb/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace kdvb {

namespace {

struct WaveShape {
    double amplitude;  // 6 theta^2 / (25 mu), also the wave speed
    double k;          // theta / (10 mu)
};

WaveShape wave_shape(double theta, double mu) {
    if (mu == 0.0) throw std::invalid_argument("exact_traveling_wave: mu must be nonzero");
    return WaveShape{6.0 * theta * theta / (25.0 * mu), theta / (10.0 * mu)};
}

double sech2(double z) {
    const double s = 1.0 / std::cosh(z);
    return s * s;
}

}  // namespace

double exact_traveling_wave(double x, double t, double theta, double mu) {
    const WaveShape w = wave_shape(theta, mu);
    const double z = w.k * (x - w.amplitude * t);
    return w.amplitude * (1.0 - std::tanh(z) + 0.5 * sech2(z));
}

double exact_traveling_wave_dx(double x, double t, double theta, double mu) {
    const WaveShape w = wave_shape(theta, mu);
    const double z = w.k * (x - w.amplitude * t);
    return -w.amplitude * w.k * sech2(z) * (1.0 + std::tanh(z));
}

double exact_traveling_wave_dxx(double x, double t, double theta, double mu) {
    const WaveShape w = wave_shape(theta, mu);
    const double z = w.k * (x - w.amplitude * t);
    const double th = std::tanh(z);
    return -w.amplitude * w.k * w.k * sech2(z) * (1.0 - 3.0 * th) * (1.0 + th);
}

double pulse_initial(double x) {
    return 0.5 * (1.0 - std::tanh((std::abs(x) - 25.0) / 5.0));
}

double pulse_initial_dx(double x) {
    if (x == 0.0) return 0.0;
    const double sign = x > 0.0 ? 1.0 : -1.0;
    return -sign * 0.1 * sech2((std::abs(x) - 25.0) / 5.0);
}

Scenario make_example1(double theta, double stop_time, BoundaryMode boundary) {
    constexpr double mu = 0.01;
    Scenario s;
    s.name = "example1";
    s.a = -20.0;
    s.b = 20.0;
    s.grid_cells = 80;
    s.params = PhysicalParams{.epsilon = 1.0, .theta = theta, .mu = mu, .dt = 0.001};
    s.initial = [theta](double x) { return exact_traveling_wave(x, 0.0, theta, mu); };
    s.initial_derivative = [theta](double x) { return exact_traveling_wave_dx(x, 0.0, theta, mu); };
    s.exact = [theta](double x, double t) { return exact_traveling_wave(x, t, theta, mu); };
    if (boundary == BoundaryMode::exact) {
        s.boundary = [theta, a = s.a, b = s.b](double t) {
            return BoundarySlopes{exact_traveling_wave_dx(a, t, theta, mu), exact_traveling_wave_dx(b, t, theta, mu),
                                  exact_traveling_wave_dxx(a, t, theta, mu), exact_traveling_wave_dxx(b, t, theta, mu)};
        };
    }
    s.stop_time = stop_time;
    if (stop_time > 1.0) s.record_times = {1.0, stop_time};
    else s.record_times = {stop_time};
    return s;
}

Scenario make_example2() {
    Scenario s;
    s.name = "example2";
    s.a = -50.0;
    s.b = 150.0;
    s.grid_cells = 500;
    s.params = PhysicalParams{.epsilon = 0.2, .theta = 0.0, .mu = 0.1, .dt = 0.05};
    s.initial = pulse_initial;
    s.initial_derivative = pulse_initial_dx;
    s.stop_time = 800.0;
    s.record_times = {100.0, 200.0, 400.0, 600.0, 800.0};
    return s;
}

Scenario make_scenario(const std::string& name) {
    if (name == "example1") return make_example1();
    if (name == "example2") return make_example2();
    throw std::invalid_argument("unknown scenario '" + name + "' (expected example1 or example2)");
}

}  // namespace kdvb
