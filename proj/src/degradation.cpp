#include "cbm/degradation.hpp"

#include <cmath>
#include <string>

namespace cbm {

DegradationParams& DegradationParams::finalize() {
    if (path_step == 0.0 && alpha0 > 0.0 && beta > 0.0 && L > 0.0) {
        path_step = default_path_step();
    }
    validate();
    return *this;
}

void DegradationParams::validate() const {
    auto positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw DomainError(std::string("degradation.") + name + " must be positive");
        }
    };
    positive(alpha0, "alpha0");
    positive(beta, "beta");
    positive(L, "L");
    positive(gamma_rate, "gamma_rate");
    positive(path_step, "path_step");
    if (path_step > L / (20.0 * nu0())) {
        throw DomainError("degradation.path_step must not exceed L / (20 * alpha0 / beta)");
    }
}

void advance_into(SystemState& state, long steps, const DegradationParams& params, RngStream& rng,
                  DegradationPath& out) {
    out.clear();
    out.reserve(static_cast<std::size_t>(steps) + 1);
    const double t0 = state.t;
    out.push_back({t0, state.x});
    if (steps <= 0) return;
    const GammaSpec increment{state.v * params.beta * params.path_step, params.beta};
    double x = state.x;
    for (long i = 1; i <= steps; ++i) {
        x += sample_gamma(increment, rng);
        out.push_back({t0 + static_cast<double>(i) * params.path_step, x});
    }
    state.x = x;
    state.t = out.back().time;
}

DegradationPath advance(SystemState& state, double dt, const DegradationParams& params, RngStream& rng) {
    if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("advance requires a finite dt >= 0");
    const long steps = std::lround(dt / params.path_step);
    DegradationPath path;
    advance_into(state, steps, params, rng, path);
    return path;
}

std::optional<double> first_passage(const DegradationPath& path, double L) {
    for (const auto& point : path) {
        if (point.level >= L) return point.time;
    }
    return std::nullopt;
}

SystemState apply_perfect(const SystemState& state, const DegradationParams& params) {
    return SystemState::as_good_as_new(params, state.t);
}

TruncNormSpec intervention_gain_spec(double x) {
    const double mu = x / 2.0;
    const double sigma = x / 6.0;
    return {mu, sigma, mu - 3.0 * sigma, mu + 3.0 * sigma};
}

std::pair<SystemState, ImperfectOutcome> apply_imperfect(const SystemState& state, const DegradationParams& params,
                                                         RngStream& rng) {
    if (!(state.x > 0.0)) {
        throw DomainError("imperfect maintenance requires a positive deterioration level");
    }
    const TruncNormSpec spec = intervention_gain_spec(state.x);
    ImperfectOutcome outcome;
    // The gain must lie strictly inside (0, x); the endpoints have probability zero
    // and only appear through rounding.
    do {
        outcome.gain = sample_truncated_normal(spec, rng);
    } while (!(outcome.gain > 0.0 && outcome.gain < state.x));
    outcome.eps = sample_exponential(params.gamma_rate, rng);

    SystemState next = state;
    next.x = state.x - outcome.gain;
    next.v = state.v + outcome.eps;
    next.k = state.k + 1;
    return {next, outcome};
}

}  // namespace cbm
