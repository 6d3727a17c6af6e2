#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cbm/numerics.hpp"

namespace cbm {

/// Parameters of the gamma deterioration process.
///
/// Increments over a span dt are Gamma(shape = v * beta * dt, rate = beta), so
/// v is the mean deterioration speed. A system in as-good-as-new condition
/// runs at speed alpha0 / beta.
struct DegradationParams {
    double alpha0 = 1.0;
    double beta = 1.0;
    double L = 1.0;           // failure threshold
    double gamma_rate = 1.0;  // rate of the exponential speed jump after an imperfect action
    double path_step = 0.0;   // latent grid step; 0 selects the default

    double nu0() const { return alpha0 / beta; }

    /// (L / nu0) / 500, a grid of 500 steps per mean lifetime.
    double default_path_step() const { return (L / nu0()) / 500.0; }

    /// Fills path_step with the default when it is unset, then validates.
    DegradationParams& finalize();

    void validate() const;
};

struct SystemState {
    double x = 0.0;  // deterioration level
    double v = 0.0;  // mean speed
    int k = 0;       // successive imperfect actions since the last renewal
    double t = 0.0;  // clock

    static SystemState as_good_as_new(const DegradationParams& params, double t = 0.0) {
        return {0.0, params.nu0(), 0, t};
    }

    friend bool operator==(const SystemState&, const SystemState&) = default;
};

struct ImperfectOutcome {
    double gain = 0.0;  // deterioration removed
    double eps = 0.0;   // speed increase
};

struct PathPoint {
    double time;
    double level;
};

using DegradationPath = std::vector<PathPoint>;

/// Evolves the latent path over dt on the params.path_step grid.
///
/// The returned path starts with the current (t, x) and holds one point per
/// grid step; dt is rounded to the nearest whole number of steps. state is
/// moved to the final point.
DegradationPath advance(SystemState& state, double dt, const DegradationParams& params, RngStream& rng);

/// Same as advance() but reuses the caller's buffer.
void advance_into(SystemState& state, long steps, const DegradationParams& params, RngStream& rng,
                  DegradationPath& out);

/// Earliest grid time whose level is at least L.
std::optional<double> first_passage(const DegradationPath& path, double L);

SystemState apply_perfect(const SystemState& state, const DegradationParams& params);

/// Imperfect preventive action: removes a truncated-normal gain from x and
/// raises the speed by an exponential jump. Requires state.x > 0.
std::pair<SystemState, ImperfectOutcome> apply_imperfect(const SystemState& state, const DegradationParams& params,
                                                         RngStream& rng);

/// Gain law for a system at level x: N(x/2, x/6) truncated to [0, x].
TruncNormSpec intervention_gain_spec(double x);

}  // namespace cbm
