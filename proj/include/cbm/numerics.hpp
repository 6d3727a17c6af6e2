#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "cbm/errors.hpp"

namespace cbm {

/// Gamma law with density rate^shape x^(shape-1) e^(-rate x) / Gamma(shape).
struct GammaSpec {
    double shape;
    double rate;

    void validate() const;
};

/// Normal(mu, sigma) conditioned on [a, b].
struct TruncNormSpec {
    double mu;
    double sigma;
    double a;
    double b;

    void validate() const;
};

/// Deterministic random stream keyed by (seed, stream_id, substream).
///
/// Two streams built from the same key produce the same sequence regardless
/// of when or on which thread they are consumed. The engine gives each
/// replication its own stream_id and each source of randomness inside a
/// replication its own substream.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t substream = 0);

    /// Uniform draw on the open interval (0, 1).
    double uniform();

    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t stream_id_;
};

double gamma_pdf(double x, const GammaSpec& spec);

/// Regularized lower incomplete gamma P(shape, rate * x).
double gamma_cdf(double x, const GammaSpec& spec);

/// Upper tail 1 - gamma_cdf, computed without cancellation where possible.
double gamma_survival(double x, const GammaSpec& spec);

double normal_cdf(double z);

/// Standard normal quantile, accurate to roughly machine precision on (0, 1).
double normal_quantile(double p);

double sample_gamma(const GammaSpec& spec, RngStream& rng);
double sample_exponential(double rate, RngStream& rng);
double sample_standard_normal(RngStream& rng);
double sample_truncated_normal(const TruncNormSpec& spec, RngStream& rng);

struct SolverOptions {
    double tol = 1e-9;
    int max_doublings = 60;
    int max_bisections = 2000;
};

/// Root of f(x) = target for nondecreasing f.
///
/// Requires f(lo) <= target. The upper bracket starts at hi_init and its
/// distance from lo doubles until f(hi) >= target; bisection then runs until
/// |f(x) - target| <= tol or the bracket cannot be split any further.
double solve_monotone_increasing(const std::function<double(double)>& f, double target, double lo,
                                 double hi_init, const SolverOptions& options = {});

}  // namespace cbm
