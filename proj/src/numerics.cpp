#include "cbm/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <numbers>

namespace cbm {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

double log_gamma(double a) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(a, &sign);
#else
    return std::lgamma(a);
#endif
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + " must be finite");
    }
}

// log of z^a e^-z / Gamma(a)
double log_prefactor(double a, double z) {
    return a * std::log(z) - z - log_gamma(a);
}

int iteration_cap(double a) {
    return 1000 + static_cast<int>(50.0 * std::sqrt(a));
}

// P(a, z) by power series; converges fast for z < a + 1.
double lower_series(double a, double z) {
    double term = 1.0 / a;
    double sum = term;
    const int cap = iteration_cap(a);
    for (int n = 1; n < cap; ++n) {
        term *= z / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) {
            return std::exp(log_prefactor(a, z)) * sum;
        }
    }
    throw SolverError("incomplete gamma series failed to converge");
}

// Q(a, z) by the Legendre continued fraction (modified Lentz); z >= a + 1.
double upper_fraction(double a, double z) {
    double b = z + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    const int cap = iteration_cap(a);
    for (int i = 1; i < cap; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return std::exp(log_prefactor(a, z)) * h;
        }
    }
    throw SolverError("incomplete gamma continued fraction failed to converge");
}

}  // namespace

void GammaSpec::validate() const {
    if (!(shape > 0.0) || !std::isfinite(shape)) throw DomainError("gamma shape must be positive");
    if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("gamma rate must be positive");
}

void TruncNormSpec::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("truncated normal sigma must be positive");
    if (!(a < b)) throw DomainError("truncated normal bounds require a < b");
    require_finite(mu, "truncated normal mu");
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t substream)
    : stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      substream};
    engine_.seed(seq);
}

double RngStream::uniform() {
    // 53 random bits, shifted by half an ulp so the result is never 0 or 1.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double gamma_pdf(double x, const GammaSpec& spec) {
    spec.validate();
    require_finite(x, "x");
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (spec.shape < 1.0) return std::numeric_limits<double>::infinity();
        return spec.shape == 1.0 ? spec.rate : 0.0;
    }
    const double log_density = spec.shape * std::log(spec.rate) + (spec.shape - 1.0) * std::log(x) -
                               spec.rate * x - log_gamma(spec.shape);
    return std::exp(log_density);
}

double gamma_cdf(double x, const GammaSpec& spec) {
    spec.validate();
    require_finite(x, "x");
    if (x <= 0.0) return 0.0;
    const double z = spec.rate * x;
    if (z < spec.shape + 1.0) return std::clamp(lower_series(spec.shape, z), 0.0, 1.0);
    return std::clamp(1.0 - upper_fraction(spec.shape, z), 0.0, 1.0);
}

double gamma_survival(double x, const GammaSpec& spec) {
    spec.validate();
    require_finite(x, "x");
    if (x <= 0.0) return 1.0;
    const double z = spec.rate * x;
    if (z < spec.shape + 1.0) return std::clamp(1.0 - lower_series(spec.shape, z), 0.0, 1.0);
    return std::clamp(upper_fraction(spec.shape, z), 0.0, 1.0);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw DomainError("normal quantile requires p in [0, 1]");
    }
    // Acklam's rational approximation followed by one Halley step.
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double sample_standard_normal(RngStream& rng) {
    return normal_quantile(rng.uniform());
}

double sample_gamma(const GammaSpec& spec, RngStream& rng) {
    spec.validate();
    // Marsaglia-Tsang squeeze for shape >= 1; shape < 1 is boosted through
    // Gamma(shape + 1) * U^(1 / shape).
    const bool boost = spec.shape < 1.0;
    const double a = boost ? spec.shape + 1.0 : spec.shape;
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    double draw = 0.0;
    for (;;) {
        double z = 0.0;
        double v = 0.0;
        do {
            z = sample_standard_normal(rng);
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double z2 = z * z;
        if (u < 1.0 - 0.0331 * z2 * z2 || std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) {
            draw = d * v;
            break;
        }
    }
    if (boost) {
        draw *= std::exp(std::log(rng.uniform()) / spec.shape);
    }
    return draw / spec.rate;
}

double sample_exponential(double rate, RngStream& rng) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("exponential rate must be positive");
    return -std::log(rng.uniform()) / rate;
}

double sample_truncated_normal(const TruncNormSpec& spec, RngStream& rng) {
    spec.validate();
    double lo = (spec.a - spec.mu) / spec.sigma;
    double hi = (spec.b - spec.mu) / spec.sigma;
    // Work in the lower tail where normal_cdf keeps its relative precision.
    const bool mirrored = lo > 0.0;
    if (mirrored) {
        std::swap(lo, hi);
        lo = -lo;
        hi = -hi;
    }
    const double p_lo = normal_cdf(lo);
    const double p_hi = normal_cdf(hi);
    const double u = p_lo + rng.uniform() * (p_hi - p_lo);
    double z = std::clamp(normal_quantile(u), lo, hi);
    if (mirrored) z = -z;
    return std::clamp(spec.mu + spec.sigma * z, spec.a, spec.b);
}

double solve_monotone_increasing(const std::function<double(double)>& f, double target, double lo,
                                 double hi_init, const SolverOptions& options) {
    if (!(options.tol > 0.0)) throw SolverError("solver tolerance must be positive");
    if (!(hi_init > lo)) throw SolverError("solver requires hi_init > lo");
    const double f_lo = f(lo);
    if (f_lo > target + options.tol) {
        throw SolverError("solver precondition violated: f(lo) exceeds target");
    }
    if (std::fabs(f_lo - target) <= options.tol) return lo;

    const double origin = lo;
    double hi = hi_init;
    double f_hi = f(hi);
    int doublings = 0;
    while (f_hi < target) {
        if (std::fabs(f_hi - target) <= options.tol) return hi;
        if (++doublings > options.max_doublings) {
            throw SolverError("solver could not bracket the target within the doubling limit");
        }
        lo = hi;
        hi = origin + 2.0 * (hi - origin);
        f_hi = f(hi);
    }
    if (std::fabs(f_hi - target) <= options.tol) return hi;

    for (int i = 0; i < options.max_bisections; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) return mid;
        const double f_mid = f(mid);
        if (std::fabs(f_mid - target) <= options.tol) return mid;
        if (f_mid < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace cbm
