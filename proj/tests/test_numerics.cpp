#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cbm/numerics.hpp"
#include "oracles.hpp"

using namespace cbm;

TEST_CASE("gamma_pdf") {
    CHECK(gamma_pdf(-1.0, {2.0, 3.0}) == 0.0);
    CHECK(gamma_pdf(0.0, {1.0, 1.0}) == 1.0);
    // Frozen from the quadrature-normalized density.
    CHECK(gamma_pdf(0.5, {2.0, 3.0}) == doctest::Approx(1.0040857206679342).epsilon(1e-12));
    CHECK(std::fabs(gamma_pdf(0.5, {2.0, 3.0}) - oracle::gamma_pdf(0.5, 2.0, 3.0)) < 1e-10);
    CHECK_THROWS_AS(gamma_pdf(std::nan(""), {2.0, 3.0}), DomainError);
    CHECK_THROWS_AS(gamma_pdf(1.0, {0.0, 3.0}), DomainError);
    CHECK_THROWS_AS(gamma_pdf(1.0, {1.0, -1.0}), DomainError);
}

TEST_CASE("gamma_cdf known values") {
    CHECK(gamma_cdf(0.0, {2.0, 1.0}) == 0.0);
    CHECK(gamma_cdf(std::log(2.0), {1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(gamma_cdf(2.0, {2.5, 1.3}) == doctest::Approx(0.60803710840036625).epsilon(1e-12));
    CHECK(std::fabs(gamma_cdf(2.0, {2.5, 1.3}) - oracle::gamma_cdf(2.0, 2.5, 1.3)) < 1e-8);
    CHECK_THROWS_AS(gamma_cdf(INFINITY, {1.0, 1.0}), DomainError);
}

TEST_CASE("gamma_cdf exponential special case") {
    for (double rate : {0.3, 1.0, 7.5}) {
        for (int i = 0; i <= 100; ++i) {
            const double x = 20.0 / rate * i / 100.0;
            CHECK(std::fabs(gamma_cdf(x, {1.0, rate}) - (1.0 - std::exp(-rate * x))) < 1e-10);
        }
    }
}

TEST_CASE("gamma_cdf monotonicity, survival complement, and derivative") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> shape_dist(0.05, 40.0), rate_dist(0.1, 10.0), unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const GammaSpec spec{shape_dist(gen), rate_dist(gen)};
        const double mean = spec.shape / spec.rate;
        const double x1 = unit(gen) * 3.0 * mean;
        const double x2 = x1 + unit(gen) * mean;
        CHECK(gamma_cdf(x1, spec) <= gamma_cdf(x2, spec));
        CHECK(std::fabs(gamma_cdf(x1, spec) + gamma_survival(x1, spec) - 1.0) < 1e-13);
        // Larger shape puts less mass below any fixed point.
        CHECK(gamma_cdf(x1, {spec.shape * 1.5, spec.rate}) <= gamma_cdf(x1, spec) + 1e-15);

        const double x = std::max(x1, 0.05 * mean) + 0.01;
        const double h = 1e-5 * x;
        const double fd = (gamma_cdf(x + h, spec) - gamma_cdf(x - h, spec)) / (2.0 * h);
        const double pdf = gamma_pdf(x, spec);
        if (pdf > 1e-6) CHECK(std::fabs(fd - pdf) / pdf < 1e-5);
    }
}

TEST_CASE("rng streams are reproducible and distinct") {
    RngStream a(42, 3), b(42, 3), c(42, 4), d(42, 3, 1);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const double ua = a.uniform();
        CHECK(ua == b.uniform());
        CHECK(ua > 0.0);
        CHECK(ua < 1.0);
        differs_c |= ua != c.uniform();
        differs_d |= ua != d.uniform();
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("sample_gamma moments") {
    constexpr int n = 1'000'000;
    {
        RngStream rng(1, 0);
        std::vector<double> xs(n);
        for (auto& x : xs) x = sample_gamma({2.0, 4.0}, rng);
        const auto m = oracle::moments(xs);
        CHECK(std::fabs(m.mean - 0.5) < 3.0 * m.mean_se);
    }
    {
        RngStream rng(2, 0);
        std::vector<double> xs(n);
        for (auto& x : xs) x = sample_gamma({0.5, 1.0}, rng);
        const auto m = oracle::moments(xs);
        CHECK(std::fabs(m.variance - 0.5) < 3.0 * m.var_se);
        CHECK(*std::min_element(xs.begin(), xs.end()) >= 0.0);
    }
}

TEST_CASE("sample_gamma determinism") {
    RngStream a(99, 5), b(99, 5);
    for (int i = 0; i < 1000; ++i) CHECK(sample_gamma({0.3, 2.0}, a) == sample_gamma({0.3, 2.0}, b));
}

TEST_CASE("sample_gamma additivity in distribution") {
    constexpr std::size_t n = 100'000;
    RngStream rng(11, 0);
    std::vector<double> sums(n), singles(n);
    for (auto& s : sums) s = sample_gamma({0.7, 2.0}, rng) + sample_gamma({1.9, 2.0}, rng);
    for (auto& s : singles) s = sample_gamma({2.6, 2.0}, rng);
    CHECK(oracle::ks_statistic(sums, singles) < oracle::ks_critical_001(n, n));
}

TEST_CASE("sample_exponential") {
    constexpr int n = 1'000'000;
    RngStream rng(3, 0);
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_exponential(2.0, rng);
    const auto m = oracle::moments(xs);
    CHECK(std::fabs(m.mean - 0.5) < 3.0 * m.mean_se);
    CHECK(*std::min_element(xs.begin(), xs.end()) >= 0.0);

    RngStream a(8, 1), b(8, 1);
    for (int i = 0; i < 100; ++i) CHECK(sample_exponential(3.0, a) == sample_exponential(3.0, b));
    CHECK_THROWS_AS(sample_exponential(0.0, a), DomainError);
}

TEST_CASE("normal_quantile inverts normal_cdf") {
    for (double p : {1e-12, 1e-6, 0.001, 0.02425, 0.1, 0.5, 0.77, 0.97575, 0.999}) {
        const double z = normal_quantile(p);
        CHECK(oracle::std_normal_cdf(z) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("sample_truncated_normal") {
    constexpr int n = 1'000'000;
    const TruncNormSpec spec{5.0, 5.0 / 3.0, 0.0, 10.0};
    RngStream rng(4, 0);
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_truncated_normal(spec, rng);
    CHECK(*std::min_element(xs.begin(), xs.end()) >= 0.0);
    CHECK(*std::max_element(xs.begin(), xs.end()) <= 10.0);
    const auto m = oracle::moments(xs);
    CHECK(std::fabs(m.mean - 5.0) < 3.0 * m.mean_se);

    // Empirical CDF against the renormalized normal CDF on [a, b].
    std::sort(xs.begin(), xs.end());
    const double lo = oracle::std_normal_cdf((spec.a - spec.mu) / spec.sigma);
    const double hi = oracle::std_normal_cdf((spec.b - spec.mu) / spec.sigma);
    double sup = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = spec.a + (spec.b - spec.a) * i / 200.0;
        const double exact = (oracle::std_normal_cdf((x - spec.mu) / spec.sigma) - lo) / (hi - lo);
        const double empirical =
            static_cast<double>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) / xs.size();
        sup = std::max(sup, std::fabs(exact - empirical));
    }
    CHECK(sup < 0.005);
}

TEST_CASE("sample_truncated_normal respects far-tail windows") {
    RngStream rng(5, 0);
    const TruncNormSpec upper{0.0, 1.0, 6.0, 7.0};
    const TruncNormSpec lower{0.0, 1.0, -9.0, -8.5};
    for (int i = 0; i < 10000; ++i) {
        const double u = sample_truncated_normal(upper, rng);
        const double l = sample_truncated_normal(lower, rng);
        CHECK((u >= 6.0 && u <= 7.0));
        CHECK((l >= -9.0 && l <= -8.5));
    }
    CHECK_THROWS_AS(sample_truncated_normal({0.0, 1.0, 1.0, 1.0}, rng), DomainError);
}

TEST_CASE("solve_monotone_increasing") {
    const double tol = 1e-9;
    CHECK(std::fabs(solve_monotone_increasing([](double x) { return x; }, 0.7, 0.0, 0.1, {tol}) - 0.7) <= tol);
    const double root = solve_monotone_increasing([](double x) { return 1.0 - std::exp(-x); }, 0.5, 0.0, 0.01, {tol});
    CHECK(std::fabs(1.0 - std::exp(-root) - 0.5) <= tol);
    CHECK(root == doctest::Approx(std::numbers::ln2).epsilon(1e-8));
    CHECK_THROWS_AS(solve_monotone_increasing([](double x) { return x + 1.0; }, 0.5, 0.0, 1.0), SolverError);
    // Bounded function that never reaches the target cannot be bracketed.
    CHECK_THROWS_AS(solve_monotone_increasing([](double x) { return 1.0 - std::exp(-x); }, 1.5, 0.0, 1.0),
                    SolverError);
}
