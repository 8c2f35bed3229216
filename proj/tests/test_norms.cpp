#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pflow/ball.hpp"
#include "pflow/norms.hpp"
#include "pflow/stokes_basis.hpp"

using namespace pflow;

namespace {

constexpr double tau = 2.0 * std::numbers::pi;

SpectralField sample_scalar(PeriodicGrid grid) {
    return SpectralField::scalar_function(grid, [](double x, double y) {
        return 1.0 + 0.5 * std::sin(tau * x) + 0.25 * std::cos(tau * (x + 2.0 * y));
    });
}

SpectralField random_divfree(PeriodicGrid grid, const StokesBasis& basis, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> alpha(static_cast<std::size_t>(basis.size()));
    for (auto& a : alpha) a = u(rng);
    return basis.combine(alpha);
}

}  // namespace

TEST_CASE("Luxemburg norm agrees with the classical Lp norm at constant exponent") {
    const PeriodicGrid grid{64};
    SpectralField f = sample_scalar(grid);
    for (double p : {1.5, 2.0, 3.0}) {
        const ExponentField pf = ExponentField::constant(grid, p);
        const double lux = luxemburg_norm(f, pf);
        const double classical = lp_norm(f, p);
        CHECK(std::abs(lux - classical) < 1e-8 * classical);
    }
}

TEST_CASE("modular of f scaled to unit Luxemburg norm is one") {
    const PeriodicGrid grid{64};
    SpectralField c = SpectralField::scalar_function(
        grid, [](double x, double y) { return std::sin(tau * x) * std::cos(tau * y); });
    const ExponentField pf =
        ExponentField::from_concentration(c, ExponentFunction::tanh_law(0.4, 1.0));
    SpectralField f = sample_scalar(grid);
    const double lam = luxemburg_norm(f, pf);
    REQUIRE(lam > 0.0);
    CHECK(std::abs(modular(scale(f, 1.0 / lam), pf) - 1.0) < 1e-6);
}

TEST_CASE("Luxemburg norm matches a dense lambda scan on a variable exponent") {
    const PeriodicGrid grid{32};
    SpectralField c = SpectralField::scalar_function(
        grid, [](double x, double y) { return 0.8 * std::cos(tau * (x - y)); });
    const ExponentField pf =
        ExponentField::from_concentration(c, ExponentFunction::tanh_law(0.4, 1.0));
    SpectralField f = sample_scalar(grid);

    // brute-force oracle: smallest lambda on a fine logarithmic scan with
    // modular(f / lambda) <= 1
    double lo = 1e-6, hi = 1e6;
    for (int iter = 0; iter < 80; ++iter) {
        const double mid = std::sqrt(lo * hi);
        (modular(scale(f, 1.0 / mid), pf) <= 1.0 ? hi : lo) = mid;
    }
    const double oracle = hi;
    CHECK(std::abs(luxemburg_norm(f, pf) - oracle) < 1e-6 * oracle);
}

TEST_CASE("Luxemburg norm scales homogeneously") {
    const PeriodicGrid grid{32};
    SpectralField f = sample_scalar(grid);
    const ExponentField pf = ExponentField::constant(grid, 2.5);
    const double base = luxemburg_norm(f, pf);
    CHECK(luxemburg_norm(scale(f, 3.0), pf) == doctest::Approx(3.0 * base).epsilon(1e-7));
    CHECK(luxemburg_norm(zero_field(grid, Rank::scalar), pf) == 0.0);
}

TEST_CASE("Korn ratio is at least one on random divergence-free fields") {
    const PeriodicGrid grid{32};
    const StokesBasis basis = StokesBasis::build(grid, 20);
    SpectralField c = SpectralField::scalar_function(
        grid, [](double x, double y) { return std::sin(tau * x) + 0.5 * std::cos(tau * y); });
    const ExponentField pf =
        ExponentField::from_concentration(c, ExponentFunction::tanh_law(0.4, 1.0));
    std::mt19937_64 rng(2024u);
    for (int trial = 0; trial < 100; ++trial) {
        SpectralField v = random_divfree(grid, basis, rng);
        CHECK(korn_ratio(v, pf) >= 1.0 - 1e-10);
    }
}

TEST_CASE("Hoelder seminorm matches an all-pairs oracle on a small grid") {
    const PeriodicGrid grid{16};
    SpectralField f = SpectralField::scalar_function(
        grid, [](double x, double y) { return std::sin(tau * x) + 0.3 * std::cos(tau * 2.0 * y); });
    const double alpha = 0.5;
    const auto& vals = f.physical(0);
    double oracle = 0.0;
    const int n = grid.n_modes;
    for (int j1 = 0; j1 < n; ++j1)
        for (int i1 = 0; i1 < n; ++i1)
            for (int j2 = 0; j2 < n; ++j2)
                for (int i2 = 0; i2 < n; ++i2) {
                    if (i1 == i2 && j1 == j2) continue;
                    const double d = periodic_distance(grid.x(i1), grid.y(j1), grid.x(i2),
                                                       grid.y(j2));
                    oracle = std::max(oracle, std::abs(vals[grid.index(i1, j1)] -
                                                       vals[grid.index(i2, j2)]) /
                                                  std::pow(d, alpha));
                }
    // the library samples every pair when the budget allows it
    const double got = holder_seminorm(f, alpha, static_cast<std::size_t>(n) * n * n * n);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("Hoelder seminorm of a constant is zero") {
    const PeriodicGrid grid{16};
    SpectralField f = SpectralField::scalar_function(grid, [](double, double) { return 3.0; });
    CHECK(holder_seminorm(f, 0.5) == 0.0);
}

TEST_CASE("ball quadrature approximates areas and radial integrals") {
    const PeriodicGrid grid{256};
    const BallProbe probe{{0.5, 0.5}, 0.25};
    SpectralField one = SpectralField::scalar_function(grid, [](double, double) { return 1.0; });
    const double area = ball_integral(probe, one);
    CHECK(std::abs(area - std::numbers::pi * 0.25 * 0.25) < 2e-3);

    // integral over B_R of |x - x0|^2 = pi R^4 / 2
    SpectralField r2 = SpectralField::scalar_function(grid, [](double x, double y) {
        const double dx = x - 0.5, dy = y - 0.5;
        return dx * dx + dy * dy;
    });
    CHECK(std::abs(ball_integral(probe, r2) - std::numbers::pi * std::pow(0.25, 4) / 2.0) < 1e-4);
    CHECK(ball_mean(probe, one) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("annulus integral is ball additivity") {
    const PeriodicGrid grid{64};
    SpectralField f = sample_scalar(grid);
    const BallProbe inner{{0.3, 0.6}, 0.125};
    const BallProbe outer{{0.3, 0.6}, 0.25};
    CHECK(ball_integral(inner, f) + annulus_integral(inner, f) ==
          doctest::Approx(ball_integral(outer, f)).epsilon(1e-13));
}

TEST_CASE("ball membership respects periodic wrap-around") {
    const PeriodicGrid grid{64};
    const BallProbe corner{{0.0, 0.0}, 0.2};
    const BallProbe center{{0.5, 0.5}, 0.2};
    CHECK(ball_point_count(grid, corner) == ball_point_count(grid, center));
    CHECK(probe_resolved(grid, center));
    CHECK_FALSE(probe_resolved(PeriodicGrid{8}, BallProbe{{0.5, 0.5}, 0.05}));
}

TEST_CASE("ball probe radius must fit on the torus") {
    const PeriodicGrid grid{32};
    CHECK_THROWS_AS((void)ball_points(grid, BallProbe{{0.5, 0.5}, 0.75}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)ball_points(grid, BallProbe{{0.5, 0.5}, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("mean oscillation vanishes on constants and detects variation") {
    const PeriodicGrid grid{64};
    const BallProbe probe{{0.5, 0.5}, 0.2};
    SpectralField cfield = SpectralField::scalar_function(grid, [](double, double) { return 2.0; });
    CHECK(mean_oscillation(probe, cfield) == doctest::Approx(0.0));
    SpectralField varying = sample_scalar(grid);
    CHECK(mean_oscillation(probe, varying) > 0.0);
    CHECK(campanato_quotient(probe, varying, 0.5) ==
          doctest::Approx(std::pow(0.2, -(2.0 + 0.5) / 2.0) * mean_oscillation(probe, varying))
              .epsilon(1e-13));
}

TEST_CASE("dyadic oscillation proxy is finite and monotone under scaling") {
    const PeriodicGrid grid{64};
    SpectralField f = sample_scalar(grid);
    const double b = bmo_proxy(f);
    CHECK(std::isfinite(b));
    CHECK(b > 0.0);
    CHECK(bmo_proxy(scale(f, 2.0)) == doctest::Approx(2.0 * b).epsilon(1e-12));
}
