#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pflow/manufactured.hpp"

using namespace pflow;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double tau = 2.0 * std::numbers::pi;
}  // namespace

TEST_CASE("reference velocity is divergence-free with locked mean") {
    const ManufacturedCase mc = ManufacturedCase::standard_case();
    const PeriodicGrid grid{64};
    SpectralField v = mc.velocity(grid);
    CHECK(l2_norm(differentiate(v, DiffOp::div)) < 1e-12);
    CHECK(std::abs(v.coefficient(0, 0, 0)) == 0.0);
    CHECK(std::abs(v.coefficient(1, 0, 0)) == 0.0);
    CHECK(mean_value(mc.concentration(grid)) == doctest::Approx(mc.mean_c).epsilon(1e-13));
}

TEST_CASE("single-vortex sources match the hand-derived closed form") {
    // psi = sin(2 pi x) sin(2 pi y) / (2 pi), v = grad-perp psi, unit viscosity:
    //   f = div(v x v) - lap v = (pi sin(4 pi x) + 4 pi^2 v_x,
    //                             pi sin(4 pi y) + 4 pi^2 v_y)
    const ManufacturedCase mc = ManufacturedCase::taylor_green();
    const PeriodicGrid grid{64};
    const SourcePair sources = make_sources(mc, grid);

    SpectralField expected = SpectralField::from_function(
        grid, Rank::vector, [](double x, double y) -> std::vector<double> {
            const double vx = std::sin(tau * x) * std::cos(tau * y);
            const double vy = -std::cos(tau * x) * std::sin(tau * y);
            return {pi * std::sin(2.0 * tau * x) + tau * tau * vx,
                    pi * std::sin(2.0 * tau * y) + tau * tau * vy};
        });
    CHECK(l2_norm(subtract(sources.f, expected)) < 1e-10 * l2_norm(expected));

    // the stream function really is the advertised vortex
    SpectralField v = mc.velocity(grid);
    SpectralField vref = SpectralField::from_function(
        grid, Rank::vector, [](double x, double y) -> std::vector<double> {
            return {std::sin(tau * x) * std::cos(tau * y),
                    -std::cos(tau * x) * std::sin(tau * y)};
        });
    CHECK(l2_norm(subtract(v, vref)) < 1e-12);
}

TEST_CASE("sources are stable under synthesis refinement") {
    ManufacturedCase mc = ManufacturedCase::standard_case();
    const PeriodicGrid grid{32};
    const SourcePair coarse = make_sources(mc, grid);
    mc.synthesis_min = 2 * mc.synthesis_min;
    const SourcePair fine = make_sources(mc, grid);
    CHECK(l2_norm(subtract(coarse.f, fine.f)) < 1e-11 * std::max(1.0, l2_norm(fine.f)));
    CHECK(l2_norm(subtract(coarse.g, fine.g)) < 1e-11 * std::max(1.0, l2_norm(fine.g)));
}

TEST_CASE("under-resolved synthesis is refused, not silently aliased") {
    ManufacturedCase mc = ManufacturedCase::standard_case();
    mc.synthesis_min = 16;  // far below what the constitutive spectrum needs
    mc.synthesis_factor = 2;
    CHECK_THROWS_AS((void)make_sources(mc, PeriodicGrid{8}), std::runtime_error);
}

TEST_CASE("solver recovers the reference pair when truncation is inactive") {
    const ManufacturedCase mc = ManufacturedCase::standard_case();
    SolverConfig cfg;
    cfg.grid = PeriodicGrid{64};
    cfg.n_basis = 24;
    cfg.A = 2.0 * mc.max_shear(PeriodicGrid{256});
    const GalerkinSolver solver(cfg);
    const SourcePair sources = make_sources(mc, cfg.grid);
    ProblemData data{sources.f, sources.g, mc.model};
    const SolutionState state = solver.solve(data);
    REQUIRE(state.converged);
    // truncation must be inactive on the computed solution
    CHECK(state.max_shear < cfg.A);

    const MmsError err = mms_error(solver, state, mc);
    CHECK(err.v_l2 < 1e-8);
    CHECK(err.v_h1 < 1e-7);
    CHECK(err.c_l2 < 1e-5);

    // the recovered state is a genuine small-residual solution
    CHECK(solver.residual(state, data).combined <= 1e-8);
}

TEST_CASE("errors shrink under grid refinement") {
    const ManufacturedCase mc = ManufacturedCase::standard_case();
    const double cap = 2.0 * mc.max_shear(PeriodicGrid{256});
    MmsError prev{};
    bool first = true;
    for (int n : {16, 32}) {
        SolverConfig cfg;
        cfg.grid = PeriodicGrid{n};
        cfg.n_basis = 24;
        cfg.A = cap;
        const GalerkinSolver solver(cfg);
        const SourcePair sources = make_sources(mc, cfg.grid);
        ProblemData data{sources.f, sources.g, mc.model};
        const SolutionState state = solver.solve(data);
        REQUIRE(state.converged);
        const MmsError err = mms_error(solver, state, mc);
        if (!first) {
            CHECK(err.v_l2 < 0.1 * prev.v_l2);
            CHECK(err.c_l2 < 0.1 * prev.c_l2);
        }
        prev = err;
        first = false;
    }
}

TEST_CASE("reference shear magnitude is grid-independent once resolved") {
    const ManufacturedCase mc = ManufacturedCase::standard_case();
    const double a = mc.max_shear(PeriodicGrid{128});
    const double b = mc.max_shear(PeriodicGrid{256});
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
    CHECK(a > 0.0);
}
