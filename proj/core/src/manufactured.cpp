#include "pflow/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pflow {

namespace {

SpectralField trig_scalar(PeriodicGrid grid, const std::vector<TrigTerm>& terms, double mean) {
    SpectralField f(grid, Rank::scalar);
    std::vector<cplx> spec(grid.spectral_size(), cplx(0.0, 0.0));
    f.set_spectral(0, std::move(spec));
    for (const auto& t : terms) {
        if (t.kx == 0 && t.ky == 0)
            throw std::invalid_argument("trig term at k = 0; use the mean instead");
        // a cos + b sin = Re{(a - i b) e^{2 pi i k.x}}
        f.add_mode(0, t.kx, t.ky, 0.5 * cplx(t.cos_amp, -t.sin_amp));
    }
    if (mean != 0.0) f.mutable_spectral(0)[0] = mean;
    return f;
}

/// S(c*, Dv*) sampled pointwise
SpectralField stress_field(const ConstitutiveModel& model, const SpectralField& c,
                           const SpectralField& d) {
    const auto& cv = c.physical(0);
    const auto& xx = d.physical(0);
    const auto& xy = d.physical(1);
    const auto& yy = d.physical(2);
    SpectralField s(d.grid(), Rank::sym_tensor);
    std::vector<double> sxx(cv.size()), sxy(cv.size()), syy(cv.size());
    for (std::size_t i = 0; i < cv.size(); ++i) {
        const Sym2 val = model.stress(cv[i], Sym2{xx[i], xy[i], yy[i]});
        sxx[i] = val.xx;
        sxy[i] = val.xy;
        syy[i] = val.yy;
    }
    s.set_physical(0, std::move(sxx));
    s.set_physical(1, std::move(sxy));
    s.set_physical(2, std::move(syy));
    return s;
}

SpectralField flux_scalar_field(const ConstitutiveModel& model, const SpectralField& c,
                                const SpectralField& d) {
    const auto& cv = c.physical(0);
    const SpectralField d_mag = magnitude_field(d);
    const auto& mag = d_mag.physical(0);
    SpectralField k(c.grid(), Rank::scalar);
    std::vector<double> kv(cv.size());
    for (std::size_t i = 0; i < cv.size(); ++i) kv[i] = model.flux.scalar(cv[i], mag[i]);
    k.set_physical(0, std::move(kv));
    return k;
}

double aliasing_fraction(const SpectralField& f) {
    const double tail = energy_above_cutoff(f, f.grid().dealias_cutoff());
    return tail;
}

}  // namespace

SpectralField ManufacturedCase::stream_function(PeriodicGrid grid) const {
    return trig_scalar(grid, psi_terms, 0.0);
}

SpectralField ManufacturedCase::velocity(PeriodicGrid grid) const {
    SpectralField psi = stream_function(grid);
    SpectralField g = differentiate(psi, DiffOp::grad);
    SpectralField v(grid, Rank::vector);
    v.set_spectral(0, std::vector<cplx>(g.spectral(1)));
    std::vector<cplx> vy = g.spectral(0);
    for (auto& z : vy) z = -z;
    v.set_spectral(1, std::move(vy));
    v.lock_mean();
    return v;
}

SpectralField ManufacturedCase::concentration(PeriodicGrid grid) const {
    return trig_scalar(grid, c_terms, mean_c);
}

double ManufacturedCase::max_shear(PeriodicGrid grid) const {
    SpectralField d = differentiate(velocity(grid), DiffOp::sym_grad);
    return max_abs(magnitude_field(resample(d, 2 * grid.n_modes)));
}

ManufacturedCase ManufacturedCase::standard_case() {
    // fixed reference constants (version 1); amplitudes are kept small so
    // the constitutive spectrum decays fast and truncation stays inactive
    ManufacturedCase mc;
    mc.psi_terms = {{1, -1, 0.02, 0.0}, {1, 1, -0.02, 0.0}, {2, 1, 0.0, 0.012},
                    {0, 1, 0.016, 0.0}};
    mc.c_terms = {{1, 0, 0.3, 0.0}, {1, 1, 0.0, 0.2}, {0, 2, 0.15, 0.0}};
    mc.mean_c = 1.0;
    mc.model = ConstitutiveModel::canonical();
    mc.synthesis_min = 256;
    return mc;
}

ManufacturedCase ManufacturedCase::taylor_green() {
    const double a = 1.0 / (4.0 * std::numbers::pi);
    ManufacturedCase mc;
    mc.psi_terms = {{1, -1, a, 0.0}, {1, 1, -a, 0.0}};
    mc.c_terms = {};
    mc.mean_c = 1.0;
    mc.model = ConstitutiveModel::newtonian();
    return mc;
}

SourcePair make_sources(const ManufacturedCase& mc, PeriodicGrid solver_grid) {
    const int n = solver_grid.n_modes;
    const int m = std::max(mc.synthesis_factor * n, mc.synthesis_min);
    if (m < 2 * n) throw std::invalid_argument("make_sources: synthesis grid below 2x solver grid");
    const PeriodicGrid fine{m};

    SpectralField v = mc.velocity(fine);
    SpectralField c = mc.concentration(fine);
    SpectralField d = differentiate(v, DiffOp::sym_grad);

    SpectralField conv = differentiate(outer_sym(v, v), DiffOp::div);
    SpectralField s = stress_field(mc.model, c, d);
    SpectralField f_fine = subtract(conv, differentiate(s, DiffOp::div));

    SpectralField adv = multiply_exact(c, v);
    SpectralField kfield = flux_scalar_field(mc.model, c, d);
    SpectralField flux = multiply_exact(kfield, differentiate(c, DiffOp::grad));
    SpectralField q = differentiate(subtract(adv, flux), DiffOp::div);
    SpectralField g_fine = scale(differentiate(inverse_laplacian(q), DiffOp::grad), -1.0);

    // refuse under-resolved synthesis; sources that are numerically zero
    // relative to the reference pair carry only roundoff and are snapped to
    // exact zeros instead
    const double ref = l2_norm(v) + l2_norm(c) + 1e-300;
    const auto roundoff = [&](const SpectralField& field) {
        return l2_norm(field) <= 1e-13 * ref;
    };
    const auto aliased = [&](const SpectralField& field) {
        return !roundoff(field) && aliasing_fraction(field) > 1e-12;
    };
    if (aliased(f_fine) || aliased(g_fine))
        throw std::runtime_error(
            "make_sources: synthesis grid too coarse (aliasing above cutoff)");

    return SourcePair{
        roundoff(f_fine) ? zero_field(solver_grid, Rank::vector) : resample(f_fine, n),
        roundoff(g_fine) ? zero_field(solver_grid, Rank::vector) : resample(g_fine, n)};
}

MmsError mms_error(const GalerkinSolver& solver, const SolutionState& state,
                   const ManufacturedCase& mc) {
    const PeriodicGrid grid = solver.config().grid;
    SpectralField dv = subtract(solver.velocity(state), mc.velocity(grid));
    SpectralField dc = subtract(state.c, mc.concentration(grid));
    MmsError e;
    e.v_l2 = l2_norm(dv);
    e.v_h1 = l2_norm(differentiate(dv, DiffOp::grad));
    e.c_l2 = l2_norm(dc);
    return e;
}

}  // namespace pflow
