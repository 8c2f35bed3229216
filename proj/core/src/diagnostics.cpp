#include "pflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pflow/holefill.hpp"
#include "pflow/norms.hpp"

namespace pflow {

namespace {

SpectralField scalar_from_values(PeriodicGrid grid, std::vector<double> values) {
    SpectralField f(grid, Rank::scalar);
    f.set_physical(0, std::move(values));
    return f;
}

SpectralField component_scalar(const SpectralField& f, int comp) {
    SpectralField out(f.grid(), Rank::scalar);
    out.set_physical(0, std::vector<double>(f.physical(comp)));
    return out;
}

/// pointwise |grad f|^2 as a scalar field (off-diagonal doubled for
/// symmetric rank), gradients taken spectrally per component
SpectralField grad_norm2_field(const SpectralField& f) {
    const PeriodicGrid grid = f.grid();
    std::vector<double> acc(grid.points(), 0.0);
    for (int c = 0; c < f.components(); ++c) {
        const double w = (f.rank() == Rank::sym_tensor && c == 1) ? 2.0 : 1.0;
        SpectralField g = differentiate(component_scalar(f, c), DiffOp::grad);
        const auto& gx = g.physical(0);
        const auto& gy = g.physical(1);
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] += w * (gx[i] * gx[i] + gy[i] * gy[i]);
    }
    return scalar_from_values(grid, std::move(acc));
}

struct LocalFields {
    SpectralField dv;        ///< symmetric velocity gradient
    SpectralField dv_mag;    ///< |Dv|
    SpectralField weight;    ///< theta_A^{p(c)-2}
    SpectralField theta_p2;  ///< theta_A^{p(c)/2}
    SpectralField hole_mass; ///< theta_A^{p(c)-2} |grad Dv|^2
};

LocalFields local_fields(const GalerkinSolver& solver, const SolutionState& state,
                         const ProblemData& data) {
    const PeriodicGrid grid = solver.config().grid;
    SpectralField dv = differentiate(solver.velocity(state), DiffOp::sym_grad);
    SpectralField mag = magnitude_field(dv);
    const auto& mv = mag.physical(0);
    const auto& cv = state.c.physical(0);
    std::vector<double> w(grid.points()), tp(grid.points());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double th = theta_A(mv[i], state.A);
        const double p = data.model.exponent(cv[i]);
        w[i] = std::pow(th, p - 2.0);
        tp[i] = std::pow(th, 0.5 * p);
    }
    SpectralField weight = scalar_from_values(grid, std::move(w));
    SpectralField gd2 = grad_norm2_field(dv);
    std::vector<double> hm(grid.points());
    const auto& wv = weight.physical(0);
    const auto& gv = gd2.physical(0);
    for (std::size_t i = 0; i < hm.size(); ++i) hm[i] = wv[i] * gv[i];
    return LocalFields{std::move(dv), std::move(mag), std::move(weight),
                       scalar_from_values(grid, std::move(tp)),
                       scalar_from_values(grid, std::move(hm))};
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<int> annulus_indices(PeriodicGrid grid, const BallProbe& probe) {
    const auto inner = ball_points(grid, probe);
    const auto outer = ball_points(grid, BallProbe{probe.center, 2.0 * probe.radius});
    std::vector<int> ann;
    std::set_difference(outer.begin(), outer.end(), inner.begin(), inner.end(),
                        std::back_inserter(ann));
    return ann;
}

}  // namespace

std::vector<Vec2> ProbeLayout::centers() const {
    std::vector<Vec2> out;
    for (int iy = 0; iy < centers_per_dim; ++iy)
        for (int ix = 0; ix < centers_per_dim; ++ix)
            out.push_back({(ix + 0.5) / centers_per_dim, (iy + 0.5) / centers_per_dim});
    return out;
}

std::vector<double> ProbeLayout::radii() const {
    std::vector<double> out;
    double r = r0;
    for (int k = 0; k <= dyadic_levels; ++k, r *= 0.5) out.push_back(r);
    return out;
}

double EstimateReport::scalar(const std::string& key) const {
    for (const auto& [k, v] : scalars)
        if (k == key) return v;
    throw std::out_of_range("EstimateReport: no scalar named " + key);
}

bool EstimateReport::has_scalar(const std::string& key) const {
    for (const auto& [k, v] : scalars)
        if (k == key) return true;
    return false;
}

double nu_exponent(double delta, double r) {
    if (delta <= 0.0 || r <= 0.0)
        throw std::invalid_argument("nu_exponent: positive delta and r required");
    return std::min(delta / (2.0 * (2.0 + delta)), r / (2.0 * (1.0 + r)));
}

double mu_i_exponent(double nu, double A, double p_minus, double p_plus, double cover_C) {
    if (nu <= 0.0 || A <= 1.0 || cover_C <= 0.0)
        throw std::invalid_argument("mu_i_exponent: invalid parameters");
    const double c0 = std::pow(1.0 + A * A, 0.5 * (std::max(2.0, p_plus) - 2.0));
    const double c1 = std::pow(1.0 + A * A, 0.5 * (std::min(2.0, p_minus) - 2.0));
    return std::min(0.5 * nu, std::log2((c1 + cover_C * c0) / (cover_C * c0)));
}

bool log_factor_bound(double B, double r, double s) {
    if (B < 1.0 || r < s || s < 0.0) throw std::invalid_argument("log_factor_bound: B >= 1, r >= s >= 0");
    return std::pow(B, r) - std::pow(B, s) <= (r - s) * std::pow(B, r) * std::log(B) + 1e-12;
}

std::string regime_tag(double p_value) {
    if (p_value >= 3.0) return "I";
    if (p_value <= 1.5) return "II";
    return "III";
}

EstimateReport energy_report(const GalerkinSolver& solver, const SolutionState& state,
                             const ProblemData& data) {
    const PeriodicGrid grid = solver.config().grid;
    EstimateReport rep;
    rep.name = "energy";
    rep.n_modes = grid.n_modes;
    rep.A = state.A;

    SpectralField v = solver.velocity(state);
    SpectralField dv = differentiate(v, DiffOp::sym_grad);
    const SpectralField dv_mag = magnitude_field(dv);
    const auto& mv = dv_mag.physical(0);
    const auto& cv = state.c.physical(0);

    // S^A(c, Dv) sampled pointwise
    SpectralField s(grid, Rank::sym_tensor);
    {
        const auto& xx = dv.physical(0);
        const auto& xy = dv.physical(1);
        const auto& yy = dv.physical(2);
        std::vector<double> sxx(grid.points()), sxy(grid.points()), syy(grid.points());
        for (std::size_t i = 0; i < sxx.size(); ++i) {
            const double nu = data.model.viscosity_truncated(cv[i], mv[i], state.A);
            sxx[i] = nu * xx[i];
            sxy[i] = nu * xy[i];
            syy[i] = nu * yy[i];
        }
        s.set_physical(0, std::move(sxx));
        s.set_physical(1, std::move(sxy));
        s.set_physical(2, std::move(syy));
    }
    const double dissipation = inner_product(s, dv);
    const double work = inner_product(data.f, v);
    const double id1 = std::abs(dissipation - work) / (std::abs(work) + 1.0);

    SpectralField gradc = differentiate(state.c, DiffOp::grad);
    SpectralField kfield(grid, Rank::scalar);
    {
        std::vector<double> kv(grid.points());
        for (std::size_t i = 0; i < kv.size(); ++i) kv[i] = data.model.flux.scalar(cv[i], mv[i]);
        kfield.set_physical(0, std::move(kv));
    }
    const double diffusion = inner_product(multiply_exact(kfield, gradc), gradc);
    const double source = inner_product(data.g, gradc);
    const double id2 = std::abs(diffusion - source) / (std::abs(source) + 1.0);

    const double pm = data.model.exponent.p_minus;
    rep.scalars = {
        {"identity_momentum_lhs", dissipation},
        {"identity_momentum_rhs", work},
        {"identity_momentum_residual", id1},
        {"identity_concentration_lhs", diffusion},
        {"identity_concentration_rhs", source},
        {"identity_concentration_residual", id2},
        {"norm_v_w1pminus", lp_norm(v, pm) + lp_norm(differentiate(v, DiffOp::grad), pm)},
        {"norm_v_embedding", lp_norm(v, 4.0)},
        {"norm_c_w12", std::sqrt(l2_norm(state.c) * l2_norm(state.c) +
                                 l2_norm(gradc) * l2_norm(gradc))},
        {"norm_gradc_l2", l2_norm(gradc)},
    };
    rep.empirical_constant = std::max(id1, id2);
    rep.pass = std::isfinite(rep.empirical_constant);
    return rep;
}

EstimateReport caccioppoli_report(const GalerkinSolver& solver, const SolutionState& state,
                                  const ProblemData& data, const ProbeLayout& layout,
                                  double delta) {
    const PeriodicGrid grid = solver.config().grid;
    EstimateReport rep;
    rep.name = "caccioppoli";
    rep.n_modes = grid.n_modes;
    rep.A = state.A;

    SpectralField v = solver.velocity(state);
    SpectralField gradc = differentiate(state.c, DiffOp::grad);
    SpectralField gmag = magnitude_field(gradc);
    SpectralField gsq = multiply_pointwise(gmag, gmag);
    SpectralField gtilde = add(multiply_exact(state.c, v), data.g);
    SpectralField gtilde_mag = magnitude_field(gtilde);
    SpectralField gtilde_sq = multiply_pointwise(gtilde_mag, gtilde_mag);

    for (const Vec2 center : layout.centers()) {
        for (const double r : layout.radii()) {
            const BallProbe outer{center, r};
            const BallProbe inner{center, 0.5 * r};
            if (!probe_resolved(grid, inner)) {
                ++rep.excluded_probes;
                continue;
            }
            ProbeRow row;
            row.center = center;
            row.radius = r;
            row.lhs = ball_mean(inner, gsq);
            const double m1 = ball_mean(outer, gmag);
            row.rhs_terms = {m1 * m1, ball_mean(outer, gtilde_sq)};
            const double denom = row.rhs_terms[0] + row.rhs_terms[1];
            row.local_constant = denom > 0.0 ? row.lhs / denom
                                             : (row.lhs > 0.0
                                                    ? std::numeric_limits<double>::infinity()
                                                    : 0.0);
            rep.empirical_constant = std::max(rep.empirical_constant, row.local_constant);
            rep.rows.push_back(std::move(row));
        }
    }
    rep.scalars = {{"norm_gradc_2plusdelta", lp_norm(gradc, 2.0 + delta)}, {"delta", delta}};
    rep.pass = std::isfinite(rep.empirical_constant) && !rep.rows.empty();
    return rep;
}

EstimateReport weighted_h2_report(const GalerkinSolver& solver, const SolutionState& state,
                                  const ProblemData& data) {
    const PeriodicGrid grid = solver.config().grid;
    EstimateReport rep;
    rep.name = "weighted_h2";
    rep.n_modes = grid.n_modes;
    rep.A = state.A;

    LocalFields lf = local_fields(solver, state, data);

    // || theta^{(p-2)/2} grad Dv ||_2 = (integral of theta^{p-2} |grad Dv|^2)^{1/2}
    const double wh2 = std::sqrt(std::max(0.0, integral(lf.hole_mass)));

    // u = theta^{(p-2)/2} Dv, measured in W^{1,2}
    SpectralField half_weight(grid, Rank::scalar);
    {
        const auto& wv = lf.weight.physical(0);
        std::vector<double> hv(wv.size());
        for (std::size_t i = 0; i < hv.size(); ++i) hv[i] = std::sqrt(wv[i]);
        half_weight.set_physical(0, std::move(hv));
    }
    SpectralField u = multiply_exact(half_weight, lf.dv);
    const double u_l2 = l2_norm(u);
    const double u_h1 = std::sqrt(std::max(0.0, integral(grad_norm2_field(u))));

    rep.scalars = {
        {"weighted_grad_dv_l2", wh2},
        {"weighted_dv_w12", std::sqrt(u_l2 * u_l2 + u_h1 * u_h1)},
        {"dv_l4", lp_norm(lf.dv, 4.0)},
        {"dv_l8", lp_norm(lf.dv, 8.0)},
        {"dv_l16", lp_norm(lf.dv, 16.0)},
        {"theta_p2_w12",
         std::sqrt(l2_norm(lf.theta_p2) * l2_norm(lf.theta_p2) +
                   integral(grad_norm2_field(lf.theta_p2)))},
    };
    rep.empirical_constant = wh2;
    rep.pass = true;
    for (const auto& [k, vv] : rep.scalars) rep.pass = rep.pass && std::isfinite(vv);
    return rep;
}

EstimateReport hole_start_report(const GalerkinSolver& solver, const SolutionState& state,
                                 const ProblemData& data, const ProbeLayout& layout, double nu) {
    const PeriodicGrid grid = solver.config().grid;
    EstimateReport rep;
    rep.name = "hole_start";
    rep.n_modes = grid.n_modes;
    rep.A = state.A;

    LocalFields lf = local_fields(solver, state, data);
    SpectralField gradv = differentiate(solver.velocity(state), DiffOp::grad);
    const auto& wv = lf.weight.physical(0);
    std::vector<const std::vector<double>*> gv;
    for (int c = 0; c < 4; ++c) gv.push_back(&gradv.physical(c));
    const auto& hole_vals = lf.hole_mass.physical(0);
    const double h2 = grid.spacing() * grid.spacing();

    double alpha_form = 0.0;  // hypothesis normal-form constant
    for (const Vec2 center : layout.centers()) {
        for (const double r : layout.radii()) {
            if (2.0 * r > 0.5) continue;  // annulus must fit on the torus
            const BallProbe probe{center, r};
            if (!probe_resolved(grid, probe)) {
                ++rep.excluded_probes;
                continue;
            }
            const auto inner = ball_points(grid, probe);
            const auto ann = annulus_indices(grid, probe);

            double lhs = 0.0;
            for (int i : inner) lhs += hole_vals[i];
            lhs *= h2;
            double lhs2r = lhs;
            for (int i : ann) lhs2r += hole_vals[i] * h2;

            // annulus oscillation of grad v against its annulus mean
            double ann_term = 0.0;
            if (!ann.empty()) {
                double mean[4] = {0.0, 0.0, 0.0, 0.0};
                for (int c = 0; c < 4; ++c) {
                    for (int i : ann) mean[c] += (*gv[c])[i];
                    mean[c] /= static_cast<double>(ann.size());
                }
                for (int i : ann) {
                    double osc2 = 0.0;
                    for (int c = 0; c < 4; ++c) {
                        const double d = (*gv[c])[i] - mean[c];
                        osc2 += d * d;
                    }
                    ann_term += wv[i] * osc2;
                }
                ann_term *= h2 / (r * r);
            }

            ProbeRow row;
            row.center = center;
            row.radius = r;
            row.lhs = lhs;
            row.rhs_terms = {std::pow(r, nu), ann_term, lhs2r - lhs};
            const double denom = row.rhs_terms[0] + row.rhs_terms[1];
            row.local_constant = denom > 0.0 ? lhs / denom : 0.0;
            rep.empirical_constant = std::max(rep.empirical_constant, row.local_constant);

            // Lemma 3.1 normal form: G(R) <= alpha (G(2R)-G(R)) + beta R^nu
            const double denom_form = (lhs2r - lhs) + std::pow(r, nu);
            if (denom_form > 0.0) alpha_form = std::max(alpha_form, lhs / denom_form);
            rep.rows.push_back(std::move(row));
        }
    }
    if (alpha_form <= 0.0) alpha_form = 1e-12;  // zero solution: any constants work
    rep.scalars = {{"alpha", alpha_form},
                   {"beta", alpha_form},
                   {"nu", nu},
                   {"mu", mu_exponent(alpha_form, nu)}};
    rep.pass = std::isfinite(rep.empirical_constant);
    return rep;
}

EstimateReport key_estimate_report(const GalerkinSolver& solver, const SolutionState& state,
                                   const ProblemData& data, const ProbeLayout& layout, double nu,
                                   double delta, double cover_C, double mu_floor) {
    const PeriodicGrid grid = solver.config().grid;
    EstimateReport rep;
    rep.name = "key_estimate";
    rep.n_modes = grid.n_modes;
    rep.A = state.A;

    LocalFields lf = local_fields(solver, state, data);
    SpectralField theta_grad2 = grad_norm2_field(lf.theta_p2);
    const auto& cv = state.c.physical(0);
    const std::vector<double> pv_values = [&] {
        std::vector<double> pv(grid.points());
        for (std::size_t i = 0; i < pv.size(); ++i) pv[i] = data.model.exponent(cv[i]);
        return pv;
    }();

    const double locality_radius = std::min(8.0 * layout.r0, 0.5);
    int passing = 0, total = 0;
    double mu_min = std::numeric_limits<double>::infinity();
    for (const Vec2 center : layout.centers()) {
        // local exponent range read over the locality ball
        const auto local = ball_points(grid, BallProbe{center, locality_radius});
        double p_lo = std::numeric_limits<double>::infinity(), p_hi = 0.0;
        for (int i : local) {
            p_lo = std::min(p_lo, pv_values[i]);
            p_hi = std::max(p_hi, pv_values[i]);
        }
        const double mu_i = mu_i_exponent(nu, state.A, p_lo, p_hi, cover_C);
        mu_min = std::min(mu_min, mu_i);

        std::vector<double> lr, lg, lt;
        for (const double r : layout.radii()) {
            const BallProbe probe{center, r};
            if (!probe_resolved(grid, probe)) continue;
            const double gval = ball_integral(probe, lf.hole_mass);
            const double tval = ball_integral(probe, theta_grad2);
            if (gval <= 0.0 || tval <= 0.0) continue;
            lr.push_back(std::log(r));
            lg.push_back(std::log(gval));
            lt.push_back(std::log(tval));
        }
        if (lr.size() < 3) {
            ++rep.excluded_probes;
            continue;
        }
        const double fitted = fit_slope(lr, lg);
        const double fitted_theta = fit_slope(lr, lt);

        // p at the nearest grid point to the center
        const int ix = std::min(grid.n_modes - 1,
                                static_cast<int>(std::floor(center.x * grid.n_modes)));
        const int iy = std::min(grid.n_modes - 1,
                                static_cast<int>(std::floor(center.y * grid.n_modes)));
        const double p_center = pv_values[grid.index(ix, iy)];

        ProbeRow row;
        row.center = center;
        row.radius = layout.r0;
        row.lhs = fitted;
        row.rhs_terms = {mu_i, fitted_theta, std::min(mu_i, delta / (2.0 * (2.0 + delta)))};
        row.local_constant = fitted;
        row.tag = regime_tag(p_center);
        rep.rows.push_back(std::move(row));
        ++total;
        if (fitted + 1e-9 >= std::max(mu_i, mu_floor)) ++passing;
    }

    const double fraction = total > 0 ? static_cast<double>(passing) / total : 0.0;
    double holder = 0.0;
    if (std::isfinite(mu_min) && mu_min > 0.0) {
        SpectralField dv_for_holder = lf.dv;
        holder = holder_seminorm(dv_for_holder, std::min(1.0, 0.5 * mu_min), 40000);
    }
    double theta_camp = 0.0;
    for (const Vec2 center : layout.centers()) {
        const BallProbe probe{center, layout.r0};
        if (!probe_resolved(grid, probe)) continue;
        theta_camp = std::max(theta_camp,
                              campanato_quotient(probe, lf.theta_p2,
                                                 std::isfinite(mu_min) ? mu_min : 0.5));
    }
    rep.scalars = {
        {"pass_fraction", fraction},
        {"mu_min", std::isfinite(mu_min) ? mu_min : 0.0},
        {"mu_floor", mu_floor},
        {"holder_seminorm_dv", holder},
        {"theta_campanato_sup", theta_camp},
        {"truncation_scale", std::pow(1.0 + state.A, 0.5 * data.model.exponent.p_minus)},
    };
    rep.empirical_constant = fraction;
    rep.pass = fraction >= 0.9;
    return rep;
}

}  // namespace pflow
