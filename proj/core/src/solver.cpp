#include "pflow/solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pflow {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;

Eigen::VectorXd pack_sym(const SpectralField& t) {
    const auto& xx = t.physical(0);
    const auto& xy = t.physical(1);
    const auto& yy = t.physical(2);
    const Eigen::Index n = static_cast<Eigen::Index>(xx.size());
    Eigen::VectorXd out(3 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out[i] = xx[i];
        out[n + i] = sqrt2 * xy[i];
        out[2 * n + i] = yy[i];
    }
    return out;
}

Eigen::VectorXd pack_vec(const SpectralField& v) {
    const auto& x = v.physical(0);
    const auto& y = v.physical(1);
    const Eigen::Index n = static_cast<Eigen::Index>(x.size());
    Eigen::VectorXd out(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out[i] = x[i];
        out[n + i] = y[i];
    }
    return out;
}

SpectralField constant_scalar(PeriodicGrid grid, double value) {
    SpectralField f(grid, Rank::scalar);
    f.set_physical(0, std::vector<double>(grid.points(), value));
    return f;
}

SpectralField zero_mean_part(const SpectralField& f) {
    SpectralField out = f;
    out.mutable_spectral(0)[0] = cplx(0.0, 0.0);
    return out;
}

}  // namespace

void SolverConfig::validate() const {
    if (n_basis < 1) throw std::invalid_argument("SolverConfig: n_basis >= 1 required");
    if (A <= 1.0) throw std::invalid_argument("SolverConfig: A > 1 required");
    if (relaxation <= 0.0 || relaxation > 1.0)
        throw std::invalid_argument("SolverConfig: relaxation in (0,1] required");
    if (tol_residual <= 0.0) throw std::invalid_argument("SolverConfig: positive tolerance");
    if (max_picard < 1) throw std::invalid_argument("SolverConfig: max_picard >= 1 required");
    if (A_margin <= 0.0 || A_margin >= 1.0)
        throw std::invalid_argument("SolverConfig: A_margin in (0,1) required");
    if (A_growth <= 1.0) throw std::invalid_argument("SolverConfig: A_growth > 1 required");
    if (A_max < A) throw std::invalid_argument("SolverConfig: A_max >= A required");
}

GalerkinSolver::GalerkinSolver(SolverConfig cfg)
    : cfg_(cfg), basis_(StokesBasis::build(cfg.grid, cfg.n_basis)) {
    cfg_.validate();
    const Eigen::Index npts = cfg_.grid.points();
    dmat_.resize(3 * npts, basis_.size());
    wmat_.resize(2 * npts, basis_.size());
    for (int i = 0; i < basis_.size(); ++i) {
        SpectralField w = basis_.velocity_field(i);
        dmat_.col(i) = pack_sym(differentiate(w, DiffOp::sym_grad));
        wmat_.col(i) = pack_vec(w);
    }
}

SolutionState GalerkinSolver::initial_state() const {
    SolutionState s{std::vector<double>(basis_.size(), 0.0),
                    constant_scalar(cfg_.grid, cfg_.mean_c)};
    s.A = cfg_.A;
    return s;
}

SpectralField GalerkinSolver::velocity(const SolutionState& state) const {
    return basis_.combine(state.alpha);
}

double GalerkinSolver::shear_sup(const SolutionState& state) const {
    SpectralField d = differentiate(velocity(state), DiffOp::sym_grad);
    SpectralField fine = resample(d, 2 * cfg_.grid.n_modes);
    return max_abs(magnitude_field(fine));
}

SpectralField GalerkinSolver::apply_diffusion(const SpectralField& c_tilde,
                                              const SpectralField& kfield) const {
    SpectralField flux = multiply_exact(kfield, differentiate(c_tilde, DiffOp::grad));
    return scale(differentiate(flux, DiffOp::div), -1.0);
}

SpectralField GalerkinSolver::solve_diffusion(const SpectralField& rhs,
                                              const SpectralField& kfield,
                                              const SpectralField& warm,
                                              [[maybe_unused]] int picard_index) const {
    const double rhs_norm = l2_norm(rhs);
    if (rhs_norm == 0.0) return zero_field(cfg_.grid, Rank::scalar);
    const double kbar = integral(kfield);
    auto precond = [&](const SpectralField& r) {
        return scale(inverse_laplacian(r), -1.0 / kbar);
    };

    SpectralField x = zero_mean_part(warm);
    SpectralField r = subtract(rhs, apply_diffusion(x, kfield));
    SpectralField z = precond(r);
    SpectralField p = z;
    double rz = inner_product(r, z);
    const double tol = 1e-13 * rhs_norm;

    // stagnation guard: near machine precision the recursion stops making
    // progress; hand the best iterate back and let the outer residual decide
    SpectralField best_x = x;
    double best_norm = l2_norm(r);
    int stalled = 0;
    for (int it = 0; it < 1000; ++it) {
        const double rnorm = l2_norm(r);
        if (rnorm < best_norm) {
            best_norm = rnorm;
            best_x = x;
            stalled = 0;
        } else if (++stalled >= 25) {
            return best_x;
        }
        if (rnorm <= tol) return x;
        SpectralField ap = apply_diffusion(p, kfield);
        const double pap = inner_product(p, ap);
        // the operator is SPD, so a nonpositive curvature means the search
        // direction has degenerated to roundoff
        if (!(pap > 0.0)) return best_x;
        const double a = rz / pap;
        x = add(x, scale(p, a));
        r = subtract(r, scale(ap, a));
        z = precond(r);
        const double rz_new = inner_product(r, z);
        p = add(z, scale(p, rz_new / rz));
        rz = rz_new;
    }
    return best_x;
}

Residual GalerkinSolver::residual(const SolutionState& state, const ProblemData& data) const {
    const PeriodicGrid grid = cfg_.grid;
    const double h2 = grid.spacing() * grid.spacing();
    const Eigen::Index npts = grid.points();

    SpectralField v = velocity(state);
    SpectralField d = differentiate(v, DiffOp::sym_grad);
    const SpectralField d_mag = magnitude_field(d);
    const auto& mag = d_mag.physical(0);
    const auto& cv = state.c.physical(0);

    Eigen::VectorXd nu(3 * npts);
    for (Eigen::Index i = 0; i < npts; ++i) {
        const double val = data.model.viscosity_truncated(cv[i], mag[i], state.A);
        nu[i] = nu[npts + i] = nu[2 * npts + i] = val;
    }

    const Eigen::Map<const Eigen::VectorXd> alpha(state.alpha.data(),
                                                  static_cast<Eigen::Index>(state.alpha.size()));
    Eigen::VectorXd stress_term =
        dmat_.transpose() * nu.cwiseProduct(dmat_ * alpha) * h2;
    Eigen::VectorXd conv_term =
        dmat_.transpose() * pack_sym(outer_sym(v, v)) * h2;
    Eigen::VectorXd force_term = wmat_.transpose() * pack_vec(data.f) * h2;
    Eigen::VectorXd rm = stress_term - conv_term - force_term;

    // concentration: div(c v + g - K grad c), all products on the doubled grid
    SpectralField kfield(grid, Rank::scalar);
    {
        std::vector<double> kv(npts);
        for (Eigen::Index i = 0; i < npts; ++i) kv[i] = data.model.flux.scalar(cv[i], mag[i]);
        kfield.set_physical(0, std::move(kv));
    }
    SpectralField flux = multiply_exact(kfield, differentiate(state.c, DiffOp::grad));
    SpectralField adv = multiply_exact(state.c, v);
    SpectralField rc = differentiate(subtract(add(adv, data.g), flux), DiffOp::div);

    Residual res{std::vector<double>(rm.data(), rm.data() + rm.size()), rc, rm.norm(),
                 l2_norm(rc), 0.0};
    const double fscale = l2_norm(data.f) > 0.0 ? l2_norm(data.f) : 1.0;
    const double gscale = l2_norm(data.g) > 0.0 ? l2_norm(data.g) : 1.0;
    res.combined = std::max(res.momentum_norm / fscale, res.concentration_norm / gscale);
    return res;
}

SolutionState GalerkinSolver::picard_step(const SolutionState& state,
                                          const ProblemData& data) const {
    const PeriodicGrid grid = cfg_.grid;
    const double h2 = grid.spacing() * grid.spacing();
    const Eigen::Index npts = grid.points();

    SpectralField v_old = velocity(state);
    SpectralField d = differentiate(v_old, DiffOp::sym_grad);
    const SpectralField d_mag = magnitude_field(d);
    const auto& mag = d_mag.physical(0);
    const auto& cv = state.c.physical(0);

    Eigen::VectorXd nu(3 * npts);
    SpectralField kfield(grid, Rank::scalar);
    {
        std::vector<double> kv(npts);
        for (Eigen::Index i = 0; i < npts; ++i) {
            const double val = data.model.viscosity_truncated(cv[i], mag[i], state.A);
            nu[i] = nu[npts + i] = nu[2 * npts + i] = val;
            kv[i] = data.model.flux.scalar(cv[i], mag[i]);
        }
        kfield.set_physical(0, std::move(kv));
    }

    // momentum: SPD system with frozen viscosity, lagged convection on the right
    Eigen::MatrixXd m = dmat_.transpose() * nu.asDiagonal() * dmat_ * h2;
    Eigen::VectorXd b = dmat_.transpose() * pack_sym(outer_sym(v_old, v_old)) * h2 +
                        wmat_.transpose() * pack_vec(data.f) * h2;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("momentum solve breakdown at Picard iteration " +
                                 std::to_string(state.iterations));
    Eigen::VectorXd alpha_new = llt.solve(b);

    // concentration: -div(K grad c_new) = -div(c_old v_old + g)
    SpectralField adv = multiply_exact(state.c, v_old);
    SpectralField rhs = scale(differentiate(add(adv, data.g), DiffOp::div), -1.0);
    SpectralField c_tilde_new = solve_diffusion(rhs, kfield, state.c, state.iterations);

    const double w = cfg_.relaxation;
    SolutionState next = state;
    next.alpha.resize(alpha_new.size());
    for (Eigen::Index i = 0; i < alpha_new.size(); ++i)
        next.alpha[i] = w * alpha_new[i] + (1.0 - w) * state.alpha[i];
    SpectralField blended = add(scale(c_tilde_new, w), scale(zero_mean_part(state.c), 1.0 - w));
    next.c = add(blended, constant_scalar(grid, cfg_.mean_c));
    next.iterations = state.iterations + 1;
    return next;
}

SolutionState GalerkinSolver::solve(const ProblemData& data) const {
    return solve(data, initial_state());
}

SolutionState GalerkinSolver::solve(const ProblemData& data, SolutionState warm_start) const {
    if (l2_norm(data.f) == 0.0 && l2_norm(data.g) == 0.0) {
        SolutionState s = initial_state();
        s.A = warm_start.A;
        s.converged = true;
        s.residual_history.push_back(0.0);
        return s;
    }

    SolutionState state = std::move(warm_start);
    state.converged = false;
    state.residual_history.clear();
    while (true) {
        Residual res = residual(state, data);
        state.residual_history.push_back(res.combined);
        if (res.combined <= cfg_.tol_residual) {
            state.converged = true;
            break;
        }
        if (state.iterations >= cfg_.max_picard) {
            state.message = "Picard iteration did not reach tolerance within " +
                            std::to_string(cfg_.max_picard) + " steps";
            break;
        }
        state = picard_step(state, data);
    }
    state.max_shear = shear_sup(state);
    return state;
}

SolutionState GalerkinSolver::truncation_loop(const ProblemData& data) const {
    SolutionState warm = initial_state();
    double a = cfg_.A;
    std::vector<std::pair<double, double>> shear_history;
    while (true) {
        warm.A = a;
        warm.iterations = 0;
        SolutionState s = solve(data, std::move(warm));
        shear_history.emplace_back(a, s.max_shear);
        s.shear_history = shear_history;
        if (!s.converged) return s;
        if (s.max_shear <= cfg_.A_margin * a) {
            s.truncation_accepted = true;
            return s;
        }
        const double next_a = a * cfg_.A_growth;
        if (next_a > cfg_.A_max) {
            s.truncation_accepted = false;
            s.message = "truncation level exceeded A_max = " + std::to_string(cfg_.A_max);
            return s;
        }
        a = next_a;
        warm = std::move(s);
    }
}

ProblemData standard_problem(PeriodicGrid grid, double amplitude) {
    using std::cos;
    using std::sin;
    const double tp = 2.0 * std::numbers::pi;
    SpectralField f = SpectralField::from_function(
        grid, Rank::vector, [&](double x, double y) -> std::vector<double> {
            return {amplitude * (sin(tp * y) + 0.3 * cos(tp * (x + y))),
                    amplitude * (sin(tp * x) - 0.3 * cos(tp * (x - y)))};
        });
    SpectralField g = SpectralField::from_function(
        grid, Rank::vector, [&](double x, double y) -> std::vector<double> {
            return {0.5 * amplitude * cos(tp * x) * sin(tp * y),
                    0.5 * amplitude * sin(tp * x) * cos(tp * y)};
        });
    return ProblemData{std::move(f), std::move(g), ConstitutiveModel::canonical()};
}

}  // namespace pflow
