#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pflow/constitutive.hpp"
#include "pflow/field.hpp"
#include "pflow/stokes_basis.hpp"

namespace pflow {

struct SolverConfig {
    int n_basis = 8;
    PeriodicGrid grid{32};
    double A = 2.0;                 ///< shear-truncation level, > 1
    double relaxation = 0.7;        ///< Picard blending weight in (0,1]
    double tol_residual = 1e-9;     ///< combined relative residual target
    int max_picard = 500;
    double A_margin = 0.9;          ///< accept when max_shear <= margin * A
    double A_growth = 2.0;
    double A_max = 1e6;
    double mean_c = 1.0;            ///< prescribed concentration mean

    void validate() const;
};

struct ProblemData {
    SpectralField f;       ///< body force (vector)
    SpectralField g;       ///< concentration source (vector, enters as div g)
    ConstitutiveModel model;
    /// declared integrability margin of f (f in L^{2+2r}); feeds the decay
    /// exponent used by the local estimates
    double f_integrability_r = 1.0;
};

struct SolutionState {
    std::vector<double> alpha;      ///< velocity coefficients
    SpectralField c;                ///< concentration, mean pinned to mean_c
    std::vector<double> residual_history;
    bool converged = false;
    double A = 2.0;
    double max_shear = 0.0;
    int iterations = 0;
    /// (A, max_shear) per truncation level, filled by the truncation loop
    std::vector<std::pair<double, double>> shear_history;
    bool truncation_accepted = false;
    std::string message;
};

struct Residual {
    std::vector<double> momentum;   ///< Galerkin momentum defect per mode
    SpectralField concentration;    ///< strong-form concentration defect
    double momentum_norm = 0.0;
    double concentration_norm = 0.0;
    double combined = 0.0;          ///< max of the two relative norms
};

/// Damped Picard (lagged-coefficient) solver for the truncated coupled
/// system on a divergence-free Stokes eigenbasis; the concentration is kept
/// on the full Fourier grid.
class GalerkinSolver {
public:
    explicit GalerkinSolver(SolverConfig cfg);

    const SolverConfig& config() const { return cfg_; }
    const StokesBasis& basis() const { return basis_; }

    SolutionState initial_state() const;
    SpectralField velocity(const SolutionState& state) const;
    /// sup-norm of |Dv| sampled on a refined grid
    double shear_sup(const SolutionState& state) const;

    Residual residual(const SolutionState& state, const ProblemData& data) const;
    /// one lagged-coefficient step: frozen viscosity/flux, explicit
    /// convection, SPD momentum solve, diffusion solve, blending
    SolutionState picard_step(const SolutionState& state, const ProblemData& data) const;

    SolutionState solve(const ProblemData& data) const;
    SolutionState solve(const ProblemData& data, SolutionState warm_start) const;

    /// repeat solve, growing A until max_shear <= A_margin * A or A_max hit
    SolutionState truncation_loop(const ProblemData& data) const;

private:
    SolverConfig cfg_;
    StokesBasis basis_;
    Eigen::MatrixXd dmat_;  ///< packed Dw_i samples (off-diagonal * sqrt2)
    Eigen::MatrixXd wmat_;  ///< packed w_i samples

    SpectralField apply_diffusion(const SpectralField& c_tilde, const SpectralField& kfield) const;
    SpectralField solve_diffusion(const SpectralField& rhs, const SpectralField& kfield,
                                  const SpectralField& warm, int picard_index) const;
};

/// smooth built-in test problem with the canonical model
ProblemData standard_problem(PeriodicGrid grid, double amplitude = 0.05);

}  // namespace pflow
