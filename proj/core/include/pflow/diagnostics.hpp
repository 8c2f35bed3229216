#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pflow/ball.hpp"
#include "pflow/manufactured.hpp"
#include "pflow/solver.hpp"

namespace pflow {

/// regular grid of probe centers with a dyadic radius ladder
struct ProbeLayout {
    int centers_per_dim = 8;
    double r0 = 0.25;       ///< base radius; dyadic radii r0 * 2^{-k}
    int dyadic_levels = 4;  ///< k = 0..dyadic_levels

    std::vector<Vec2> centers() const;
    std::vector<double> radii() const;
};

struct ProbeRow {
    Vec2 center;
    double radius = 0.0;
    double lhs = 0.0;
    std::vector<double> rhs_terms;
    double local_constant = 0.0;  ///< minimal C making this probe pass
    std::string tag;
};

struct EstimateReport {
    std::string name;
    std::vector<ProbeRow> rows;
    /// named summary quantities (norms, fitted exponents, ...)
    std::vector<std::pair<std::string, double>> scalars;
    double empirical_constant = 0.0;  ///< min C dominating every probe
    bool pass = false;
    int excluded_probes = 0;
    int n_modes = 0;
    double A = 0.0;

    double scalar(const std::string& key) const;  ///< throws if missing
    bool has_scalar(const std::string& key) const;
};

/// decay exponent nu = min{ delta/(2(2+delta)), r/(2(1+r)) }
double nu_exponent(double delta, double r);

/// per-center exponent mu_i = min{ nu/2, log2((c1 + C c0)/(C c0)) } with
/// c0 = (1+A^2)^{(max{2,p+}-2)/2}, c1 = (1+A^2)^{(min{2,p-}-2)/2}
double mu_i_exponent(double nu, double A, double p_minus, double p_plus, double cover_C = 1.0);

/// B^r - B^s <= (r-s) B^r ln B for B >= 1, r >= s >= 0
bool log_factor_bound(double B, double r, double s);

/// regime label against the thresholds 3 and 3/2: "I" (p >= 3),
/// "II" (p <= 3/2), "III" (in between)
std::string regime_tag(double p_value);

/// both discrete energy identities plus the basic norm quartet
EstimateReport energy_report(const GalerkinSolver& solver, const SolutionState& state,
                             const ProblemData& data);

/// reverse-Hoelder / Caccioppoli inequality for the concentration gradient;
/// delta configures the improved-integrability proxy ||grad c||_{2+delta}
EstimateReport caccioppoli_report(const GalerkinSolver& solver, const SolutionState& state,
                                  const ProblemData& data, const ProbeLayout& layout,
                                  double delta = 0.5);

/// weighted second-gradient quantities and ||Dv||_beta for beta in {4,8,16}
EstimateReport weighted_h2_report(const GalerkinSolver& solver, const SolutionState& state,
                                  const ProblemData& data);

/// local weighted second-gradient inequality in hole-filling normal form;
/// the empirical (alpha, beta) pair is stored in the scalars and feeds the
/// hole-filling verifier (alpha = beta = empirical constant, which makes
/// both right-hand terms pass simultaneously)
EstimateReport hole_start_report(const GalerkinSolver& solver, const SolutionState& state,
                                 const ProblemData& data, const ProbeLayout& layout, double nu);

/// per-center log-log decay fits of the weighted local energies against the
/// covering exponents mu_i; centers with fewer than 3 resolved radii are
/// skipped and counted
EstimateReport key_estimate_report(const GalerkinSolver& solver, const SolutionState& state,
                                   const ProblemData& data, const ProbeLayout& layout, double nu,
                                   double delta = 0.5, double cover_C = 1.0,
                                   double mu_floor = 0.5);

}  // namespace pflow
