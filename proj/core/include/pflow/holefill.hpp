#pragma once

#include <string>
#include <vector>

namespace pflow {

/// Local-mass data on a dyadic radius ladder R0, R0/2, ..., R0/2^K together
/// with the constants (alpha, beta, nu) of the hole-filling hypothesis
///   G(R) <= alpha (G(2R) - G(R)) + beta R^nu.
struct HoleFillCase {
    std::vector<double> radii;  ///< descending, radii[k] = r0 * 2^{-k}
    std::vector<double> g;      ///< G(radii[k]) = mass of |g| in B_{radii[k]}
    double alpha = 1.0;
    double beta = 1.0;
    double nu = 1.0;
    double r0 = 0.25;

    /// throws std::invalid_argument if radii are not dyadic from r0,
    /// G is not nondecreasing in R, or any constant is nonpositive
    void validate() const;
};

/// mu = min{ nu/2, log2((1+alpha)/alpha) }
double mu_exponent(double alpha, double nu);

struct RadiusCheck {
    double radius = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct HypothesisReport {
    std::vector<RadiusCheck> checks;  ///< radii that have a doubled partner
    bool pass = false;
    /// minimal beta (at the case's alpha) making every radius pass
    double minimal_beta = 0.0;
    double alpha = 0.0;  ///< echoed from the case
};

/// Check G(R) <= alpha (G(2R) - G(R)) + beta R^nu at every dyadic radius
/// whose double is also on the ladder.  Failure is a result, not an error.
HypothesisReport check_hypothesis(const HoleFillCase& c);

struct ConclusionReport {
    double mu = 0.0;
    std::vector<RadiusCheck> checks;
    /// rhs/lhs per radius (infinity when lhs = 0)
    std::vector<double> slack;
    bool pass = false;
};

/// decay bound R^mu (2^nu G(R0)/R0^mu + beta/(2^{nu/2}-1)) at radius R
double conclusion_bound(const HoleFillCase& c, double radius, double mu);

/// Verify the decay conclusion at every ladder radius below R0.  Refuses
/// (std::logic_error) unless the hypothesis report passed.
ConclusionReport check_conclusion(const HoleFillCase& c, const HypothesisReport& hypothesis);

/// contraction factor max{ alpha 2^mu/(1+alpha), 2^{mu-nu}(eps+1) } with
/// eps = 2^{nu/2} - 1; at mu = mu_exponent(alpha, nu) this never exceeds 1
double replay_factor(double alpha, double nu);

struct ReplayReport {
    std::vector<double> eta;  ///< eta(R) per ladder radius, same order as radii
    double factor = 0.0;      ///< replay_factor at the case's constants
    bool monotone = false;    ///< eta(R) <= eta(2R) along the ladder
    bool pass = false;        ///< monotone and factor <= 1 + 1e-12
};

/// Re-run the proof's one-step recursion eta(R) <= eta(2R) numerically.
ReplayReport replay_recursion(const HoleFillCase& c);

enum class SynthKind { power, plateau, random_monotone };

struct SynthParams {
    double r0 = 0.25;
    int levels = 6;     ///< radii r0 * 2^{-k}, k = 0..levels
    double s = 1.0;     ///< power kind: g = |x|^{-s}, s in (0,2)
    double knee = 0.05; ///< plateau kind: G constant above this radius
    double scale = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double nu = 1.0;
};

/// Reproducible test cases.  power carries the closed form
/// G(R) = 2 pi R^{2-s}/(2-s) with alpha = 1/(2^{2-s} - 1), nu = 2(2-s).
HoleFillCase synth_case(SynthKind kind, const SynthParams& params, unsigned long seed = 0);

}  // namespace pflow
