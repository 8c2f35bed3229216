#include "pflow/holefill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pflow {

void HoleFillCase::validate() const {
    if (radii.empty() || radii.size() != g.size())
        throw std::invalid_argument("HoleFillCase: radii and G must be nonempty, same length");
    if (alpha <= 0.0 || beta <= 0.0 || nu <= 0.0)
        throw std::invalid_argument("HoleFillCase: alpha, beta, nu must be positive");
    if (r0 <= 0.0 || r0 > 1.0) throw std::invalid_argument("HoleFillCase: R0 in (0,1] required");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double expected = r0 * std::pow(2.0, -static_cast<double>(k));
        if (std::abs(radii[k] - expected) > 1e-12 * r0)
            throw std::invalid_argument("HoleFillCase: radii must be dyadic from R0");
        if (g[k] < 0.0) throw std::invalid_argument("HoleFillCase: G must be nonnegative");
        if (k > 0 && g[k] > g[k - 1] + 1e-15 * std::abs(g[k - 1]))
            throw std::invalid_argument("HoleFillCase: G must be nondecreasing in R");
    }
}

double mu_exponent(double alpha, double nu) {
    if (alpha <= 0.0 || nu <= 0.0)
        throw std::invalid_argument("mu_exponent: positive alpha and nu required");
    return std::min(0.5 * nu, std::log2((1.0 + alpha) / alpha));
}

HypothesisReport check_hypothesis(const HoleFillCase& c) {
    c.validate();
    HypothesisReport rep;
    rep.alpha = c.alpha;
    rep.pass = true;
    // radii[k] has its double on the ladder for k >= 1
    for (std::size_t k = 1; k < c.radii.size(); ++k) {
        const double R = c.radii[k];
        const double annulus = c.g[k - 1] - c.g[k];
        RadiusCheck chk;
        chk.radius = R;
        chk.lhs = c.g[k];
        chk.rhs = c.alpha * annulus + c.beta * std::pow(R, c.nu);
        chk.pass = chk.lhs <= chk.rhs * (1.0 + 1e-12);
        rep.pass = rep.pass && chk.pass;
        rep.checks.push_back(chk);

        const double needed = (c.g[k] - c.alpha * annulus) / std::pow(R, c.nu);
        rep.minimal_beta = std::max(rep.minimal_beta, needed);
    }
    rep.minimal_beta = std::max(rep.minimal_beta, 0.0);
    return rep;
}

double conclusion_bound(const HoleFillCase& c, double radius, double mu) {
    const double g0 = c.g.front();
    return std::pow(radius, mu) *
           (std::pow(2.0, c.nu) * g0 / std::pow(c.r0, mu) +
            c.beta / (std::pow(2.0, 0.5 * c.nu) - 1.0));
}

ConclusionReport check_conclusion(const HoleFillCase& c, const HypothesisReport& hypothesis) {
    if (!hypothesis.pass)
        throw std::logic_error("check_conclusion: hypothesis must be verified first");
    c.validate();
    ConclusionReport rep;
    rep.mu = mu_exponent(c.alpha, c.nu);
    rep.pass = true;
    for (std::size_t k = 1; k < c.radii.size(); ++k) {
        RadiusCheck chk;
        chk.radius = c.radii[k];
        chk.lhs = c.g[k];
        chk.rhs = conclusion_bound(c, c.radii[k], rep.mu);
        chk.pass = chk.lhs <= chk.rhs * (1.0 + 1e-12);
        rep.pass = rep.pass && chk.pass;
        rep.checks.push_back(chk);
        rep.slack.push_back(chk.lhs > 0.0 ? chk.rhs / chk.lhs
                                          : std::numeric_limits<double>::infinity());
    }
    return rep;
}

double replay_factor(double alpha, double nu) {
    const double mu = mu_exponent(alpha, nu);
    const double eps = std::pow(2.0, 0.5 * nu) - 1.0;
    return std::max(alpha * std::pow(2.0, mu) / (1.0 + alpha),
                    std::pow(2.0, mu - nu) * (eps + 1.0));
}

ReplayReport replay_recursion(const HoleFillCase& c) {
    c.validate();
    ReplayReport rep;
    const double mu = mu_exponent(c.alpha, c.nu);
    const double eps = std::pow(2.0, 0.5 * c.nu) - 1.0;
    for (std::size_t k = 0; k < c.radii.size(); ++k) {
        const double R = c.radii[k];
        rep.eta.push_back(c.g[k] / std::pow(R, mu) +
                          c.beta / (eps * (1.0 + c.alpha)) * std::pow(R, c.nu - mu));
    }
    rep.factor = replay_factor(c.alpha, c.nu);
    rep.monotone = true;
    for (std::size_t k = 1; k < rep.eta.size(); ++k)
        rep.monotone = rep.monotone && rep.eta[k] <= rep.eta[k - 1] * (1.0 + 1e-12);
    rep.pass = rep.monotone && rep.factor <= 1.0 + 1e-12;
    return rep;
}

HoleFillCase synth_case(SynthKind kind, const SynthParams& params, unsigned long seed) {
    if (params.levels < 1 || params.r0 <= 0.0 || params.r0 > 1.0 || params.scale <= 0.0)
        throw std::invalid_argument("synth_case: invalid parameters");
    HoleFillCase c;
    c.r0 = params.r0;
    for (int k = 0; k <= params.levels; ++k) c.radii.push_back(params.r0 * std::pow(2.0, -k));

    switch (kind) {
        case SynthKind::power: {
            if (params.s <= 0.0 || params.s >= 2.0)
                throw std::invalid_argument("synth_case: power kind needs s in (0,2)");
            const double q = 2.0 - params.s;
            for (double R : c.radii)
                c.g.push_back(2.0 * std::numbers::pi * std::pow(R, q) / q * params.scale);
            c.alpha = 1.0 / (std::pow(2.0, q) - 1.0);
            c.nu = 2.0 * q;
            c.beta = 1e-12 * c.g.front();  // closed-form hypothesis holds with any beta > 0
            break;
        }
        case SynthKind::plateau: {
            for (double R : c.radii) {
                const double r = std::min(R, params.knee);
                c.g.push_back(params.scale * (r / params.knee) * (r / params.knee));
            }
            c.alpha = params.alpha;
            c.beta = params.beta;
            c.nu = params.nu;
            break;
        }
        case SynthKind::random_monotone: {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            // build nondecreasing G on the ascending ladder, then reverse
            std::vector<double> asc(c.radii.size());
            double acc = 0.0;
            for (auto& v : asc) {
                acc += u(rng) * params.scale;
                v = acc;
            }
            c.g.assign(asc.rbegin(), asc.rend());
            c.alpha = params.alpha;
            c.beta = params.beta;
            c.nu = params.nu;
            break;
        }
    }
    c.validate();
    return c;
}

}  // namespace pflow
