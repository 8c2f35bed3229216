#include "pflow/audit.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace pflow {

namespace {

std::string describe(double c, double dmag) {
    std::ostringstream ss;
    ss << "c=" << c << " |D|=" << dmag;
    return ss.str();
}

Sym2 random_unit_sym(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Sym2 s{gauss(rng), gauss(rng), gauss(rng)};
    const double n = s.norm();
    return n > 0 ? s * (1.0 / n) : Sym2{1.0, 0.0, 0.0};
}

// directional derivative of S(c, .) at D along B, central differences
Sym2 fd_dD(const ConstitutiveModel& m, double c, Sym2 D, Sym2 B, double A, bool truncated,
           double h) {
    auto eval = [&](Sym2 d) { return truncated ? m.stress_truncated(c, d, A) : m.stress(c, d); };
    return (eval(D + B * h) - eval(D - B * h)) * (1.0 / (2.0 * h));
}

Sym2 fd_dc(const ConstitutiveModel& m, double c, Sym2 D, double A, bool truncated, double h) {
    auto eval = [&](double cc) {
        return truncated ? m.stress_truncated(cc, D, A) : m.stress(cc, D);
    };
    return (eval(c + h) - eval(c - h)) * (1.0 / (2.0 * h));
}

struct Extremum {
    double value;
    std::string witness;
};

}  // namespace

const InequalityResult* AssumptionAudit::find(const std::string& name) const {
    for (const auto& r : results)
        if (r.name == name) return &r;
    return nullptr;
}

AssumptionAudit audit_assumptions(const ConstitutiveModel& model, double A,
                                  const SampleSpec& spec) {
    AssumptionAudit audit;
    std::mt19937_64 rng(spec.seed);

    std::vector<double> c_values;
    for (int i = 0; i < spec.c_samples; ++i)
        c_values.push_back(-spec.c_range + 2.0 * spec.c_range * i / (spec.c_samples - 1));

    // shear strata: near 0, order one, near A and well above A
    const std::vector<double> d_values = {0.0,     0.01,    0.1,     0.5,    1.0,    0.5 * A,
                                          0.9 * A, 0.99 * A, 1.01 * A, 1.5 * A, 3.0 * A, 10.0 * A};

    // ---- exponent function: bounds and Lipschitz constant ----
    {
        InequalityResult bounds{"exponent_bounds", 0.0, true, ""};
        InequalityResult lip{"exponent_lipschitz", 0.0, true, ""};
        const double dc = 1e-3;
        double prev = model.exponent(-5.0);
        for (double c = -5.0; c <= 5.0 + 1e-12; c += dc) {
            const double p = model.exponent(c);
            if (p < model.exponent.p_minus - 1e-12 || p > model.exponent.p_plus + 1e-12) {
                bounds.pass = false;
                if (bounds.witness.empty()) bounds.witness = describe(c, 0.0) + " p=" + std::to_string(p);
            }
            if (c > -5.0) {
                const double quot = std::abs(p - prev) / dc;
                lip.empirical_constant = std::max(lip.empirical_constant, quot);
                if (quot > model.exponent.lipschitz * (1.0 + 1e-6) + 1e-9) {
                    lip.pass = false;
                    if (lip.witness.empty())
                        lip.witness = describe(c, 0.0) + " quotient=" + std::to_string(quot);
                }
            }
            prev = p;
        }
        audit.results.push_back(bounds);
        audit.results.push_back(lip);
    }

    // ---- stress derivative inequalities ----
    Extremum h1{0.0, ""}, h2{std::numeric_limits<double>::infinity(), ""};
    Extremum h3{0.0, ""};
    Extremum c00{0.0, ""}, c11{std::numeric_limits<double>::infinity(), ""}, c22{0.0, ""};
    Extremum h4_lo{std::numeric_limits<double>::infinity(), ""}, h4_hi{0.0, ""};

    for (double c : c_values) {
        const double p = model.exponent(c);
        for (double dmag : d_values) {
            const Sym2 Du = random_unit_sym(rng);
            const Sym2 D = Du * dmag;
            const double h = spec.fd_step * (1.0 + dmag);
            const double env_plain = std::pow(1.0 + dmag, p - 2.0);
            const double th = theta_A(dmag, A);
            const double env_theta = std::pow(th, p - 2.0);

            // (H4) viscosity sandwich
            const double nu = model.viscosity(c, dmag);
            const double r_lo = nu / env_plain;
            if (r_lo < h4_lo.value) h4_lo = {r_lo, describe(c, dmag)};
            if (r_lo > h4_hi.value) h4_hi = {r_lo, describe(c, dmag)};

            for (int bdir = 0; bdir < spec.directions; ++bdir) {
                const Sym2 B = random_unit_sym(rng);

                const Sym2 dSB = fd_dD(model, c, D, B, A, /*truncated=*/false, h);
                const double r1 = dSB.norm() / env_plain;
                if (r1 > h1.value) h1 = {r1, describe(c, dmag)};
                const double r2 = dSB.contract(B) / env_plain;
                if (r2 < h2.value) h2 = {r2, describe(c, dmag)};

                const Sym2 dSB_A = fd_dD(model, c, D, B, A, /*truncated=*/true, h);
                const double r3 = dSB_A.norm() / env_theta;
                if (r3 > c00.value) c00 = {r3, describe(c, dmag)};
                const double r4 = dSB_A.contract(B) / env_theta;
                if (r4 < c11.value) c11 = {r4, describe(c, dmag)};
            }

            const Sym2 dSc = fd_dc(model, c, D, A, /*truncated=*/false, 1e-6);
            const double env_h3 = std::pow(1.0 + dmag, p - 1.0) * std::log(2.0 + dmag);
            const double r5 = dSc.norm() / env_h3;
            if (r5 > h3.value) h3 = {r5, describe(c, dmag)};

            if (dmag > 0.0) {
                const Sym2 dSc_A = fd_dc(model, c, D, A, /*truncated=*/true, 1e-6);
                const double env_c22 = std::log(th) * env_theta * dmag;
                const double r6 = dSc_A.norm() / env_c22;
                if (r6 > c22.value) c22 = {r6, describe(c, dmag)};
            }
        }
    }

    auto push_upper = [&](const std::string& name, const Extremum& e) {
        audit.results.push_back({name, e.value, std::isfinite(e.value), e.witness});
    };
    auto push_lower = [&](const std::string& name, const Extremum& e) {
        audit.results.push_back({name, e.value, e.value > 0.0, e.witness});
    };
    push_upper("H1_upper_growth", h1);
    push_lower("H2_monotonicity", h2);
    push_upper("H3_c_derivative", h3);
    push_upper("c00_truncated_growth", c00);
    push_lower("c11_truncated_monotonicity", c11);
    push_upper("c22_truncated_c_derivative", c22);
    audit.results.push_back({"H4_lower", h4_lo.value, h4_lo.value > 0.0, h4_lo.witness});
    audit.results.push_back({"H4_upper", h4_hi.value, std::isfinite(h4_hi.value), h4_hi.witness});
    audit.empirical_lambda = c11.value;

    // ---- flux bounds (concentration-flux-vector) ----
    {
        std::uniform_real_distribution<double> uc(-5.0, 5.0);
        std::uniform_real_distribution<double> us(0.0, 10.0 * A);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Extremum kmax{0.0, ""}, kmin{std::numeric_limits<double>::infinity(), ""};
        for (int i = 0; i < spec.flux_samples; ++i) {
            const double c = uc(rng);
            const double s = us(rng);
            Vec2 xi{gauss(rng), gauss(rng)};
            const double xin = xi.norm();
            if (xin == 0.0) continue;
            xi = xi * (1.0 / xin);
            const Mat2 K = model.flux_matrix(c, s);
            // spectral norm of the symmetric 2x2 matrix
            const double tr = 0.5 * (K.a00 + K.a11);
            const double det = K.a00 * K.a11 - K.a01 * K.a10;
            const double disc = std::sqrt(std::max(0.0, tr * tr - det));
            const double knorm = std::abs(tr) + disc;
            if (knorm > kmax.value) kmax = {knorm, describe(c, s)};
            const double ell = K.apply(xi).dot(xi);
            if (ell < kmin.value) kmin = {ell, describe(c, s)};
        }
        audit.results.push_back({"flux_bound", kmax.value,
                                 kmax.value <= model.flux.K2 + 1e-12, kmax.witness});
        audit.results.push_back({"flux_ellipticity", kmin.value,
                                 kmin.value >= model.flux.K1 - 1e-12, kmin.witness});
        audit.empirical_K1 = kmin.value;
        audit.empirical_K2 = kmax.value;
    }

    audit.pass = true;
    for (const auto& r : audit.results) audit.pass = audit.pass && r.pass;
    return audit;
}

}  // namespace pflow
