#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "pflow/audit.hpp"
#include "pflow/constitutive.hpp"

using namespace pflow;

TEST_CASE("viscosity matches its defining formula at sample points") {
    const ConstitutiveModel m = ConstitutiveModel::canonical();
    for (double c : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
        for (double s : {0.0, 0.3, 1.0, 4.0}) {
            const double p = 2.0 + 0.4 * std::tanh(c);
            const double g = 1.0 / (1.0 + c * c);
            const double expected = std::pow(1.0 + g + s * s, 0.5 * (p - 2.0));
            CHECK(m.viscosity(c, s) == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("truncated viscosity freezes the shear argument above A") {
    const ConstitutiveModel m = ConstitutiveModel::canonical();
    const double A = 2.0;
    CHECK(m.viscosity_truncated(0.5, 1.0, A) == m.viscosity(0.5, 1.0));
    CHECK(m.viscosity_truncated(0.5, 5.0, A) == m.viscosity(0.5, A));
    CHECK(m.viscosity_truncated(0.5, A, A) == m.viscosity(0.5, A));
}

TEST_CASE("theta_A definition and domain") {
    CHECK(theta_A(0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(theta_A(1.0, 2.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(theta_A(10.0, 2.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
    CHECK_THROWS_AS((void)theta_A(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("stress is frame-indifferent") {
    const ConstitutiveModel m = ConstitutiveModel::canonical();
    std::mt19937_64 rng(3u);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 50; ++trial) {
        const double c = u(rng);
        const Sym2 d{u(rng), u(rng), u(rng)};
        const Mat2 q = Mat2::rotation(u(rng) * 2.0);
        const Sym2 lhs = m.stress(c, rotate(q, d));
        const Sym2 rhs = rotate(q, m.stress(c, d));
        CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("flux law is elliptic and bounded by construction") {
    const FluxLaw flux;  // K1 = 0.5, K2 = 1.5
    std::mt19937_64 rng(5u);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double k = flux.scalar(u(rng), std::abs(u(rng)));
        CHECK(k >= 0.5);
        CHECK(k <= 1.5);
    }
    const Mat2 km = flux.matrix(0.0, 0.0);
    CHECK(km.a01 == 0.0);
    CHECK(km.a10 == 0.0);
    CHECK(km.a00 == doctest::Approx(1.5));
}

TEST_CASE("monotonicity of the truncated stress on sampled pairs") {
    // (S^A(c,D1) - S^A(c,D2)) : (D1 - D2) >= lambda theta_A(|D2|)^{p-2} |D1-D2|^2
    const ConstitutiveModel m = ConstitutiveModel::canonical();
    const double A = 2.0;
    std::mt19937_64 rng(9u);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double c = u(rng);
        const Sym2 d1{u(rng), u(rng), u(rng)};
        const Sym2 d2{u(rng), u(rng), u(rng)};
        const Sym2 diff = d1 - d2;
        if (diff.norm() < 1e-12) continue;
        const double lhs = (m.stress_truncated(c, d1, A) - m.stress_truncated(c, d2, A))
                               .contract(diff);
        const double p = m.exponent(c);
        const double weight = std::pow(theta_A(d2.norm(), A), p - 2.0);
        CHECK(lhs > 0.05 * weight * diff.norm2());
    }
}

TEST_CASE("canonical model passes the assumption audit") {
    const AssumptionAudit audit = audit_assumptions(ConstitutiveModel::canonical(), 2.0);
    CHECK(audit.pass);
    CHECK(audit.empirical_lambda > 0.0);
    CHECK(audit.empirical_K1 > 0.0);
    CHECK(audit.empirical_K2 >= audit.empirical_K1);
    for (const auto& r : audit.results) {
        INFO(r.name, ": ", r.witness);
        CHECK(r.pass);
    }
}

TEST_CASE("audit rejects the deliberately broken exponent with a witness") {
    ConstitutiveModel broken = ConstitutiveModel::canonical();
    // p(c) = 2 + 0.1 c^2 declares false global bounds and a false Lipschitz
    // constant; the audit must find a counterexample sample
    broken.exponent = ExponentFunction::quadratic(0.1, 2.4, 0.4);
    const AssumptionAudit audit = audit_assumptions(broken, 2.0);
    CHECK_FALSE(audit.pass);
    bool found_witness = false;
    for (const auto& r : audit.results)
        if (!r.pass && !r.witness.empty()) found_witness = true;
    CHECK(found_witness);
}

TEST_CASE("audit is deterministic for a fixed seed") {
    SampleSpec spec;
    spec.seed = 123u;
    const AssumptionAudit a = audit_assumptions(ConstitutiveModel::canonical(), 2.0, spec);
    const AssumptionAudit b = audit_assumptions(ConstitutiveModel::canonical(), 2.0, spec);
    REQUIRE(a.results.size() == b.results.size());
    CHECK(a.empirical_lambda == b.empirical_lambda);
    CHECK(a.empirical_K1 == b.empirical_K1);
    for (std::size_t i = 0; i < a.results.size(); ++i)
        CHECK(a.results[i].empirical_constant == b.results[i].empirical_constant);
}

TEST_CASE("newtonian model reduces to unit viscosity") {
    const ConstitutiveModel m = ConstitutiveModel::newtonian();
    CHECK(m.viscosity(0.3, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    const Sym2 d{1.0, -0.5, 0.25};
    const Sym2 s = m.stress(0.0, d);
    CHECK((s - d).norm() < 1e-15);
}
