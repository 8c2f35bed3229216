#include "pflow/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pflow {

double ExponentFunction::operator()(double c) const {
    switch (kind) {
        case Kind::constant: return base;
        case Kind::tanh_law: return base + a * std::tanh(b * c);
        case Kind::quadratic: return 2.0 + a * c * c;
    }
    return base;
}

ExponentFunction ExponentFunction::constant(double p) {
    ExponentFunction e;
    e.kind = Kind::constant;
    e.base = p;
    e.p_minus = e.p_plus = p;
    e.lipschitz = 0.0;
    return e;
}

ExponentFunction ExponentFunction::tanh_law(double a, double b, double base) {
    if (a < 0.0 || a > 0.9 || b <= 0.0)
        throw std::invalid_argument("tanh_law: require a in [0, 0.9] and b > 0");
    ExponentFunction e;
    e.kind = Kind::tanh_law;
    e.a = a;
    e.b = b;
    e.base = base;
    e.p_minus = base - a;
    e.p_plus = base + a;
    e.lipschitz = a * b;
    return e;
}

ExponentFunction ExponentFunction::quadratic(double a, double declared_p_plus,
                                             double declared_lipschitz) {
    ExponentFunction e;
    e.kind = Kind::quadratic;
    e.a = a;
    e.p_minus = 2.0;
    e.p_plus = declared_p_plus;
    e.lipschitz = declared_lipschitz;
    return e;
}

double GammaFunction::operator()(double c) const {
    return kind == Kind::zero ? 0.0 : g0 / (1.0 + c * c);
}

GammaFunction GammaFunction::zero() { return GammaFunction{}; }

GammaFunction GammaFunction::rational(double g0) {
    GammaFunction g;
    g.kind = Kind::rational;
    g.g0 = g0;
    return g;
}

double FluxLaw::scalar(double c, double s) const {
    return K1 + (K2 - K1) / (1.0 + c * c + s * s);
}

Mat2 FluxLaw::matrix(double c, double s) const {
    const double k = scalar(c, s);
    return {k, 0.0, 0.0, k};
}

double theta_A(double b_mag, double A) {
    if (A <= 1.0) throw std::invalid_argument("theta_A: require A > 1");
    const double m = std::min(A * A, b_mag * b_mag);
    return std::sqrt(2.0 + m);
}

double ConstitutiveModel::viscosity(double c, double s) const {
    const double p = exponent(c);
    return std::pow(1.0 + gamma(c) + s * s, 0.5 * (p - 2.0));
}

double ConstitutiveModel::viscosity_truncated(double c, double s, double A) const {
    if (A <= 1.0) throw std::invalid_argument("viscosity_truncated: require A > 1");
    return viscosity(c, std::min(A, s));
}

Sym2 ConstitutiveModel::stress(double c, Sym2 D) const { return D * viscosity(c, D.norm()); }

Sym2 ConstitutiveModel::stress_truncated(double c, Sym2 D, double A) const {
    return D * viscosity_truncated(c, D.norm(), A);
}

Mat2 ConstitutiveModel::flux_matrix(double c, double s) const { return flux.matrix(c, s); }

ConstitutiveModel ConstitutiveModel::canonical() {
    ConstitutiveModel m;
    m.exponent = ExponentFunction::tanh_law(0.4, 1.0);
    m.gamma = GammaFunction::rational(1.0);
    m.flux = FluxLaw{0.5, 1.5};
    return m;
}

ConstitutiveModel ConstitutiveModel::newtonian() {
    ConstitutiveModel m;
    m.exponent = ExponentFunction::constant(2.0);
    m.gamma = GammaFunction::zero();
    m.flux = FluxLaw{1.0, 1.0};
    return m;
}

}  // namespace pflow
