#pragma once

#include <string>

#include "pflow/types.hpp"

namespace pflow {

/// Concentration-dependent power-law exponent with declared bounds and
/// Lipschitz constant. The declared values are audited against samples, not
/// trusted.
struct ExponentFunction {
    enum class Kind { constant, tanh_law, quadratic };

    Kind kind = Kind::constant;
    double a = 0.0;  // tanh amplitude / quadratic coefficient
    double b = 1.0;  // tanh slope
    double base = 2.0;
    double p_minus = 2.0;
    double p_plus = 2.0;
    double lipschitz = 0.0;

    double operator()(double c) const;

    static ExponentFunction constant(double p);
    /// p(c) = base + a tanh(b c); bounds base -/+ a, Lipschitz a*b
    static ExponentFunction tanh_law(double a, double b, double base = 2.0);
    /// p(c) = 2 + a c^2 with (falsely) declared bounds; used to exercise the
    /// audit failure path
    static ExponentFunction quadratic(double a, double declared_p_plus, double declared_lipschitz);
};

struct GammaFunction {
    enum class Kind { zero, rational };
    Kind kind = Kind::zero;
    double g0 = 0.0;  // gamma(c) = g0 / (1 + c^2)

    double operator()(double c) const;
    static GammaFunction zero();
    static GammaFunction rational(double g0);
};

/// Concentration flux K(c,s) = (K1 + (K2-K1)/(1 + c^2 + s^2)) * Identity.
/// Bounded by K2 and uniformly elliptic with constant K1 by construction.
struct FluxLaw {
    double K1 = 0.5;
    double K2 = 1.5;

    double scalar(double c, double s) const;
    Mat2 matrix(double c, double s) const;
};

double theta_A(double b_mag, double A);

struct ConstitutiveModel {
    ExponentFunction exponent;
    GammaFunction gamma;
    FluxLaw flux;

    /// generalized kinematic viscosity nu(c, s) = (1 + gamma(c) + s^2)^((p(c)-2)/2)
    double viscosity(double c, double s) const;
    double viscosity_truncated(double c, double s, double A) const;

    Sym2 stress(double c, Sym2 D) const;
    Sym2 stress_truncated(double c, Sym2 D, double A) const;
    Mat2 flux_matrix(double c, double s) const;

    static ConstitutiveModel canonical();  // p = 2 + 0.4 tanh(c), gamma = 1/(1+c^2)
    static ConstitutiveModel newtonian();  // p = 2, gamma = 0
};

}  // namespace pflow
