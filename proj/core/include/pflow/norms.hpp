#pragma once

#include <vector>

#include "pflow/constitutive.hpp"
#include "pflow/field.hpp"

namespace pflow {

/// Physical samples of the variable exponent x -> p(c(x)).
struct ExponentField {
    PeriodicGrid grid;
    std::vector<double> values;
    double p_minus = 2.0;
    double p_plus = 2.0;

    static ExponentField constant(PeriodicGrid grid, double p);
    static ExponentField from_concentration(const SpectralField& c, const ExponentFunction& p);
};

/// modular rho(f) = integral of |f(x)|^{p(x)}
double modular(const SpectralField& f, const ExponentField& pfield);

/// Luxemburg norm inf{lambda > 0 : rho(f/lambda) <= 1}, bisection to
/// relative 1e-8 (classical L^p norm for constant exponent)
double luxemburg_norm(const SpectralField& f, const ExponentField& pfield);

/// |grad v|_{p(c)} / |Dv|_{p(c)}; >= 1 pointwise-orthogonally, 0/0 -> 1
double korn_ratio(const SpectralField& v, const ExponentField& pfield);

/// max over sampled grid pairs of |f(x)-f(y)| / dist_per(x,y)^alpha
double holder_seminorm(const SpectralField& f, double alpha, std::size_t max_pairs = 1000000);

}  // namespace pflow
