#pragma once

#include <vector>

#include "pflow/field.hpp"

namespace pflow {

/// Ball on the periodic torus, membership by cell-center inclusion.
struct BallProbe {
    Vec2 center;
    double radius = 0.125;
};

/// grid indices inside the ball (periodic wrap-around)
std::vector<int> ball_points(PeriodicGrid grid, const BallProbe& probe);
int ball_point_count(PeriodicGrid grid, const BallProbe& probe);
/// a ball is treated as resolved when it contains at least 16 grid points
bool probe_resolved(PeriodicGrid grid, const BallProbe& probe);

double ball_integral(const BallProbe& probe, const SpectralField& integrand);
/// mean value over the ball
double ball_mean(const BallProbe& probe, const SpectralField& integrand);
/// integral over the annulus B_{2R} \ B_R
double annulus_integral(const BallProbe& probe, const SpectralField& integrand);

/// (integral over B_R of |f - (f)_{B_R}|^2)^{1/2}
double mean_oscillation(const BallProbe& probe, const SpectralField& f);
/// R^{-(2+mu)/2} * mean_oscillation (squared-seminorm convention)
double campanato_quotient(const BallProbe& probe, const SpectralField& f, double mu);

/// dyadic mean-oscillation proxy: sup over dyadic radii and grid-aligned
/// centers of mean_oscillation / R (a proxy, not a norm)
double bmo_proxy(const SpectralField& f, int centers_per_dim = 8, double r0 = 0.25,
                 int dyadic_levels = 4);

}  // namespace pflow
