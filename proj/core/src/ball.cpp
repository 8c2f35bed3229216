#include "pflow/ball.hpp"

#include <cmath>
#include <stdexcept>

namespace pflow {

std::vector<int> ball_points(PeriodicGrid grid, const BallProbe& probe) {
    if (probe.radius <= 0.0 || probe.radius > 0.5 + 1e-12)
        throw std::invalid_argument("ball_points: radius must lie in (0, 1/2]");
    std::vector<int> idx;
    const int n = grid.n_modes;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            if (periodic_distance(grid.x(ix), grid.y(iy), probe.center.x, probe.center.y) <=
                probe.radius)
                idx.push_back(grid.index(ix, iy));
    return idx;
}

int ball_point_count(PeriodicGrid grid, const BallProbe& probe) {
    return static_cast<int>(ball_points(grid, probe).size());
}

bool probe_resolved(PeriodicGrid grid, const BallProbe& probe) {
    return ball_point_count(grid, probe) >= 16;
}

double ball_integral(const BallProbe& probe, const SpectralField& f) {
    if (f.rank() != Rank::scalar)
        throw std::invalid_argument("ball_integral: scalar integrand required");
    const auto idx = ball_points(f.grid(), probe);
    const auto& vals = f.physical(0);
    double sum = 0.0;
    for (int i : idx) sum += vals[i];
    const double h = f.grid().spacing();
    return sum * h * h;
}

double ball_mean(const BallProbe& probe, const SpectralField& f) {
    const auto idx = ball_points(f.grid(), probe);
    if (idx.empty()) return 0.0;
    const auto& vals = f.physical(0);
    double sum = 0.0;
    for (int i : idx) sum += vals[i];
    return sum / static_cast<double>(idx.size());
}

double annulus_integral(const BallProbe& probe, const SpectralField& f) {
    BallProbe outer{probe.center, 2.0 * probe.radius};
    return ball_integral(outer, f) - ball_integral(probe, f);
}

double mean_oscillation(const BallProbe& probe, const SpectralField& f) {
    if (f.rank() != Rank::scalar)
        throw std::invalid_argument("mean_oscillation: scalar field required");
    const auto idx = ball_points(f.grid(), probe);
    if (idx.empty()) return 0.0;
    const auto& vals = f.physical(0);
    double mean = 0.0;
    for (int i : idx) mean += vals[i];
    mean /= static_cast<double>(idx.size());
    double sum = 0.0;
    for (int i : idx) sum += (vals[i] - mean) * (vals[i] - mean);
    const double h = f.grid().spacing();
    return std::sqrt(sum * h * h);
}

double campanato_quotient(const BallProbe& probe, const SpectralField& f, double mu) {
    return std::pow(probe.radius, -0.5 * (2.0 + mu)) * mean_oscillation(probe, f);
}

double bmo_proxy(const SpectralField& f, int centers_per_dim, double r0, int dyadic_levels) {
    double sup = 0.0;
    for (int cy = 0; cy < centers_per_dim; ++cy)
        for (int cx = 0; cx < centers_per_dim; ++cx) {
            const Vec2 center{(cx + 0.5) / centers_per_dim, (cy + 0.5) / centers_per_dim};
            double r = r0;
            for (int k = 0; k <= dyadic_levels; ++k, r *= 0.5) {
                BallProbe probe{center, r};
                if (!probe_resolved(f.grid(), probe)) continue;
                sup = std::max(sup, mean_oscillation(probe, f) / r);
            }
        }
    return sup;
}

}  // namespace pflow
