#include "pflow/stokes_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace pflow {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double inv_sqrt2 = 0.70710678118654752440;

// canonical representative of the +/-k orbit: kx > 0, or kx == 0 and ky > 0
bool canonical(int kx, int ky) { return kx > 0 || (kx == 0 && ky > 0); }

}  // namespace

int StokesBasis::modes_for_kmax(int kmax) { return (2 * kmax + 1) * (2 * kmax + 1) - 1; }

int StokesBasis::available_modes(PeriodicGrid grid) {
    return modes_for_kmax(grid.n_modes / 2 - 1);
}

StokesBasis StokesBasis::build(PeriodicGrid grid, int n) {
    if (n > available_modes(grid))
        throw std::invalid_argument("StokesBasis: requested more modes than the grid resolves");
    const int kmax = grid.n_modes / 2 - 1;
    std::vector<StokesMode> all;
    all.reserve(available_modes(grid));
    for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky) {
            if (!canonical(kx, ky)) continue;
            const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
            const double knorm = std::sqrt(k2);
            StokesMode m;
            m.kx = kx;
            m.ky = ky;
            m.eigenvalue = two_pi * two_pi * k2;
            m.dir = Vec2{-ky / knorm, kx / knorm};
            m.sine = false;
            all.push_back(m);
            m.sine = true;
            all.push_back(m);
        }
    std::sort(all.begin(), all.end(), [](const StokesMode& a, const StokesMode& b) {
        return std::tuple(a.eigenvalue, a.kx, a.ky, a.sine) <
               std::tuple(b.eigenvalue, b.kx, b.ky, b.sine);
    });
    StokesBasis basis(grid);
    basis.modes_.assign(all.begin(), all.begin() + n);
    return basis;
}

SpectralField StokesBasis::velocity_field(int i) const {
    std::vector<double> alpha(size(), 0.0);
    alpha[i] = 1.0;
    return combine(alpha);
}

SpectralField StokesBasis::combine(std::span<const double> alpha) const {
    if (static_cast<int>(alpha.size()) != size())
        throw std::invalid_argument("combine: coefficient count mismatch");
    SpectralField v(grid_, Rank::vector);
    for (int i = 0; i < size(); ++i) {
        if (alpha[i] == 0.0) continue;
        const StokesMode& m = modes_[i];
        // cos mode: coefficient sqrt(2)/2 * dir at +k; sin mode: -i sqrt(2)/2 * dir
        const cplx c = m.sine ? cplx(0.0, -inv_sqrt2) : cplx(inv_sqrt2, 0.0);
        v.add_mode(0, m.kx, m.ky, alpha[i] * c * m.dir.x);
        v.add_mode(1, m.kx, m.ky, alpha[i] * c * m.dir.y);
    }
    v.lock_mean();
    return v;
}

std::vector<double> StokesBasis::project(const SpectralField& v) const {
    if (v.rank() != Rank::vector) throw std::invalid_argument("project: vector rank required");
    std::vector<double> alpha(size());
    for (int i = 0; i < size(); ++i) {
        const StokesMode& m = modes_[i];
        const cplx c = m.sine ? cplx(0.0, -inv_sqrt2) : cplx(inv_sqrt2, 0.0);
        const cplx wx = c * m.dir.x;
        const cplx wy = c * m.dir.y;
        const cplx vx = v.coefficient(0, m.kx, m.ky);
        const cplx vy = v.coefficient(1, m.kx, m.ky);
        alpha[i] = 2.0 * (vx * std::conj(wx) + vy * std::conj(wy)).real();
    }
    return alpha;
}

}  // namespace pflow
