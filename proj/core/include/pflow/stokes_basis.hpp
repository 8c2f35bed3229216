#pragma once

#include <span>
#include <vector>

#include "pflow/field.hpp"

namespace pflow {

/// One real divergence-free trigonometric eigenmode of the periodic Stokes
/// operator: w = sqrt(2) * dir * {cos|sin}(2 pi k.x) with dir = k_perp/|k|.
struct StokesMode {
    int kx = 0, ky = 0;
    bool sine = false;
    double eigenvalue = 0.0;  // 4 pi^2 |k|^2
    Vec2 dir;
};

/// Ordered orthonormal family of Stokes eigenmodes: sorted by eigenvalue,
/// ties broken lexicographically on (kx, ky), cosine before sine.
class StokesBasis {
public:
    static StokesBasis build(PeriodicGrid grid, int n);
    /// number of modes representable below the Nyquist frequency
    static int available_modes(PeriodicGrid grid);
    /// modes for all wave-vectors with max-norm <= kmax
    static int modes_for_kmax(int kmax);

    PeriodicGrid grid() const { return grid_; }
    int size() const { return static_cast<int>(modes_.size()); }
    const StokesMode& mode(int i) const { return modes_[i]; }

    SpectralField velocity_field(int i) const;
    /// v = sum alpha_i w_i, assembled spectrally
    SpectralField combine(std::span<const double> alpha) const;
    /// L2 projections (integral of v . w_i)
    std::vector<double> project(const SpectralField& v) const;

private:
    explicit StokesBasis(PeriodicGrid grid) : grid_(grid) {}
    PeriodicGrid grid_;
    std::vector<StokesMode> modes_;
};

}  // namespace pflow
