#pragma once

#include <cmath>
#include <stdexcept>

namespace pflow {

/// Uniform periodic grid on the unit square [0,1)^2, n_modes points per
/// dimension. Physical samples live at cell centers x_i = i/n; the spectral
/// representation carries the same n^2 real degrees of freedom per component
/// in the half-plane r2c layout.
struct PeriodicGrid {
    int n_modes;

    explicit PeriodicGrid(int n) : n_modes(n) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("PeriodicGrid: n_modes must be even and >= 8");
    }

    double spacing() const { return 1.0 / n_modes; }
    int points() const { return n_modes * n_modes; }
    int spectral_cols() const { return n_modes / 2 + 1; }
    int spectral_size() const { return n_modes * spectral_cols(); }
    double x(int i) const { return i * spacing(); }
    double y(int j) const { return j * spacing(); }
    int index(int ix, int iy) const { return iy * n_modes + ix; }

    /// signed wavenumber of a wrapped index
    int wavenumber(int j) const { return j <= n_modes / 2 ? j : j - n_modes; }
    /// 2/3-rule cutoff in max norm
    int dealias_cutoff() const { return n_modes / 3; }

    bool operator==(const PeriodicGrid& o) const { return n_modes == o.n_modes; }
    bool operator!=(const PeriodicGrid& o) const { return n_modes != o.n_modes; }
};

/// distance on the periodic unit torus
inline double periodic_distance(double ax, double ay, double bx, double by) {
    auto wrap = [](double d) {
        d = d - static_cast<long>(d);
        if (d < 0) d += 1.0;
        return d > 0.5 ? 1.0 - d : d;
    };
    const double dx = wrap(ax - bx);
    const double dy = wrap(ay - by);
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace pflow
