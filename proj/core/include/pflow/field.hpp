#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "pflow/grid.hpp"
#include "pflow/types.hpp"

namespace pflow {

using cplx = std::complex<double>;

enum class Rank { scalar, vector, sym_tensor, tensor };

inline int rank_components(Rank r) {
    switch (r) {
        case Rank::scalar: return 1;
        case Rank::vector: return 2;
        case Rank::sym_tensor: return 3;  // xx, xy, yy
        case Rank::tensor: return 4;      // dx vx, dy vx, dx vy, dy vy
    }
    return 0;
}

enum class Direction { to_spectral, to_physical };
enum class DiffOp { grad, sym_grad, div, laplacian };

/// Periodic field with lazily synchronized physical samples and Fourier
/// coefficients. Coefficients are normalized so that
///   f(x) = sum_k fhat(k) exp(2 pi i k.x),
/// stored in the FFTW half-plane layout (ky rows, kx in 0..n/2).
class SpectralField {
public:
    SpectralField(PeriodicGrid grid, Rank rank);

    static SpectralField from_function(PeriodicGrid grid, Rank rank,
                                       const std::function<std::vector<double>(double, double)>& fn);
    static SpectralField scalar_function(PeriodicGrid grid,
                                         const std::function<double(double, double)>& fn);

    PeriodicGrid grid() const { return grid_; }
    Rank rank() const { return rank_; }
    int components() const { return ncomp_; }
    bool mean_locked() const { return mean_locked_; }
    void lock_mean();

    const std::vector<double>& physical(int comp = 0) const;
    const std::vector<cplx>& spectral(int comp = 0) const;

    /// overwrite a representation (invalidates the other)
    void set_physical(int comp, std::vector<double> values);
    void set_spectral(int comp, std::vector<cplx> values);
    std::vector<double>& mutable_physical(int comp = 0);
    std::vector<cplx>& mutable_spectral(int comp = 0);

    /// coefficient at a signed wave-vector (kx may be negative; resolved via
    /// Hermitian symmetry)
    cplx coefficient(int comp, int kx, int ky) const;
    /// set the coefficient pair at +/-k of a real field
    void add_mode(int comp, int kx, int ky, cplx value);

    void ensure_physical() const;
    void ensure_spectral() const;

private:
    PeriodicGrid grid_;
    Rank rank_;
    int ncomp_;
    bool mean_locked_ = false;
    mutable std::vector<std::vector<double>> phys_;
    mutable std::vector<std::vector<cplx>> spec_;
    mutable bool phys_valid_ = false;
    mutable bool spec_valid_ = false;

    void apply_mean_lock() const;
};

SpectralField transform(const SpectralField& f, Direction dir);
SpectralField differentiate(const SpectralField& f, DiffOp op);
SpectralField leray_project(const SpectralField& f);
SpectralField dealias(const SpectralField& f);

/// spectral interpolation / truncation onto a grid with m modes
SpectralField resample(const SpectralField& f, int m);

/// pointwise products evaluated on a doubled grid (exact for band-limited
/// factors up to the half grid)
SpectralField multiply_exact(const SpectralField& scalar, const SpectralField& f);
SpectralField outer_sym(const SpectralField& u, const SpectralField& v);

/// plain pointwise product on the common grid (aliased)
SpectralField multiply_pointwise(const SpectralField& scalar, const SpectralField& f);

SpectralField add(const SpectralField& a, const SpectralField& b);
SpectralField subtract(const SpectralField& a, const SpectralField& b);
SpectralField scale(const SpectralField& f, double s);

/// pointwise magnitude (Frobenius for tensors, off-diagonal doubled for
/// symmetric rank)
SpectralField magnitude_field(const SpectralField& f);

double integral(const SpectralField& scalar_field);
double mean_value(const SpectralField& scalar_field);
double inner_product(const SpectralField& a, const SpectralField& b);
double l2_norm(const SpectralField& f);
double lp_norm(const SpectralField& f, double p);
double max_abs(const SpectralField& f);

/// energy fraction carried by modes above the max-norm cutoff
double energy_above_cutoff(const SpectralField& f, int cutoff);

/// Parseval sum of |fhat|^2 over all modes (for cross-checks against the
/// physical-space L2 norm)
double spectral_energy(const SpectralField& f);

/// zero-mean inverse Laplacian
SpectralField inverse_laplacian(const SpectralField& f);

SpectralField zero_field(PeriodicGrid grid, Rank rank);

}  // namespace pflow
