#pragma once

#include <vector>

#include "pflow/constitutive.hpp"
#include "pflow/field.hpp"
#include "pflow/solver.hpp"

namespace pflow {

/// one trigonometric term  a cos(2 pi k.x) + b sin(2 pi k.x)
struct TrigTerm {
    int kx = 0, ky = 0;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

/// Smooth reference pair (v*, c*): v* is the perpendicular gradient of a
/// trigonometric stream function (divergence-free, zero-mean by
/// construction), c* a trigonometric polynomial plus a configured mean.
struct ManufacturedCase {
    std::vector<TrigTerm> psi_terms;
    std::vector<TrigTerm> c_terms;
    double mean_c = 1.0;
    ConstitutiveModel model;
    int synthesis_factor = 2;    ///< fine grid = max(factor * n, synthesis_min)
    int synthesis_min = 64;

    SpectralField stream_function(PeriodicGrid grid) const;
    SpectralField velocity(PeriodicGrid grid) const;
    SpectralField concentration(PeriodicGrid grid) const;
    /// sup norm of |Dv*| (drives the truncation level A)
    double max_shear(PeriodicGrid grid) const;

    /// fixed constants, versioned so recorded values stay stable
    static ManufacturedCase standard_case();
    /// Newtonian single-cell vortex psi = sin(2 pi x) sin(2 pi y) / (2 pi)
    /// with constant concentration; f is known in closed form
    static ManufacturedCase taylor_green();
};

struct SourcePair {
    SpectralField f;
    SpectralField g;
};

/// Exact sources for the case: f = div(v* x v*) - div S(c*, Dv*) and
/// g = -grad invLap[div(c* v*) - div(K grad c*)], synthesized on the fine
/// grid and restricted.  Throws when the fine grid shows aliasing (relative
/// spectral energy above its dealias cutoff > 1e-12).
SourcePair make_sources(const ManufacturedCase& mc, PeriodicGrid solver_grid);

struct MmsError {
    double v_l2 = 0.0;
    double v_h1 = 0.0;
    double c_l2 = 0.0;
};

/// spectral-interpolated errors of a computed state against the case
MmsError mms_error(const GalerkinSolver& solver, const SolutionState& state,
                   const ManufacturedCase& mc);

}  // namespace pflow
