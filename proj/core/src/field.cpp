#include "pflow/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace pflow {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct FftPlans {
    int n = 0;
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    ~FftPlans() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (real_buf) fftw_free(real_buf);
        if (cplx_buf) fftw_free(cplx_buf);
    }
};

FftPlans& plans_for(int n) {
    static std::map<int, FftPlans> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto& p = cache[n];
        p.n = n;
        p.real_buf = fftw_alloc_real(static_cast<size_t>(n) * n);
        p.cplx_buf = fftw_alloc_complex(static_cast<size_t>(n) * (n / 2 + 1));
        p.fwd = fftw_plan_dft_r2c_2d(n, n, p.real_buf, p.cplx_buf, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_c2r_2d(n, n, p.cplx_buf, p.real_buf, FFTW_ESTIMATE);
        return p;
    }
    return it->second;
}

std::vector<cplx> fft_forward(const PeriodicGrid& g, const std::vector<double>& phys) {
    auto& p = plans_for(g.n_modes);
    std::copy(phys.begin(), phys.end(), p.real_buf);
    fftw_execute(p.fwd);
    std::vector<cplx> out(g.spectral_size());
    const double scale = 1.0 / g.points();
    for (int s = 0; s < g.spectral_size(); ++s)
        out[s] = cplx(p.cplx_buf[s][0], p.cplx_buf[s][1]) * scale;
    return out;
}

std::vector<double> fft_backward(const PeriodicGrid& g, const std::vector<cplx>& spec) {
    auto& p = plans_for(g.n_modes);
    for (int s = 0; s < g.spectral_size(); ++s) {
        p.cplx_buf[s][0] = spec[s].real();
        p.cplx_buf[s][1] = spec[s].imag();
    }
    fftw_execute(p.bwd);
    return std::vector<double>(p.real_buf, p.real_buf + g.points());
}

// component weight for Frobenius-type contractions
double comp_weight(Rank r, int comp) {
    return (r == Rank::sym_tensor && comp == 1) ? 2.0 : 1.0;
}

// multiplicity of a half-plane column under the Hermitian extension
double column_weight(const PeriodicGrid& g, int kx) {
    return (kx == 0 || kx == g.n_modes / 2) ? 1.0 : 2.0;
}

}  // namespace

SpectralField::SpectralField(PeriodicGrid grid, Rank rank)
    : grid_(grid), rank_(rank), ncomp_(rank_components(rank)) {
    phys_.assign(ncomp_, std::vector<double>(grid_.points(), 0.0));
    spec_.assign(ncomp_, std::vector<cplx>(grid_.spectral_size(), cplx(0.0, 0.0)));
    phys_valid_ = spec_valid_ = true;
}

SpectralField SpectralField::from_function(
    PeriodicGrid grid, Rank rank,
    const std::function<std::vector<double>(double, double)>& fn) {
    SpectralField f(grid, rank);
    const int n = grid.n_modes;
    std::vector<std::vector<double>> vals(f.ncomp_, std::vector<double>(grid.points()));
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            auto v = fn(grid.x(ix), grid.y(iy));
            for (int c = 0; c < f.ncomp_; ++c) vals[c][grid.index(ix, iy)] = v[c];
        }
    for (int c = 0; c < f.ncomp_; ++c) f.set_physical(c, std::move(vals[c]));
    return f;
}

SpectralField SpectralField::scalar_function(PeriodicGrid grid,
                                             const std::function<double(double, double)>& fn) {
    return from_function(grid, Rank::scalar, [&](double x, double y) {
        return std::vector<double>{fn(x, y)};
    });
}

void SpectralField::lock_mean() {
    mean_locked_ = true;
    ensure_spectral();
    apply_mean_lock();
    phys_valid_ = false;
}

void SpectralField::apply_mean_lock() const {
    if (!mean_locked_ || !spec_valid_) return;
    for (auto& s : spec_) s[0] = cplx(0.0, 0.0);
}

void SpectralField::ensure_physical() const {
    if (phys_valid_) return;
    if (!spec_valid_) throw std::logic_error("SpectralField: no valid representation");
    for (int c = 0; c < ncomp_; ++c) phys_[c] = fft_backward(grid_, spec_[c]);
    phys_valid_ = true;
}

void SpectralField::ensure_spectral() const {
    if (spec_valid_) return;
    if (!phys_valid_) throw std::logic_error("SpectralField: no valid representation");
    for (int c = 0; c < ncomp_; ++c) spec_[c] = fft_forward(grid_, phys_[c]);
    spec_valid_ = true;
    if (mean_locked_) {
        apply_mean_lock();
        // physical samples are reprojected on next access
        for (int c = 0; c < ncomp_; ++c) phys_[c] = fft_backward(grid_, spec_[c]);
    }
}

const std::vector<double>& SpectralField::physical(int comp) const {
    ensure_physical();
    return phys_[comp];
}

const std::vector<cplx>& SpectralField::spectral(int comp) const {
    ensure_spectral();
    return spec_[comp];
}

void SpectralField::set_physical(int comp, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid_.points())
        throw std::invalid_argument("set_physical: size mismatch");
    if (!phys_valid_) ensure_physical();
    phys_[comp] = std::move(values);
    spec_valid_ = false;
}

void SpectralField::set_spectral(int comp, std::vector<cplx> values) {
    if (static_cast<int>(values.size()) != grid_.spectral_size())
        throw std::invalid_argument("set_spectral: size mismatch");
    if (!spec_valid_) ensure_spectral();
    spec_[comp] = std::move(values);
    phys_valid_ = false;
    apply_mean_lock();
}

std::vector<double>& SpectralField::mutable_physical(int comp) {
    ensure_physical();
    spec_valid_ = false;
    return phys_[comp];
}

std::vector<cplx>& SpectralField::mutable_spectral(int comp) {
    ensure_spectral();
    phys_valid_ = false;
    return spec_[comp];
}

cplx SpectralField::coefficient(int comp, int kx, int ky) const {
    ensure_spectral();
    const int n = grid_.n_modes;
    if (std::abs(kx) > n / 2 || std::abs(ky) > n / 2) return cplx(0.0, 0.0);
    if (kx < 0) return std::conj(coefficient(comp, -kx, -ky));
    const int py = (ky % n + n) % n;
    return spec_[comp][py * grid_.spectral_cols() + kx];
}

void SpectralField::add_mode(int comp, int kx, int ky, cplx value) {
    ensure_spectral();
    phys_valid_ = false;
    const int n = grid_.n_modes;
    if (std::abs(kx) >= n / 2 || std::abs(ky) >= n / 2)
        throw std::invalid_argument("add_mode: wave-vector at or above the Nyquist mode");
    if (kx < 0) {
        kx = -kx;
        ky = -ky;
        value = std::conj(value);
    }
    const int py = (ky % n + n) % n;
    spec_[comp][py * grid_.spectral_cols() + kx] += value;
    if (kx == 0 && py != 0) {
        const int qy = (n - py) % n;
        spec_[comp][qy * grid_.spectral_cols()] += std::conj(value);
    }
    apply_mean_lock();
}

SpectralField transform(const SpectralField& f, Direction dir) {
    SpectralField out = f;
    if (dir == Direction::to_spectral)
        out.ensure_spectral();
    else
        out.ensure_physical();
    return out;
}

namespace {

// derivative factor 2 pi i k with the Nyquist mode zeroed
cplx deriv_factor(const PeriodicGrid& g, int wrapped_index) {
    const int k = g.wavenumber(wrapped_index);
    if (std::abs(k) == g.n_modes / 2) return cplx(0.0, 0.0);
    return cplx(0.0, two_pi * k);
}

std::vector<cplx> apply_deriv(const PeriodicGrid& g, const std::vector<cplx>& in, int axis) {
    std::vector<cplx> out(in.size());
    const int cols = g.spectral_cols();
    for (int py = 0; py < g.n_modes; ++py) {
        const cplx fy = deriv_factor(g, py);
        for (int kx = 0; kx < cols; ++kx) {
            const cplx fx = deriv_factor(g, kx);
            out[py * cols + kx] = in[py * cols + kx] * (axis == 0 ? fx : fy);
        }
    }
    return out;
}

}  // namespace

SpectralField differentiate(const SpectralField& f, DiffOp op) {
    const PeriodicGrid g = f.grid();
    switch (op) {
        case DiffOp::grad: {
            if (f.rank() == Rank::scalar) {
                SpectralField out(g, Rank::vector);
                out.set_spectral(0, apply_deriv(g, f.spectral(0), 0));
                out.set_spectral(1, apply_deriv(g, f.spectral(0), 1));
                if (f.mean_locked()) out.lock_mean();
                return out;
            }
            if (f.rank() == Rank::vector) {
                SpectralField out(g, Rank::tensor);
                out.set_spectral(0, apply_deriv(g, f.spectral(0), 0));
                out.set_spectral(1, apply_deriv(g, f.spectral(0), 1));
                out.set_spectral(2, apply_deriv(g, f.spectral(1), 0));
                out.set_spectral(3, apply_deriv(g, f.spectral(1), 1));
                if (f.mean_locked()) out.lock_mean();
                return out;
            }
            throw std::invalid_argument("grad: rank must be scalar or vector");
        }
        case DiffOp::sym_grad: {
            if (f.rank() != Rank::vector)
                throw std::invalid_argument("sym_grad: rank must be vector");
            SpectralField out(g, Rank::sym_tensor);
            auto dxvx = apply_deriv(g, f.spectral(0), 0);
            auto dyvx = apply_deriv(g, f.spectral(0), 1);
            auto dxvy = apply_deriv(g, f.spectral(1), 0);
            auto dyvy = apply_deriv(g, f.spectral(1), 1);
            std::vector<cplx> xy(dyvx.size());
            for (size_t s = 0; s < xy.size(); ++s) xy[s] = 0.5 * (dyvx[s] + dxvy[s]);
            out.set_spectral(0, std::move(dxvx));
            out.set_spectral(1, std::move(xy));
            out.set_spectral(2, std::move(dyvy));
            if (f.mean_locked()) out.lock_mean();
            return out;
        }
        case DiffOp::div: {
            if (f.rank() == Rank::vector) {
                SpectralField out(g, Rank::scalar);
                auto dx = apply_deriv(g, f.spectral(0), 0);
                auto dy = apply_deriv(g, f.spectral(1), 1);
                for (size_t s = 0; s < dx.size(); ++s) dx[s] += dy[s];
                out.set_spectral(0, std::move(dx));
                if (f.mean_locked()) out.lock_mean();
                return out;
            }
            if (f.rank() == Rank::sym_tensor) {
                SpectralField out(g, Rank::vector);
                auto sx = apply_deriv(g, f.spectral(0), 0);
                auto sy = apply_deriv(g, f.spectral(1), 1);
                for (size_t s = 0; s < sx.size(); ++s) sx[s] += sy[s];
                out.set_spectral(0, std::move(sx));
                auto tx = apply_deriv(g, f.spectral(1), 0);
                auto ty = apply_deriv(g, f.spectral(2), 1);
                for (size_t s = 0; s < tx.size(); ++s) tx[s] += ty[s];
                out.set_spectral(1, std::move(tx));
                if (f.mean_locked()) out.lock_mean();
                return out;
            }
            if (f.rank() == Rank::tensor) {
                SpectralField out(g, Rank::vector);
                auto ax = apply_deriv(g, f.spectral(0), 0);
                auto ay = apply_deriv(g, f.spectral(1), 1);
                for (size_t s = 0; s < ax.size(); ++s) ax[s] += ay[s];
                out.set_spectral(0, std::move(ax));
                auto bx = apply_deriv(g, f.spectral(2), 0);
                auto by = apply_deriv(g, f.spectral(3), 1);
                for (size_t s = 0; s < bx.size(); ++s) bx[s] += by[s];
                out.set_spectral(1, std::move(bx));
                if (f.mean_locked()) out.lock_mean();
                return out;
            }
            throw std::invalid_argument("div: unsupported rank");
        }
        case DiffOp::laplacian: {
            SpectralField out(g, f.rank());
            const int cols = g.spectral_cols();
            for (int c = 0; c < f.components(); ++c) {
                auto spec = f.spectral(c);
                for (int py = 0; py < g.n_modes; ++py) {
                    const int ky = g.wavenumber(py);
                    for (int kx = 0; kx < cols; ++kx) {
                        const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
                        spec[py * cols + kx] *= -two_pi * two_pi * k2;
                    }
                }
                out.set_spectral(c, std::move(spec));
            }
            if (f.mean_locked()) out.lock_mean();
            return out;
        }
    }
    throw std::invalid_argument("differentiate: unknown op");
}

SpectralField leray_project(const SpectralField& f) {
    if (f.rank() != Rank::vector)
        throw std::invalid_argument("leray_project: rank must be vector");
    const PeriodicGrid g = f.grid();
    SpectralField out(g, Rank::vector);
    auto ux = f.spectral(0);
    auto uy = f.spectral(1);
    const int cols = g.spectral_cols();
    for (int py = 0; py < g.n_modes; ++py) {
        const double ky = g.wavenumber(py);
        for (int kx = 0; kx < cols; ++kx) {
            const size_t s = static_cast<size_t>(py) * cols + kx;
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) {
                ux[s] = uy[s] = cplx(0.0, 0.0);
                continue;
            }
            const cplx kdotu = static_cast<double>(kx) * ux[s] + ky * uy[s];
            ux[s] -= static_cast<double>(kx) * kdotu / k2;
            uy[s] -= ky * kdotu / k2;
        }
    }
    out.set_spectral(0, std::move(ux));
    out.set_spectral(1, std::move(uy));
    out.lock_mean();
    return out;
}

SpectralField dealias(const SpectralField& f) {
    const PeriodicGrid g = f.grid();
    const int kc = g.dealias_cutoff();
    SpectralField out(g, f.rank());
    const int cols = g.spectral_cols();
    for (int c = 0; c < f.components(); ++c) {
        auto spec = f.spectral(c);
        for (int py = 0; py < g.n_modes; ++py) {
            const int ky = g.wavenumber(py);
            for (int kx = 0; kx < cols; ++kx)
                if (std::max(std::abs(kx), std::abs(ky)) > kc)
                    spec[py * cols + kx] = cplx(0.0, 0.0);
        }
        out.set_spectral(c, std::move(spec));
    }
    if (f.mean_locked()) out.lock_mean();
    return out;
}

SpectralField resample(const SpectralField& f, int m) {
    const PeriodicGrid src = f.grid();
    if (m == src.n_modes) return f;
    PeriodicGrid dst(m);
    const int kmax = std::min(src.n_modes, m) / 2 - 1;
    SpectralField out(dst, f.rank());
    const int cols = dst.spectral_cols();
    for (int c = 0; c < f.components(); ++c) {
        std::vector<cplx> spec(dst.spectral_size(), cplx(0.0, 0.0));
        for (int py = 0; py < m; ++py) {
            const int ky = dst.wavenumber(py);
            if (std::abs(ky) > kmax) continue;
            for (int kx = 0; kx <= kmax; ++kx)
                spec[py * cols + kx] = f.coefficient(c, kx, ky);
        }
        out.set_spectral(c, std::move(spec));
    }
    if (f.mean_locked()) out.lock_mean();
    return out;
}

namespace {

SpectralField pointwise_scale_product(const SpectralField& a, const SpectralField& b) {
    if (a.rank() != Rank::scalar)
        throw std::invalid_argument("multiply: first factor must be scalar");
    if (a.grid() != b.grid()) throw std::invalid_argument("multiply: grid mismatch");
    SpectralField out(b.grid(), b.rank());
    const auto& s = a.physical(0);
    for (int c = 0; c < b.components(); ++c) {
        auto vals = b.physical(c);
        for (size_t i = 0; i < vals.size(); ++i) vals[i] *= s[i];
        out.set_physical(c, std::move(vals));
    }
    return out;
}

}  // namespace

SpectralField multiply_pointwise(const SpectralField& scalar, const SpectralField& f) {
    return pointwise_scale_product(scalar, f);
}

SpectralField multiply_exact(const SpectralField& scalar, const SpectralField& f) {
    const int n = f.grid().n_modes;
    SpectralField fine = pointwise_scale_product(resample(scalar, 2 * n), resample(f, 2 * n));
    return resample(fine, n);
}

SpectralField outer_sym(const SpectralField& u, const SpectralField& v) {
    if (u.rank() != Rank::vector || v.rank() != Rank::vector)
        throw std::invalid_argument("outer_sym: vector rank required");
    const int n = u.grid().n_modes;
    SpectralField uf = resample(u, 2 * n);
    SpectralField vf = resample(v, 2 * n);
    SpectralField fine(uf.grid(), Rank::sym_tensor);
    const auto& ux = uf.physical(0);
    const auto& uy = uf.physical(1);
    const auto& vx = vf.physical(0);
    const auto& vy = vf.physical(1);
    std::vector<double> xx(ux.size()), xy(ux.size()), yy(ux.size());
    for (size_t i = 0; i < ux.size(); ++i) {
        xx[i] = ux[i] * vx[i];
        xy[i] = 0.5 * (ux[i] * vy[i] + uy[i] * vx[i]);
        yy[i] = uy[i] * vy[i];
    }
    fine.set_physical(0, std::move(xx));
    fine.set_physical(1, std::move(xy));
    fine.set_physical(2, std::move(yy));
    return resample(fine, n);
}

SpectralField add(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid() || a.rank() != b.rank())
        throw std::invalid_argument("add: shape mismatch");
    SpectralField out(a.grid(), a.rank());
    for (int c = 0; c < a.components(); ++c) {
        auto vals = a.physical(c);
        const auto& bv = b.physical(c);
        for (size_t i = 0; i < vals.size(); ++i) vals[i] += bv[i];
        out.set_physical(c, std::move(vals));
    }
    return out;
}

SpectralField subtract(const SpectralField& a, const SpectralField& b) {
    return add(a, scale(b, -1.0));
}

SpectralField scale(const SpectralField& f, double s) {
    SpectralField out(f.grid(), f.rank());
    for (int c = 0; c < f.components(); ++c) {
        auto vals = f.physical(c);
        for (auto& v : vals) v *= s;
        out.set_physical(c, std::move(vals));
    }
    return out;
}

SpectralField magnitude_field(const SpectralField& f) {
    SpectralField out(f.grid(), Rank::scalar);
    std::vector<double> mag(f.grid().points(), 0.0);
    for (int c = 0; c < f.components(); ++c) {
        const double w = comp_weight(f.rank(), c);
        const auto& vals = f.physical(c);
        for (size_t i = 0; i < mag.size(); ++i) mag[i] += w * vals[i] * vals[i];
    }
    for (auto& v : mag) v = std::sqrt(v);
    out.set_physical(0, std::move(mag));
    return out;
}

double integral(const SpectralField& f) {
    if (f.rank() != Rank::scalar) throw std::invalid_argument("integral: scalar rank required");
    const auto& vals = f.physical(0);
    double sum = 0.0;
    for (double v : vals) sum += v;
    const double h = f.grid().spacing();
    return sum * h * h;
}

double mean_value(const SpectralField& f) { return integral(f); }

double inner_product(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid() || a.rank() != b.rank())
        throw std::invalid_argument("inner_product: shape mismatch");
    double sum = 0.0;
    for (int c = 0; c < a.components(); ++c) {
        const double w = comp_weight(a.rank(), c);
        const auto& av = a.physical(c);
        const auto& bv = b.physical(c);
        double s = 0.0;
        for (size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
        sum += w * s;
    }
    const double h = a.grid().spacing();
    return sum * h * h;
}

double l2_norm(const SpectralField& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

double lp_norm(const SpectralField& f, double p) {
    SpectralField mag = magnitude_field(f);
    const auto& vals = mag.physical(0);
    double sum = 0.0;
    for (double v : vals) sum += std::pow(v, p);
    const double h = f.grid().spacing();
    return std::pow(sum * h * h, 1.0 / p);
}

double max_abs(const SpectralField& f) {
    SpectralField mag = magnitude_field(f);
    const auto& vals = mag.physical(0);
    return *std::max_element(vals.begin(), vals.end());
}

double spectral_energy(const SpectralField& f) {
    const PeriodicGrid g = f.grid();
    const int cols = g.spectral_cols();
    double sum = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        const double w = comp_weight(f.rank(), c);
        const auto& spec = f.spectral(c);
        for (int py = 0; py < g.n_modes; ++py)
            for (int kx = 0; kx < cols; ++kx)
                sum += w * column_weight(g, kx) * std::norm(spec[py * cols + kx]);
    }
    return sum;
}

double energy_above_cutoff(const SpectralField& f, int cutoff) {
    const PeriodicGrid g = f.grid();
    const int cols = g.spectral_cols();
    double above = 0.0, total = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        const double w = comp_weight(f.rank(), c);
        const auto& spec = f.spectral(c);
        for (int py = 0; py < g.n_modes; ++py) {
            const int ky = g.wavenumber(py);
            for (int kx = 0; kx < cols; ++kx) {
                const double e = w * column_weight(g, kx) * std::norm(spec[py * cols + kx]);
                total += e;
                if (std::max(std::abs(kx), std::abs(ky)) > cutoff) above += e;
            }
        }
    }
    return total > 0.0 ? above / total : 0.0;
}

SpectralField inverse_laplacian(const SpectralField& f) {
    const PeriodicGrid g = f.grid();
    SpectralField out(g, f.rank());
    const int cols = g.spectral_cols();
    for (int c = 0; c < f.components(); ++c) {
        auto spec = f.spectral(c);
        for (int py = 0; py < g.n_modes; ++py) {
            const int ky = g.wavenumber(py);
            for (int kx = 0; kx < cols; ++kx) {
                const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
                auto& v = spec[py * cols + kx];
                v = k2 == 0.0 ? cplx(0.0, 0.0) : v / (-two_pi * two_pi * k2);
            }
        }
        out.set_spectral(c, std::move(spec));
    }
    return out;
}

SpectralField zero_field(PeriodicGrid grid, Rank rank) { return SpectralField(grid, rank); }

}  // namespace pflow
