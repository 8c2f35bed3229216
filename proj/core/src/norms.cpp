#include "pflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pflow {

ExponentField ExponentField::constant(PeriodicGrid grid, double p) {
    return {grid, std::vector<double>(grid.points(), p), p, p};
}

ExponentField ExponentField::from_concentration(const SpectralField& c,
                                                const ExponentFunction& p) {
    if (c.rank() != Rank::scalar)
        throw std::invalid_argument("ExponentField: concentration must be scalar");
    ExponentField e{c.grid(), {}, p.p_minus, p.p_plus};
    const auto& cv = c.physical(0);
    e.values.resize(cv.size());
    for (size_t i = 0; i < cv.size(); ++i) e.values[i] = p(cv[i]);
    return e;
}

double modular(const SpectralField& f, const ExponentField& pfield) {
    if (f.grid() != pfield.grid) throw std::invalid_argument("modular: grid mismatch");
    SpectralField mag = magnitude_field(f);
    const auto& m = mag.physical(0);
    double sum = 0.0;
    for (size_t i = 0; i < m.size(); ++i) sum += std::pow(m[i], pfield.values[i]);
    const double h = f.grid().spacing();
    return sum * h * h;
}

double luxemburg_norm(const SpectralField& f, const ExponentField& pfield) {
    SpectralField mag = magnitude_field(f);
    const double fmax = max_abs(f);
    if (fmax == 0.0) return 0.0;

    // bracket from the constant-exponent endpoint norms: for t > 0,
    // t^{p(x)} lies between t^{p-} and t^{p+}
    const double np_minus = lp_norm(f, pfield.p_minus);
    const double np_plus = lp_norm(f, pfield.p_plus);
    double hi = std::pow(2.0, 1.0 / pfield.p_minus) * (np_minus + np_plus) + 1e-300;
    double lo = 0.5 * std::min(np_minus, np_plus);

    auto rho = [&](double lam) {
        const auto& m = mag.physical(0);
        double sum = 0.0;
        for (size_t i = 0; i < m.size(); ++i) sum += std::pow(m[i] / lam, pfield.values[i]);
        const double h = f.grid().spacing();
        return sum * h * h;
    };

    // guarded expansion in case the endpoint bracket is off
    int guard = 0;
    while (rho(hi) > 1.0 && guard++ < 200) hi *= 2.0;
    guard = 0;
    while (rho(lo) < 1.0 && lo > 1e-300 && guard++ < 200) lo *= 0.5;
    if (rho(hi) > 1.0) throw std::runtime_error("luxemburg_norm: bisection bracket failed");

    for (int it = 0; it < 60 && (hi - lo) > 1e-8 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rho(mid) <= 1.0 ? hi : lo) = mid;
    }
    return hi;
}

double korn_ratio(const SpectralField& v, const ExponentField& pfield) {
    if (v.rank() != Rank::vector) throw std::invalid_argument("korn_ratio: vector rank required");
    SpectralField grad = differentiate(v, DiffOp::grad);
    SpectralField sym = differentiate(v, DiffOp::sym_grad);
    const double num = luxemburg_norm(grad, pfield);
    const double den = luxemburg_norm(sym, pfield);
    if (den == 0.0) return 1.0;  // zero-mean periodic fields admit no rigid rotations
    return num / den;
}

double holder_seminorm(const SpectralField& f, double alpha, std::size_t max_pairs) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw std::invalid_argument("holder_seminorm: alpha in (0,1] required");
    const PeriodicGrid g = f.grid();
    const int n = g.n_modes;

    // subsample so the pair count stays below max_pairs
    int stride = 1;
    auto count_for = [&](int s) {
        const std::size_t pts = static_cast<std::size_t>((n + s - 1) / s) *
                                static_cast<std::size_t>((n + s - 1) / s);
        return pts * (pts - 1) / 2;
    };
    while (count_for(stride) > max_pairs) ++stride;

    std::vector<int> xs;
    for (int i = 0; i < n; i += stride) xs.push_back(i);
    const int m = static_cast<int>(xs.size());

    std::vector<const std::vector<double>*> comps;
    for (int c = 0; c < f.components(); ++c) comps.push_back(&f.physical(c));
    const double wxy = f.rank() == Rank::sym_tensor ? 2.0 : 1.0;

    double best = 0.0;
    for (int a = 0; a < m * m; ++a) {
        const int ia = xs[a % m], ja = xs[a / m];
        const int idxa = g.index(ia, ja);
        for (int b = a + 1; b < m * m; ++b) {
            const int ib = xs[b % m], jb = xs[b / m];
            const int idxb = g.index(ib, jb);
            double d2 = 0.0;
            for (int c = 0; c < f.components(); ++c) {
                const double w = (f.rank() == Rank::sym_tensor && c == 1) ? wxy : 1.0;
                const double diff = (*comps[c])[idxa] - (*comps[c])[idxb];
                d2 += w * diff * diff;
            }
            const double dist = periodic_distance(g.x(ia), g.y(ja), g.x(ib), g.y(jb));
            if (dist == 0.0) continue;
            const double q = std::sqrt(d2) / std::pow(dist, alpha);
            best = std::max(best, q);
        }
    }
    return best;
}

}  // namespace pflow
