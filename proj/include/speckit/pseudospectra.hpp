#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "speckit/detail/parallel.hpp"
#include "speckit/grid.hpp"
#include "speckit/kernel.hpp"
#include "speckit/operators.hpp"
#include "speckit/region.hpp"

namespace speckit {

/// Truncation parameters for the gamma evaluation: power index n, outer
/// compression size m, inner truncation k (or the exact compression when
/// `full` is set), and the eigenvalue bisection tolerance.
struct GammaParams {
    int n = 0;
    int m = 1;
    int k = 1;        // ignored when full == true
    bool full = false;
    double tol = 1e-12;

    static GammaParams truncated(int n, int m, int k, double tol = 1e-12) {
        GammaParams p{n, m, k, false, tol};
        p.validate();
        return p;
    }
    static GammaParams exact(int n, int m, double tol = 1e-12) {
        GammaParams p{n, m, m, true, tol};
        p.validate();
        return p;
    }
    void validate() const {
        if (n < 0) throw InvalidParameter("GammaParams: n must be >= 0");
        if (m < 1) throw InvalidParameter("GammaParams: m must be >= 1");
        if (!full && k < m) throw InvalidParameter("GammaParams: need k >= m");
        if (!(tol > 0)) throw InvalidParameter("GammaParams: tol must be > 0");
    }
};

namespace detail {

/// Smallest eigenvalue of the powered compression, clamped from below at the
/// Gram matrix's own floating-point resolution floor (forming A*A cannot
/// resolve eigenvalues below a few ulps of ||A*A||; reporting values beneath
/// that floor would be noise, and the floor keeps the computed family
/// monotone in n the way the exact one is).
template <typename Real>
Real clamped_min_eig(const HermitianMatrixT<Real>& g, Real tol) {
    const Real lam = min_eig_hermitian(g, tol);
    const Real floor = Real(4) * g.size() * std::numeric_limits<Real>::epsilon() *
                       g.max_abs_entry();
    return std::max(lam, floor);
}

} // namespace detail

/// Finite-section approximant of the injection-modulus function
///   gamma_n(z) = min over the operator and its adjoint of
///                (smallest eigenvalue of the 2^n-powered section)^(1/2^(n+1)).
/// The tilde variant of the powered section realizes the adjoint side.
template <typename Real = double>
double gamma_n(const OperatorSpec& spec, Complex z, const GammaParams& params) {
    params.validate();
    double best = std::numeric_limits<double>::infinity();
    for (auto variant : {PowerVariant::Plain, PowerVariant::Tilde}) {
        HermitianMatrixT<Real> g =
            params.full ? power_section_full<Real>(spec, z, params.n, params.m, variant)
                        : power_section<Real>(spec, z, params.n, params.m, params.k, variant);
        const Real lam = detail::clamped_min_eig<Real>(g, Real(params.tol));
        const double val =
            std::pow(std::max(0.0, static_cast<double>(lam)), 1.0 / std::pow(2.0, params.n + 1));
        best = std::min(best, val);
    }
    return best;
}

namespace detail {

/// Picks the evaluation route: exact compression for finite and
/// reach-certified kinds, the (m, k) truncated family otherwise.
inline GammaParams resolve_params(const OperatorSpec& spec, int n, int m, int k, double tol) {
    int mm = m, kk = k;
    if (spec.is_finite()) {
        mm = std::min(mm, spec.dim());
        return GammaParams::exact(n, mm, tol);
    }
    if (spec.band_width()) return GammaParams::exact(n, mm, tol);
    return GammaParams::truncated(n, mm, std::max(kk, mm), tol);
}

} // namespace detail

/// Grid indicator of the (n, eps)-pseudospectrum: value = gamma_n
/// approximant, member = (value < eps).
inline RegionEstimate n_eps_region(const OperatorSpec& spec, const GridSpec& grid, int n,
                                   double eps, int m, int k, double tol = 1e-12,
                                   int threads = 1) {
    if (!(eps > 0)) throw InvalidParameter("n_eps_region: eps must be > 0");
    const GammaParams params = detail::resolve_params(spec, n, m, k, tol);
    const std::vector<Complex> pts = grid.points();
    RegionEstimate region;
    region.grid = grid;
    region.samples.resize(pts.size());
    detail::parallel_for(static_cast<long>(pts.size()), threads, [&](long i) {
        const double v = gamma_n(spec, pts[i], params);
        region.samples[i] = {pts[i], v, v < eps};
    });
    region.meta.algorithm = "n_eps_region";
    region.meta.params = {{"n", n},
                          {"eps", eps},
                          {"m", params.m},
                          {"k", params.full ? -1 : params.k},
                          {"full_compression", params.full},
                          {"min_eig_tol", tol},
                          {"operator", spec.describe()}};
    return region;
}

/// The two residual regions. First: zeta_1 > eps and zeta_2 at zero
/// (points certified to carry a one-sided inverse); second with the roles
/// swapped. Each region's value field holds its thresholded zeta; the
/// companion zeta is the other region's value field at the same grid index.
inline std::pair<RegionEstimate, RegionEstimate> residual_regions(
    const OperatorSpec& spec, const GridSpec& grid, double eps, int m, int k,
    double tol = 1e-12, std::optional<double> zero_tol_override = std::nullopt,
    int threads = 1) {
    if (!(eps > 0)) throw InvalidParameter("residual_regions: eps must be > 0");
    const GammaParams params = detail::resolve_params(spec, 0, m, k, tol);
    // zeta = sqrt(min eig +- tol) has noise floor sqrt(tol) at an exact zero
    const double zero_tol = zero_tol_override ? *zero_tol_override : std::sqrt(10.0 * tol);

    const std::vector<Complex> pts = grid.points();
    RegionEstimate res, res_star;
    res.grid = grid;
    res_star.grid = grid;
    res.samples.resize(pts.size());
    res_star.samples.resize(pts.size());
    detail::parallel_for(static_cast<long>(pts.size()), threads, [&](long i) {
        const Complex z = pts[i];
        auto zeta = [&](PowerVariant variant) {
            HermitianMatrixT<double> g =
                params.full ? power_section_full(spec, z, 0, params.m, variant)
                            : power_section(spec, z, 0, params.m, params.k, variant);
            return std::sqrt(std::max(0.0, min_eig_hermitian(g, params.tol)));
        };
        const double z1 = zeta(PowerVariant::Plain);
        const double z2 = zeta(PowerVariant::Tilde);
        res.samples[i] = {z, z1, z1 > eps && z2 <= zero_tol};
        res_star.samples[i] = {z, z2, z2 > eps && z1 <= zero_tol};
    });
    auto meta = [&](const char* name, const char* companion) {
        RegionMeta mt;
        mt.algorithm = name;
        mt.params = {{"eps", eps},
                     {"m", params.m},
                     {"k", params.full ? -1 : params.k},
                     {"full_compression", params.full},
                     {"min_eig_tol", tol},
                     {"zero_tol", zero_tol},
                     {"companion_zeta", companion},
                     {"operator", spec.describe()}};
        return mt;
    };
    res.meta = meta("residual_region", "res_star.value");
    res_star.meta = meta("residual_region_adjoint", "res.value");
    return {std::move(res), std::move(res_star)};
}

} // namespace speckit
