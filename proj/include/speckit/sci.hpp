#pragma once

#include <cmath>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "speckit/detail/parallel.hpp"
#include "speckit/kernel.hpp"
#include "speckit/operators.hpp"
#include "speckit/pseudospectra.hpp"
#include "speckit/region.hpp"

namespace speckit::sci {

/// One evaluated tower level: which functional was computed, with what
/// parameters, over which square-root-coupled grid.
struct TowerOutput {
    std::string level;  // compact_n | bounded_n1_n2 | bounded_n1 | banded_k
    nlohmann::json parameters;
    RegionEstimate region;
};

namespace detail {

inline HermitianMatrix shifted(HermitianMatrix h, double shift) {
    auto m = h.entries();
    for (int i = 0; i < h.size(); ++i) m(i, i) -= shift;
    return HermitianMatrix(std::move(m), h.bandwidth());
}

} // namespace detail

/// One-limit tower for compact operators: z in the coupled grid is a member
/// exactly when (P_n(T-z)P_n)^* P_n(T-z)P_n - (1/n^2) I admits no Cholesky
/// factorization. Finitely many arithmetic operations and square roots per
/// grid point.
inline TowerOutput gamma_compact(const OperatorSpec& spec, int n, int threads = 1) {
    if (n < 1) throw InvalidParameter("gamma_compact: n must be >= 1");
    const int m = spec.is_finite() ? std::min(n, spec.dim()) : n;
    const GridSpec grid = GridSpec::theta(n);
    const std::vector<Complex> pts = grid.points();
    const double shift = 1.0 / (static_cast<double>(n) * n);

    RegionEstimate region;
    region.grid = grid;
    region.samples.resize(pts.size());
    speckit::detail::parallel_for(static_cast<long>(pts.size()), threads, [&](long i) {
        HermitianMatrix g = power_section(spec, pts[i], 0, m, m, PowerVariant::Plain);
        HermitianMatrix t = detail::shifted(std::move(g), shift);
        const double tau = default_pivot_tau(t);
        const bool member = !cholesky_exists(t, tau);
        region.samples[i] = {pts[i], member ? 1.0 : 0.0, member};
    });
    region.meta.algorithm = "gamma_compact";
    region.meta.params = {{"n", n}, {"section", m}, {"shift", shift},
                          {"pivot_tau", "1e-12*maxdiag"}, {"operator", spec.describe()}};
    return TowerOutput{"compact_n", region.meta.params, std::move(region)};
}

/// Two-limit tower for bounded operators: membership through Cholesky
/// failure of the eps-shifted powered truncations, both the operator and
/// adjoint sides. eps enters as the shift eps^(2^(n+1)).
inline TowerOutput gamma_bounded(const OperatorSpec& spec, int n1, int n2, int n, double eps,
                                 int threads = 1) {
    if (n1 < 1 || n2 < n1) throw InvalidParameter("gamma_bounded: need n2 >= n1 >= 1");
    if (!(eps > 0)) throw InvalidParameter("gamma_bounded: eps must be > 0");
    int m = n1, k = n2;
    if (spec.is_finite()) {
        m = std::min(m, spec.dim());
        k = std::min(k, spec.dim());
    }
    const double shift = std::pow(eps, std::pow(2.0, n + 1));
    const GridSpec grid = GridSpec::theta(n1);
    const std::vector<Complex> pts = grid.points();

    RegionEstimate region;
    region.grid = grid;
    region.samples.resize(pts.size());
    speckit::detail::parallel_for(static_cast<long>(pts.size()), threads, [&](long i) {
        bool member = false;
        for (auto variant : {PowerVariant::Plain, PowerVariant::Tilde}) {
            HermitianMatrix t =
                detail::shifted(power_section(spec, pts[i], n, m, k, variant), shift);
            if (!cholesky_exists(t, default_pivot_tau(t))) {
                member = true;
                break;
            }
        }
        region.samples[i] = {pts[i], member ? 1.0 : 0.0, member};
    });
    region.meta.algorithm = "gamma_bounded";
    region.meta.params = {{"n1", n1}, {"n2", n2}, {"m", m}, {"k", k}, {"n", n},
                          {"eps", eps}, {"shift", shift},
                          {"pivot_tau", "1e-12*maxdiag"}, {"operator", spec.describe()}};
    return TowerOutput{"bounded_n1_n2", region.meta.params, std::move(region)};
}

/// Inner-limit collapse of the bounded tower: membership when the exact
/// eps-shifted compression has spectrum meeting (-inf, 0]. Available only
/// where the exact compression is (finite, banded, or reach-certified
/// kinds); for anything else the inner truncation limit genuinely cannot
/// be collapsed and the call is rejected.
inline TowerOutput gamma_bounded_limit(const OperatorSpec& spec, int n1, int n, double eps,
                                       double tol = 1e-12, int threads = 1) {
    if (n1 < 1) throw InvalidParameter("gamma_bounded_limit: n1 must be >= 1");
    if (!(eps > 0)) throw InvalidParameter("gamma_bounded_limit: eps must be > 0");
    const int m = spec.is_finite() ? std::min(n1, spec.dim()) : n1;
    const double shift = std::pow(eps, std::pow(2.0, n + 1));
    // probe availability once so the rejection is immediate
    if (!speckit::detail::full_truncation_size(spec, n, m, PowerVariant::Plain) ||
        !speckit::detail::full_truncation_size(spec, n, m, PowerVariant::Tilde))
        throw NotFullyComputable("gamma_bounded_limit: " + spec.describe() +
                                 " admits only the two-parameter tower");

    const GridSpec grid = GridSpec::theta(n1);
    const std::vector<Complex> pts = grid.points();
    RegionEstimate region;
    region.grid = grid;
    region.samples.resize(pts.size());
    speckit::detail::parallel_for(static_cast<long>(pts.size()), threads, [&](long i) {
        double min_shifted = std::numeric_limits<double>::infinity();
        for (auto variant : {PowerVariant::Plain, PowerVariant::Tilde}) {
            HermitianMatrix g = power_section_full(spec, pts[i], n, m, variant);
            min_shifted = std::min(min_shifted, min_eig_hermitian(g, tol) - shift);
        }
        region.samples[i] = {pts[i], min_shifted, min_shifted <= 0.0};
    });
    region.meta.algorithm = "gamma_bounded_limit";
    region.meta.params = {{"n1", n1}, {"m", m}, {"n", n}, {"eps", eps}, {"shift", shift},
                          {"min_eig_tol", tol}, {"operator", spec.describe()}};
    return TowerOutput{"bounded_n1", region.meta.params, std::move(region)};
}

/// One-limit tower for banded operators: the (k, 2^n d + k) truncation is
/// exact by band growth, so a single parameter drives both the grid and the
/// compression.
inline TowerOutput gamma_banded(const OperatorSpec& spec, int k, int n, double eps,
                                int threads = 1) {
    if (!spec.band_width())
        throw InvalidParameter("gamma_banded: operator has no declared band width");
    if (k < 1) throw InvalidParameter("gamma_banded: k must be >= 1");
    if (!(eps > 0)) throw InvalidParameter("gamma_banded: eps must be > 0");
    const int d = *spec.band_width();
    const long inner = static_cast<long>(k) + (1L << std::min(n, 30)) * d;
    if (inner > 5'000'000) throw InvalidParameter("gamma_banded: truncation too large");
    const double shift = std::pow(eps, std::pow(2.0, n + 1));

    const GridSpec grid = GridSpec::theta(k);
    const std::vector<Complex> pts = grid.points();
    RegionEstimate region;
    region.grid = grid;
    region.samples.resize(pts.size());
    speckit::detail::parallel_for(static_cast<long>(pts.size()), threads, [&](long i) {
        bool member = false;
        for (auto variant : {PowerVariant::Plain, PowerVariant::Tilde}) {
            HermitianMatrix t = detail::shifted(
                power_section(spec, pts[i], n, k, static_cast<int>(inner), variant), shift);
            if (!cholesky_exists(t, default_pivot_tau(t))) {
                member = true;
                break;
            }
        }
        region.samples[i] = {pts[i], member ? 1.0 : 0.0, member};
    });
    region.meta.algorithm = "gamma_banded";
    region.meta.params = {{"k", k}, {"inner", inner}, {"n", n}, {"eps", eps},
                          {"band_width", d}, {"shift", shift},
                          {"pivot_tau", "1e-12*maxdiag"}, {"operator", spec.describe()}};
    return TowerOutput{"banded_k", region.meta.params, std::move(region)};
}

/// Structured report of the diagonal-subsequence failure check.
struct CounterexampleReport {
    bool zero_in_truncated_tower = false;   // 0 in the (m, k_m) member set
    bool disc_excluded = false;             // |z| <= 1/8 misses the exact tower
    double identity_residual_full = 0.0;    // P_m T*T P_m vs (1+eps)^2 P_m
    double identity_residual_trunc = 0.0;   // P_m T* P_{k_m} T P_m vs (1+eps)^2 P_{m-1}
    double eps = 0;
    int m = 0;
    long k_m = 0;

    nlohmann::json to_json() const {
        return {{"zero_in_truncated_tower", zero_in_truncated_tower},
                {"disc_excluded", disc_excluded},
                {"identity_residual_full", identity_residual_full},
                {"identity_residual_trunc", identity_residual_trunc},
                {"eps", eps},
                {"m", m},
                {"k_m", k_m}};
    }
};

/// Verifies, rather than assumes, the convergence-failure mechanism: the
/// compression identities, membership of 0 in the diagonal-subsequence
/// truncated set, and exclusion of the closed 1/8-disc from the exact set.
inline CounterexampleReport counterexample_check(double eps, int m,
                                                 Schedule schedule = Schedule()) {
    if (m < 2) throw InvalidParameter("counterexample_check: m must be >= 2");
    const OperatorSpec t = OperatorSpec::counterexample(eps, schedule);
    const long km = schedule.k(m);
    const double w2 = (1.0 + eps) * (1.0 + eps);
    CounterexampleReport rep;
    rep.eps = eps;
    rep.m = m;
    rep.k_m = km;

    // identity residuals from exact rectangular compressions
    long reach = 0;
    for (int j = 1; j <= m; ++j) reach = std::max(reach, t.column_reach(j).value());
    const ComplexMatrix cols = rect_section(t, reach, m);
    rep.identity_residual_full =
        ((cols.adjoint() * cols) - w2 * ComplexMatrix::Identity(m, m)).cwiseAbs().maxCoeff();

    const ComplexMatrix colsk = rect_section(t, km, m);
    ComplexMatrix want = ComplexMatrix::Zero(m, m);
    for (int i = 0; i < m - 1; ++i) want(i, i) = w2;
    rep.identity_residual_trunc =
        ((colsk.adjoint() * colsk) - want).cwiseAbs().maxCoeff();

    const double shift = eps * eps;  // n = 0

    // (a) membership of z = 0 in the truncated (m, k_m) set
    {
        bool member = false;
        for (auto variant : {PowerVariant::Plain, PowerVariant::Tilde}) {
            HermitianMatrix g =
                power_section(t, Complex(0, 0), 0, m, static_cast<int>(km), variant);
            HermitianMatrix s = detail::shifted(std::move(g), shift);
            if (!cholesky_exists(s, default_pivot_tau(s))) {
                member = true;
                break;
            }
        }
        rep.zero_in_truncated_tower = member;
    }

    // (b) the exact set misses the closed disc of radius 1/8
    {
        bool any_member = false;
        for (double x = -0.125; x <= 0.1251 && !any_member; x += 0.025)
            for (double y = -0.125; y <= 0.1251 && !any_member; y += 0.025) {
                const Complex z(x, y);
                if (std::abs(z) > 0.125 + 1e-12) continue;
                for (auto variant : {PowerVariant::Plain, PowerVariant::Tilde}) {
                    HermitianMatrix g = power_section_full(t, z, 0, m, variant);
                    if (min_eig_hermitian(g, 1e-12) - shift <= 0.0) {
                        any_member = true;
                        break;
                    }
                }
            }
        rep.disc_excluded = !any_member;
    }
    return rep;
}

} // namespace speckit::sci
