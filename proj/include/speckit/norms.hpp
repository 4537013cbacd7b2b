#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "speckit/errors.hpp"
#include "speckit/operators.hpp"
#include "speckit/poly.hpp"
#include "speckit/types.hpp"

namespace speckit {

namespace detail {

inline ComplexVector deterministic_unit_vector(Eigen::Index n, unsigned seed) {
    ComplexVector v(n);
    unsigned long long s = 0x9e3779b97f4a7c15ULL ^ (seed * 0x2545F4914F6CDD1DULL + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        const double a = static_cast<double>((s >> 11) & 0x1FFFFF) / 1048576.0 - 1.0;
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        const double b = static_cast<double>((s >> 11) & 0x1FFFFF) / 1048576.0 - 1.0;
        v(i) = Complex(a + 0.1, b);
    }
    v.normalize();
    return v;
}

/// Operator 2-norm by singular value iteration on the Gram matrix, with
/// Rayleigh-quotient stopping at |change| <= 1e-12 * max-abs entry. Slow
/// spectral gaps are handled by repeatedly squaring the iteration operator
/// (the Rayleigh quotient always uses the original Gram). A warm-start
/// vector, when supplied, is updated with the converged direction.
inline double spectral_norm(const ComplexMatrix& m, ComplexVector* warm = nullptr) {
    const Eigen::Index n = m.cols();
    if (n == 0 || m.rows() == 0) return 0.0;
    double maxabs = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < n; ++j) maxabs = std::max(maxabs, std::abs(m(i, j)));
    if (maxabs == 0.0) return 0.0;

    const double tol = 1e-12 * maxabs;
    ComplexMatrix gram = m.adjoint() * m;
    ComplexMatrix iter = gram;
    double iter_scale_ok = gram.cwiseAbs().maxCoeff();
    if (iter_scale_ok > 0) iter /= iter_scale_ok;

    ComplexVector x;
    if (warm && warm->size() == n && warm->norm() > 0) {
        x = *warm;
        x.normalize();
    } else {
        x = deterministic_unit_vector(n, static_cast<unsigned>(n));
    }

    double sigma = 0.0;
    int squarings = 0;
    int since_squaring = 0;
    double prev = -1.0;
    for (int it = 0; it < 1200; ++it) {
        ComplexVector y = iter * x;
        const double yn = y.norm();
        if (!(yn > 0)) {
            x = deterministic_unit_vector(n, static_cast<unsigned>(n + it + 1));
            continue;
        }
        x = y / yn;
        const double rho = std::max(0.0, (x.adjoint() * (gram * x))(0, 0).real());
        sigma = std::sqrt(rho);
        if (it > 0 && std::abs(sigma - prev) <= tol) break;
        prev = sigma;
        if (++since_squaring >= 60 && squarings < 6) {
            iter = (iter * iter).eval();
            const double sc = iter.cwiseAbs().maxCoeff();
            if (sc > 0) iter /= sc;
            ++squarings;
            since_squaring = 0;
        }
    }
    if (warm) *warm = x;
    return sigma;
}

/// sup_{|z|=1} |p(z)| with Lipschitz-certified bracketing: a 4096-node scan
/// bounds the max within L*h/2, every candidate arc is then refined locally.
inline double circle_sup(const MonicPoly& p) {
    const int n0 = 4096;
    const double L = p.deriv_sup_bound(1.0);
    const double two_pi = 6.283185307179586476925;
    const double h = two_pi / n0;
    std::vector<double> vals(n0);
    double grid_max = 0.0;
    for (int t = 0; t < n0; ++t) {
        const double th = t * h;
        vals[t] = std::abs(p.eval(Complex(std::cos(th), std::sin(th))));
        grid_max = std::max(grid_max, vals[t]);
    }
    auto refine_arc = [&](double lo, double hi) {
        double best = 0.0;
        for (int level = 0; level < 6; ++level) {
            const int pts = 33;
            double arg_best = lo;
            for (int t = 0; t < pts; ++t) {
                const double th = lo + (hi - lo) * t / (pts - 1);
                const double v = std::abs(p.eval(Complex(std::cos(th), std::sin(th))));
                if (v > best) {
                    best = v;
                    arg_best = th;
                }
            }
            const double w = (hi - lo) / (pts - 1);
            lo = arg_best - w;
            hi = arg_best + w;
        }
        return best;
    };
    double result = grid_max;
    const double cutoff = grid_max - L * h;
    for (int t = 0; t < n0; ++t)
        if (vals[t] >= cutoff)
            result = std::max(result, refine_arc(t * h - h / 2, t * h + h / 2));
    return result;
}

} // namespace detail

/// Norm value together with its certification mode. Lower bounds come from
/// rectangular compressions and grow monotonically with the witness size.
struct NormEstimate {
    double value = 0.0;
    enum class Mode { Exact, LowerBound } mode = Mode::Exact;
    int witness_size = 0;

    bool exact() const { return mode == Mode::Exact; }
    std::string mode_name() const { return exact() ? "exact" : "lower_bound"; }
};

/// || p(T) ||.
///  - finite kinds: exact operator 2-norm of p applied to the matrix;
///  - shifts: exact closed form sup_{|z|=1} |p(z)|;
///  - other infinite kinds: the largest singular value of the rectangular
///    compression of p(T) to its first `budget` columns, a guaranteed lower
///    bound that is non-decreasing in the budget.
inline NormEstimate norm_of_poly(const OperatorSpec& spec, const MonicPoly& p, int budget) {
    if (budget < 1) throw InvalidParameter("norm_of_poly: budget must be >= 1");
    using Kind = OperatorSpec::Kind;
    switch (spec.kind()) {
        case Kind::Dense:
        case Kind::Jordan: {
            const int n = spec.dim();
            const ComplexMatrix a = section(spec, n).entries;
            const ComplexMatrix pa = p.apply(a);
            return NormEstimate{detail::spectral_norm(pa), NormEstimate::Mode::Exact, n};
        }
        case Kind::UnilateralShift:
        case Kind::BilateralShift: {
            MonicPoly q = p;
            if (spec.adjointed()) {
                std::vector<Complex> c;
                for (const Complex& v : p.coeffs()) c.push_back(std::conj(v));
                q = MonicPoly(std::move(c));
            }
            return NormEstimate{detail::circle_sup(q), NormEstimate::Mode::Exact, 0};
        }
        default: {
            const int m = budget;
            long reach = m;
            for (int t = 0; t < p.degree(); ++t) {
                auto r = spec.column_reach(reach);
                if (!r) throw NotFullyComputable("norm_of_poly: operator reach unknown");
                reach = std::max<long>(reach, *r);
            }
            const ComplexMatrix a = section(spec, static_cast<int>(reach)).entries;
            const ComplexMatrix pa = p.apply(a);
            const ComplexMatrix r = pa.leftCols(m);
            return NormEstimate{detail::spectral_norm(r), NormEstimate::Mode::LowerBound, m};
        }
    }
}

} // namespace speckit
