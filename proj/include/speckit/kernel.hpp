#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "speckit/errors.hpp"
#include "speckit/operators.hpp"
#include "speckit/types.hpp"

namespace speckit {

/// Dense Hermitian matrix, certified at construction: the input must satisfy
/// max |H - H*| <= 1e-12 * scale entrywise and is then replaced by (H+H*)/2.
/// An optional bandwidth certificate (|i-j| > b implies zero) lets the
/// factorization routines run in O(m b^2) instead of O(m^3).
template <typename Real = double>
class HermitianMatrixT {
  public:
    using Cplx = std::complex<Real>;
    using Mat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;

    explicit HermitianMatrixT(Mat m, std::optional<int> bandwidth = std::nullopt)
        : bandwidth_(bandwidth) {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw InvalidParameter("HermitianMatrix: need a square matrix");
        Real scale = 0, asym = 0;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                scale = std::max(scale, std::abs(m(i, j)));
                asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
            }
        if (asym > Real(1e-12) * std::max(scale, Real(1)))
            throw InvalidParameter("HermitianMatrix: input is not Hermitian");
        entries_ = ((m + m.adjoint()) / Real(2)).eval();
        if (bandwidth_ && *bandwidth_ >= static_cast<int>(m.rows()))
            bandwidth_.reset();
    }

    const Mat& entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.rows()); }
    std::optional<int> bandwidth() const { return bandwidth_; }

    Real max_abs_diagonal() const {
        Real v = 0;
        for (int i = 0; i < size(); ++i) v = std::max(v, std::abs(entries_(i, i)));
        return v;
    }

    /// Max absolute row sum (an upper bound for every |eigenvalue|).
    Real row_norm_bound() const {
        Real v = 0;
        for (int i = 0; i < size(); ++i) {
            Real s = 0;
            for (int j = 0; j < size(); ++j) s += std::abs(entries_(i, j));
            v = std::max(v, s);
        }
        return v;
    }

    Real max_abs_entry() const {
        Real v = 0;
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j) v = std::max(v, std::abs(entries_(i, j)));
        return v;
    }

  private:
    Mat entries_;
    std::optional<int> bandwidth_;
};

using HermitianMatrix = HermitianMatrixT<double>;

/// Default pivot threshold: 1e-12 * (largest diagonal magnitude), floored.
template <typename Real>
Real default_pivot_tau(const HermitianMatrixT<Real>& h) {
    return std::max(Real(1e-12) * h.max_abs_diagonal(), Real(1e-300));
}

/// True iff the Cholesky recurrence for H - shift*I completes with every
/// pivot strictly greater than tau. Total: any non-finite pivot counts as
/// failure. The factor inherits the certified bandwidth, which bounds the
/// inner loops.
template <typename Real>
bool cholesky_exists_shifted(const HermitianMatrixT<Real>& h, Real tau, Real shift) {
    using Mat = typename HermitianMatrixT<Real>::Mat;
    const int m = h.size();
    const int bw = h.bandwidth() ? *h.bandwidth() : m - 1;
    Mat L = h.entries();
    for (int i = 0; i < m; ++i) L(i, i) -= shift;
    for (int k = 0; k < m; ++k) {
        Real d = L(k, k).real();
        const int j0 = std::max(0, k - bw);
        for (int j = j0; j < k; ++j) d -= std::norm(L(k, j));
        if (!(d > tau)) return false;
        const Real piv = std::sqrt(d);
        L(k, k) = piv;
        const int iend = std::min(m - 1, k + bw);
        for (int i = k + 1; i <= iend; ++i) {
            std::complex<Real> s = L(i, k);
            const int jj0 = std::max({0, k - bw, i - bw});
            for (int j = jj0; j < k; ++j) s -= L(i, j) * std::conj(L(k, j));
            L(i, k) = s / piv;
        }
    }
    return true;
}

template <typename Real>
bool cholesky_exists(const HermitianMatrixT<Real>& h, Real tau) {
    return cholesky_exists_shifted(h, tau, Real(0));
}

/// Smallest eigenvalue within +-tol, by bisection on the shift s:
/// H - s I admits a Cholesky factorization exactly when lambda_min > s.
/// Stays inside the arithmetic-plus-square-roots computational model.
template <typename Real>
Real min_eig_hermitian(const HermitianMatrixT<Real>& h, Real tol) {
    if (!(tol > 0)) throw InvalidParameter("min_eig_hermitian: tol must be > 0");
    const Real r = h.row_norm_bound();
    const Real pad = std::max(Real(1), r) * Real(1e-15);
    Real lo = -r - pad, hi = r + pad;
    // invariant target: lambda_min in [lo, hi]
    for (int it = 0; it < 2000 && (hi - lo) > tol; ++it) {
        const Real mid = (lo + hi) / Real(2);
        if (mid == lo || mid == hi) break;  // float resolution reached
        if (cholesky_exists_shifted(h, Real(0), mid))
            lo = mid;  // lambda_min > mid
        else
            hi = mid;
    }
    return (lo + hi) / Real(2);
}

namespace detail {

/// C <- A*A where A is certified banded with half-bandwidth `bw`
/// (entries vanish for |i-j| > bw). Result bandwidth is 2*bw.
template <typename Mat>
Mat banded_square(const Mat& a, int bw) {
    const int n = static_cast<int>(a.rows());
    Mat c = Mat::Zero(n, n);
    const int obw = std::min(2 * bw, n - 1);
    for (int i = 0; i < n; ++i) {
        const int jlo = std::max(0, i - obw), jhi = std::min(n - 1, i + obw);
        for (int j = jlo; j <= jhi; ++j) {
            typename Mat::Scalar s(0);
            const int llo = std::max({0, i - bw, j - bw});
            const int lhi = std::min({n - 1, i + bw, j + bw});
            for (int l = llo; l <= lhi; ++l) s += a(i, l) * a(l, j);
            c(i, j) = s;
        }
    }
    return c;
}

/// Leading m x m block of A^* A (plain) or A A^* (tilde), band-aware.
template <typename Mat>
Mat band_gram(const Mat& a, int m, int bw, bool tilde) {
    const int n = static_cast<int>(a.rows());
    Mat g = Mat::Zero(m, m);
    const int gbw = std::min(2 * bw, m - 1);
    for (int i = 0; i < m; ++i) {
        const int jlo = std::max(0, i - gbw), jhi = std::min(m - 1, i + gbw);
        for (int j = jlo; j <= jhi; ++j) {
            typename Mat::Scalar s(0);
            const int llo = std::max({0, i - bw, j - bw});
            const int lhi = std::min({n - 1, i + bw, j + bw});
            if (tilde)
                for (int l = llo; l <= lhi; ++l) s += a(i, l) * std::conj(a(j, l));
            else
                for (int l = llo; l <= lhi; ++l) s += std::conj(a(l, i)) * a(l, j);
            g(i, j) = s;
        }
    }
    return g;
}

} // namespace detail

enum class PowerVariant { Plain, Tilde };

/// P_m ((P_k (T - z) P_k)^*)^{2^n} (P_k (T - z) P_k)^{2^n} |_{P_m} (plain)
/// or the same with the product order swapped (tilde). The 2^n-th power is
/// formed by n repeated squarings of the k x k truncation.
template <typename Real = double>
HermitianMatrixT<Real> power_section(const OperatorSpec& spec, Complex z, int n, int m, int k,
                                     PowerVariant variant) {
    if (m < 1 || k < m) throw InvalidParameter("power_section: need k >= m >= 1");
    if (n < 0) throw InvalidParameter("power_section: n must be >= 0");
    using Mat = typename HermitianMatrixT<Real>::Mat;

    const ComplexMatrix base = section(spec, k).entries;
    Mat b = base.template cast<std::complex<Real>>();
    for (int i = 0; i < k; ++i) b(i, i) -= std::complex<Real>(Real(z.real()), Real(z.imag()));

    std::optional<int> bw;
    if (spec.band_width()) bw = *spec.band_width();

    for (int t = 0; t < n; ++t) {
        if (bw && *bw < k - 1) {
            b = detail::banded_square(b, *bw);
            bw = std::min(2 * *bw, k - 1);
        } else {
            b = (b * b).eval();
            bw.reset();
        }
    }

    Mat g;
    std::optional<int> gbw;
    if (bw && *bw < k - 1) {
        g = detail::band_gram(b, m, *bw, variant == PowerVariant::Tilde);
        gbw = std::min(2 * *bw, m - 1);
    } else if (variant == PowerVariant::Plain) {
        g = (b.leftCols(m).adjoint() * b.leftCols(m)).eval();
    } else {
        g = (b.topRows(m) * b.topRows(m).adjoint()).eval();
    }
    return HermitianMatrixT<Real>(std::move(g), gbw);
}

namespace detail {

/// Truncation size that makes the k-truncated powered compression equal the
/// untruncated one, obtained by iterating the operator's reach bound 2^n
/// times from m. Returns nullopt when the reach is unknown or explodes.
inline std::optional<long> full_truncation_size(const OperatorSpec& spec, int n, int m,
                                                PowerVariant variant) {
    if (spec.is_finite()) return spec.dim();
    const long cap = 5'000'000;
    if (n >= 62) return std::nullopt;
    const long steps = 1L << n;
    if (spec.band_width()) {
        const long d = *spec.band_width();
        if (d == 0) return m;
        if (steps > (cap - m) / d) return std::nullopt;
        return m + steps * d;
    }
    long r = m;
    for (long t = 0; t < steps; ++t) {
        const std::optional<long> nxt = (variant == PowerVariant::Plain)
                                            ? spec.column_reach(r)
                                            : spec.row_reach(r);
        if (!nxt || *nxt > cap) return std::nullopt;
        if (*nxt <= r) return r;  // reach already closed under iteration
        r = *nxt;
    }
    return r;
}

} // namespace detail

/// Exact P_m ((T-z)^*)^{2^n} (T-z)^{2^n} |_{P_m} (or tilde). Available for
/// finite kinds, banded kinds (truncation m + 2^n * band_width reproduces
/// the untruncated compression), and kinds with a certified finite reach.
/// Infinite kinds without a reach certificate are rejected: for those only
/// the two-parameter (m, k) family is computable.
template <typename Real = double>
HermitianMatrixT<Real> power_section_full(const OperatorSpec& spec, Complex z, int n, int m,
                                          PowerVariant variant) {
    auto k = detail::full_truncation_size(spec, n, m, variant);
    if (!k)
        throw NotFullyComputable(
            "power_section_full: exact compression unavailable for " + spec.describe() +
            "; use the truncated two-parameter form");
    const long kk = std::max<long>(*k, m);
    return power_section<Real>(spec, z, n, m, static_cast<int>(kk), variant);
}

} // namespace speckit
