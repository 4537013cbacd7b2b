#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "speckit/errors.hpp"
#include "speckit/hulls.hpp"
#include "speckit/norms.hpp"
#include "speckit/operators.hpp"
#include "speckit/poly.hpp"

namespace speckit::calculus {

/// The prefix polynomials of p: Q_j(z) = z^j + a_1 z^{j-1} + ... + a_j,
/// Q_0 = 1; their coefficients are prefixes of p's coefficient list, so
/// they satisfy the recurrence Q_j(z) = z Q_{j-1}(z) + a_j.
struct AuxPolySet {
    MonicPoly p;

    explicit AuxPolySet(MonicPoly poly) : p(std::move(poly)) {}

    Complex q_value(int j, Complex z) const {
        if (j < 0 || j >= p.degree())
            throw InvalidParameter("AuxPolySet: q index out of range");
        Complex r(1, 0);
        for (int t = 1; t <= j; ++t) r = r * z + p.coeffs()[t - 1];
        return r;
    }
};

/// q(z, a) = sum_{j=0}^{d-1} Q_{d-1-j}(z) a^j, satisfying the factorization
/// (a - z) q(z, a) = p(a) - p(z).
inline ComplexMatrix q_eval(const MonicPoly& p, Complex z, const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw InvalidParameter("q_eval: square matrix required");
    const int d = p.degree();
    const Eigen::Index n = a.rows();
    const AuxPolySet aux(p);
    // Horner in a: acc <- acc * a + Q_t(z) I walks t = 0 .. d-1
    ComplexMatrix acc = aux.q_value(0, z) * ComplexMatrix::Identity(n, n);
    for (int t = 1; t < d; ++t)
        acc = (acc * a + aux.q_value(t, z) * ComplexMatrix::Identity(n, n)).eval();
    return acc;
}

struct ResolventReport {
    int terms = 0;
    double rho = 0;
    double residual = 0;
    bool truncated = false;  // series cap reached before the tail bound
    double tail_bound = 0;
    std::vector<double> term_norms;
};

/// Truncated geometric representation of (z - a)^{-1} valid outside the
/// p-sublevel set: q(z,a)/p(z) * sum_j (p(a)/p(z))^j. Requires the strict
/// margin rho = ||p(a)|| / |p(z)| <= 1 - 1e-6; the reported residual
/// ||(z - a) R - I|| certifies the output on its own.
inline std::pair<ComplexMatrix, ResolventReport> resolvent_series(const MonicPoly& p,
                                                                  const ComplexMatrix& a,
                                                                  Complex z, double tol,
                                                                  int n_max = 10000) {
    if (!(tol > 0)) throw InvalidParameter("resolvent_series: tol must be > 0");
    const Eigen::Index n = a.rows();
    const ComplexMatrix pa = p.apply(a);
    const double norm_pa = speckit::detail::spectral_norm(pa);
    const Complex pz = p.eval(z);
    const double rho = norm_pa / std::abs(pz);
    if (!(rho <= 1.0 - 1e-6))
        throw NotInResolventDomain(
            "resolvent_series: point is not certified outside the p-sublevel set (rho = " +
            std::to_string(rho) + ")");

    const ComplexMatrix q = q_eval(p, z, a);
    const double norm_q = speckit::detail::spectral_norm(q);

    ResolventReport rep;
    rep.rho = rho;

    // geometric tail: ||q|| rho^{N+1} / (|p(z)| (1 - rho)) < tol
    ComplexMatrix sum = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    const ComplexMatrix step = pa / pz;
    double tail = norm_q / (std::abs(pz) * (1.0 - rho));
    int used = 0;
    rep.term_norms.push_back(1.0);
    while (tail * std::pow(rho, used + 1) >= tol && used < n_max) {
        term = (term * step).eval();
        const double tn = speckit::detail::spectral_norm(term);
        rep.term_norms.push_back(tn);
        sum += term;
        ++used;
        if (tn == 0.0) break;  // nilpotent amplitude: the series terminates
    }
    rep.terms = used;
    rep.truncated = (used >= n_max) && (tail * std::pow(rho, used + 1) >= tol);
    rep.tail_bound = tail * std::pow(rho, used + 1);

    ComplexMatrix result = (q / pz) * sum;
    rep.residual = speckit::detail::spectral_norm(
        ((z * ComplexMatrix::Identity(n, n) - a) * result - ComplexMatrix::Identity(n, n))
            .eval());
    return {std::move(result), std::move(rep)};
}

/// Analytic function handle from the fixed catalog.
struct Analytic {
    std::string name;
    std::function<Complex(Complex)> eval;
    std::function<bool(Complex)> in_domain;

    static Analytic exp_fn() {
        return {"exp", [](Complex z) { return std::exp(z); }, [](Complex) { return true; }};
    }
    static Analytic log_principal() { return log_cut(M_PI); }

    /// Logarithm with the branch cut along the ray of direction `theta`.
    static Analytic log_cut(double theta) {
        const Complex rot = std::polar(1.0, -(theta - M_PI));
        const Complex unrot_add(0.0, theta - M_PI);
        return {"log[cut=" + std::to_string(theta) + "]",
                [rot, unrot_add](Complex z) { return std::log(z * rot) + unrot_add; },
                [theta](Complex z) {
                    if (z == Complex(0, 0)) return false;
                    double d = std::arg(z) - theta;
                    while (d > M_PI) d -= 2 * M_PI;
                    while (d < -M_PI) d += 2 * M_PI;
                    return std::abs(d) > 1e-9;
                }};
    }

    static Analytic sqrt_principal() {
        return {"sqrt",
                [](Complex z) { return std::sqrt(z); },
                [](Complex z) { return !(z.imag() == 0 && z.real() < 0); }};
    }

    /// Ratio of two polynomials given by coefficient lists (leading first).
    static Analytic rational(std::vector<Complex> num, std::vector<Complex> den) {
        auto horner = [](const std::vector<Complex>& c, Complex z) {
            Complex r(0, 0);
            for (const Complex& v : c) r = r * z + v;
            return r;
        };
        return {"rational",
                [num, den, horner](Complex z) { return horner(num, z) / horner(den, z); },
                [den, horner](Complex z) { return std::abs(horner(den, z)) > 1e-14; }};
    }

    /// Power series sum c_k z^k on |z| < radius.
    static Analytic power_series(std::vector<Complex> coeffs, double radius) {
        return {"power_series",
                [coeffs](Complex z) {
                    Complex r(0, 0);
                    for (size_t k = coeffs.size(); k-- > 0;) r = r * z + coeffs[k];
                    return r;
                },
                [radius](Complex z) { return std::abs(z) < radius; }};
    }

    /// Catalog lookup by name for the CLI: "log", "exp", "sqrt".
    static Analytic by_name(const std::string& name) {
        if (name == "log") return log_principal();
        if (name == "exp") return exp_fn();
        if (name == "sqrt") return sqrt_principal();
        throw InvalidParameter("unknown function name: " + name);
    }
};

struct ContourParams {
    Complex center;
    double radius = 0;
    int start_nodes = 64;
    int max_nodes = 1 << 17;
    double coeff_tol = 1e-12;
};

/// Roots of a monic polynomial via its companion matrix.
inline std::vector<Complex> poly_roots(const MonicPoly& p) {
    const int d = p.degree();
    if (d == 1) return {-p.coeffs()[0]};
    ComplexMatrix c = ComplexMatrix::Zero(d, d);
    for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -p.coeffs()[d - 1 - i];
    Eigen::ComplexEigenSolver<ComplexMatrix> es(c);
    std::vector<Complex> roots;
    for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

/// Circle centered at the root centroid with radius 1.5x the largest
/// root-to-centroid distance (floored for near-coincident layouts).
inline ContourParams default_contour(const std::vector<Complex>& roots) {
    Complex centroid(0, 0);
    for (const Complex& r : roots) centroid += r;
    centroid /= static_cast<double>(roots.size());
    double maxdist = 0, scale = 0;
    for (const Complex& r : roots) {
        maxdist = std::max(maxdist, std::abs(r - centroid));
        scale = std::max(scale, std::abs(r));
    }
    ContourParams c;
    c.center = centroid;
    c.radius = std::max(1.5 * maxdist, 0.5 * std::max(1.0, scale));
    return c;
}

/// Coefficient table of the multicentric decomposition
/// f(z) = sum_k delta_k(z) f_k(p(z)), f_k(w) = sum_j alpha_kj w^j,
/// computed by trapezoidal contour quadrature (spectrally accurate on a
/// circle) with node doubling until the table stabilizes.
struct MulticentricCoeffs {
    MonicPoly p;
    std::vector<Complex> roots;
    std::vector<std::vector<Complex>> alpha;  // [k][j], j = 0..J
    int J = 0;
    ContourParams contour;
    int nodes_used = 0;
    double residual = 0;            // estimated truncation error of the table
    double min_abs_p_on_contour = 0;  // lower bound for every f_k radius

    MulticentricCoeffs() : p(MonicPoly::identity()) {}

    /// delta_k coefficient vectors (degree d-1 polynomials, leading first).
    std::vector<std::vector<Complex>> delta_coeffs() const {
        const int d = p.degree();
        std::vector<std::vector<Complex>> out;
        for (int k = 0; k < d; ++k) {
            // synthetic division p / (z - z_k), then scale by 1/p'(z_k)
            std::vector<Complex> b(d);
            b[0] = Complex(1, 0);
            for (int i = 1; i < d; ++i) b[i] = b[i - 1] * roots[k] + p.coeffs()[i - 1];
            const Complex dp = p.deriv_eval(roots[k]);
            for (Complex& v : b) v /= dp;
            out.push_back(std::move(b));
        }
        return out;
    }

    /// Equivalent expansion f = sum_j c_j(z) p(z)^j with polynomial
    /// coefficients c_j = sum_k alpha_kj delta_k of degree < d.
    std::vector<std::vector<Complex>> jacobi_coeffs() const {
        const auto deltas = delta_coeffs();
        const int d = p.degree();
        std::vector<std::vector<Complex>> out;
        for (int j = 0; j <= J; ++j) {
            std::vector<Complex> cj(d, Complex(0, 0));
            for (int k = 0; k < d; ++k)
                for (int t = 0; t < d; ++t) cj[t] += alpha[k][j] * deltas[k][t];
            out.push_back(std::move(cj));
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json jroots = nlohmann::json::array();
        for (const Complex& r : roots) jroots.push_back({r.real(), r.imag()});
        nlohmann::json jalpha = nlohmann::json::array();
        for (const auto& row : alpha) {
            nlohmann::json jr = nlohmann::json::array();
            for (const Complex& v : row) jr.push_back({v.real(), v.imag()});
            jalpha.push_back(jr);
        }
        nlohmann::json jc = nlohmann::json::array();
        for (const auto& row : jacobi_coeffs()) {
            nlohmann::json jr = nlohmann::json::array();
            for (const Complex& v : row) jr.push_back({v.real(), v.imag()});
            jc.push_back(jr);
        }
        return {{"poly", p.to_json()},
                {"roots", jroots},
                {"alpha", jalpha},
                {"jacobi", jc},
                {"J", J},
                {"contour",
                 {{"center", {contour.center.real(), contour.center.imag()}},
                  {"radius", contour.radius},
                  {"nodes", nodes_used}}},
                {"residual", residual},
                {"min_abs_p_on_contour", min_abs_p_on_contour}};
    }
};

inline MulticentricCoeffs multicentric_coeffs(const Analytic& f, const MonicPoly& p, int J,
                                              std::optional<ContourParams> contour_in =
                                                  std::nullopt) {
    if (J < 0) throw InvalidParameter("multicentric_coeffs: J must be >= 0");
    MulticentricCoeffs mc;
    mc.p = p;
    mc.J = J;
    mc.roots = poly_roots(p);

    double scale = 0;
    for (const Complex& r : mc.roots) scale = std::max(scale, std::abs(r));
    const double sep_tol = 1e-6 * std::max(1.0, scale);
    for (size_t i = 0; i < mc.roots.size(); ++i)
        for (size_t j = i + 1; j < mc.roots.size(); ++j)
            if (std::abs(mc.roots[i] - mc.roots[j]) < sep_tol)
                throw IllConditionedRoots(
                    "multicentric_coeffs: roots are not separated; simple zeros required");

    mc.contour = contour_in ? *contour_in : default_contour(mc.roots);
    const ContourParams& ct = mc.contour;
    for (const Complex& r : mc.roots)
        if (std::abs(r - ct.center) >= ct.radius)
            throw InvalidParameter("multicentric_coeffs: contour does not enclose every root");

    const int d = p.degree();
    auto run = [&](int nodes) {
        std::vector<std::vector<Complex>> table(d, std::vector<Complex>(J + 1, Complex(0, 0)));
        double min_p = std::numeric_limits<double>::infinity();
        for (int t = 0; t < nodes; ++t) {
            const double th = 2.0 * M_PI * t / nodes;
            const Complex zt = ct.center + std::polar(ct.radius, th);
            if (!f.in_domain(zt))
                throw QuadratureError("multicentric_coeffs: contour leaves the domain of " +
                                      f.name + " at node angle " + std::to_string(th));
            const Complex fz = f.eval(zt);
            const Complex offset = zt - ct.center;
            const Complex pz = p.eval(zt);
            min_p = std::min(min_p, std::abs(pz));
            for (int k = 0; k < d; ++k) {
                Complex base = fz * offset / (zt - mc.roots[k]);
                for (int j = 0; j <= J; ++j) {
                    table[k][j] += base;
                    base /= pz;
                }
            }
        }
        for (auto& row : table)
            for (Complex& v : row) v /= static_cast<double>(nodes);
        return std::make_pair(table, min_p);
    };

    int nodes = ct.start_nodes;
    auto [prev, min_p] = run(nodes);
    for (;;) {
        nodes *= 2;
        if (nodes > ct.max_nodes)
            throw QuadratureError(
                "multicentric_coeffs: quadrature did not stabilize within " +
                std::to_string(ct.max_nodes) + " nodes");
        auto [cur, mp] = run(nodes);
        double diff = 0, magnitude = 0;
        for (int k = 0; k < d; ++k)
            for (int j = 0; j <= J; ++j) {
                diff = std::max(diff, std::abs(cur[k][j] - prev[k][j]));
                magnitude = std::max(magnitude, std::abs(cur[k][j]));
            }
        prev = std::move(cur);
        min_p = mp;
        if (diff < ct.coeff_tol * std::max(1.0, magnitude)) break;
    }
    mc.alpha = std::move(prev);
    mc.nodes_used = nodes;
    mc.min_abs_p_on_contour = min_p;

    // the j = 0 column interpolates f at the roots
    double check = 0, fscale = 0;
    for (int k = 0; k < d; ++k) {
        check = std::max(check, std::abs(mc.alpha[k][0] - f.eval(mc.roots[k])));
        fscale = std::max(fscale, std::abs(f.eval(mc.roots[k])));
    }
    if (check > 1e-7 * std::max(1.0, fscale))
        throw QuadratureError("multicentric_coeffs: alpha_k0 disagrees with f at the roots (" +
                              std::to_string(check) + ")");

    // fitted geometric tail estimate
    if (J >= 2) {
        double aJ = 0, aJm = 0;
        for (int k = 0; k < d; ++k) {
            aJ = std::max(aJ, std::abs(mc.alpha[k][J]));
            aJm = std::max(aJm, std::abs(mc.alpha[k][J - 1]));
        }
        const double r = (aJm > 0) ? std::min(0.999, aJ / aJm) : 0.0;
        mc.residual = (r > 0 && r < 1) ? aJ * r / (1 - r) : aJ;
    }
    return mc;
}

struct FuncalcReport {
    int J = 0;
    double tail_bound = 0;
    double rho = 0;  // ||p(a)|| relative to the coefficient radius estimate
    int quadrature_nodes = 0;
};

/// f(a) through the multicentric decomposition: the caller is responsible
/// for V_p(a) inside the domain of f; the norm of p(a) must stay strictly
/// inside the coefficient series' radius estimate.
inline std::pair<ComplexMatrix, FuncalcReport> funcalc(const Analytic& f, const MonicPoly& p,
                                                       const ComplexMatrix& a, int J, double tol,
                                                       std::optional<ContourParams> contour =
                                                           std::nullopt) {
    const MulticentricCoeffs mc = multicentric_coeffs(f, p, J, contour);
    const Eigen::Index n = a.rows();
    const int d = p.degree();
    const ComplexMatrix pa = p.apply(a);
    const double norm_pa = speckit::detail::spectral_norm(pa);
    const double rho = norm_pa / mc.min_abs_p_on_contour;
    if (!(rho < 1.0 - 1e-9))
        throw NumericalError(
            "funcalc: ||p(a)|| reaches the coefficient series radius (ratio " +
            std::to_string(rho) + "); enlarge the contour or refine p");

    // delta_k(a) = p(a) (p'(z_k) (a - z_k))^{-1}, via linear solves
    std::vector<ComplexMatrix> delta(d);
    for (int k = 0; k < d; ++k) {
        const ComplexMatrix shifted = a - mc.roots[k] * ComplexMatrix::Identity(n, n);
        Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
        const Complex dp = p.deriv_eval(mc.roots[k]);
        delta[k] = lu.solve(pa) / dp;
        const double res = speckit::detail::spectral_norm(
            (shifted * (delta[k] * dp) - pa).eval());
        const double scl = std::max(1.0, norm_pa);
        if (!(res <= 1e-6 * scl))
            throw NumericalError(
                "funcalc: a - z_k is numerically singular (an interpolation node meets the "
                "spectrum); choose different nodes");
    }

    ComplexMatrix result = ComplexMatrix::Zero(n, n);
    ComplexMatrix power = ComplexMatrix::Identity(n, n);
    double alpha_peak = 0;
    for (int j = 0; j <= J; ++j) {
        ComplexMatrix cj = ComplexMatrix::Zero(n, n);
        for (int k = 0; k < d; ++k) cj += mc.alpha[k][j] * delta[k];
        result += cj * power;
        if (j < J) power = (power * pa).eval();
        for (int k = 0; k < d; ++k) alpha_peak = std::max(alpha_peak, std::abs(mc.alpha[k][j]));
    }

    FuncalcReport rep;
    rep.J = J;
    rep.rho = rho;
    rep.quadrature_nodes = mc.nodes_used;
    // |alpha_kj| <= C / radius^j, so the matrix tail is geometric in rho
    double delta_scale = 0;
    for (int k = 0; k < d; ++k)
        delta_scale += speckit::detail::spectral_norm(delta[k]);
    rep.tail_bound = delta_scale * alpha_peak * std::pow(rho, J + 1) / (1.0 - rho);
    (void)tol;
    return {std::move(result), rep};
}

namespace detail_calc {

/// Matrix exponential by scaling-and-squaring with a Taylor core; used only
/// to self-check small log results.
inline ComplexMatrix expm(const ComplexMatrix& a) {
    const Eigen::Index n = a.rows();
    const double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    while (nrm / std::pow(2.0, s) > 0.5) ++s;
    const ComplexMatrix b = a / std::pow(2.0, s);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    ComplexMatrix sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = (term * b / static_cast<double>(k)).eval();
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = (sum * sum).eval();
    return sum;
}

} // namespace detail_calc

struct LogReport {
    MonicPoly poly = MonicPoly::identity();
    double norm = 0;
    double cut_direction = 0;
    double clearance = 0;
    double residual = -1;  // ||exp(result) - a||, evaluated for small matrices
    long candidates_tried = 0;
    std::string strategy;  // which search produced the separating polynomial
};

struct LogResult {
    enum class Status { Ok, Inconclusive };
    Status status = Status::Inconclusive;
    ComplexMatrix value;
    LogReport report;
};

namespace detail_calc {

/// Ray direction (among 360) with the largest clearance from a sample of
/// the p-sublevel set; the polynomial roots are always in the sample.
inline std::pair<double, double> best_cut_direction(const MonicPoly& p, double norm,
                                                    const std::vector<Complex>& roots) {
    std::vector<Complex> sample = roots;
    const double R = p.root_bound() + std::pow(std::max(norm, 0.0), 1.0 / p.degree()) + 0.1;
    const int N = 101;
    for (int iy = 0; iy < N; ++iy)
        for (int ix = 0; ix < N; ++ix) {
            const Complex z(-R + 2 * R * ix / (N - 1), -R + 2 * R * iy / (N - 1));
            if (std::abs(p.eval(z)) <= norm) sample.push_back(z);
        }
    double best_theta = 0, best_clear = -1;
    for (int t = 0; t < 360; ++t) {
        const double theta = 2.0 * M_PI * t / 360.0;
        const Complex u = std::polar(1.0, theta);
        double clear = std::numeric_limits<double>::infinity();
        for (const Complex& w : sample) {
            const double along = (w * std::conj(u)).real();
            const double dist = along <= 0 ? std::abs(w) : std::abs(w - along * u);
            clear = std::min(clear, dist);
        }
        if (clear > best_clear) {
            best_clear = clear;
            best_theta = theta;
        }
    }
    return {best_theta, best_clear};
}

} // namespace detail_calc

/// log(a) by branch-cut search: find a monic p whose sublevel set excludes
/// the origin (certifying that the spectrum neither contains 0 nor
/// separates it from infinity along every ray), cut the plane along the
/// clearest ray, and apply the rotated logarithm through the multicentric
/// calculus. Candidate polynomials come from minimal-norm searches of
/// increasing degree and from the rational enumeration walk; exhausting the
/// budget without a separating polynomial is the inconclusive outcome.
inline LogResult log_element(const ComplexMatrix& a, long hull_budget = 20000, int J = 24,
                             double tol = 1e-10) {
    const OperatorSpec spec = OperatorSpec::dense(a);
    LogResult out;
    long spent = 0;

    auto attempt = [&](const MonicPoly& p, const NormEstimate& norm,
                       const std::string& strategy) -> bool {
        if (!norm.exact()) return false;
        auto membership = hulls::vp_member(p, norm, Complex(0, 0));
        if (membership.member || !membership.exclusion_certified) return false;
        std::vector<Complex> roots = poly_roots(p);
        for (const Complex& r : roots)
            if (std::abs(r) < 1e-12) return false;
        auto [theta, clearance] = detail_calc::best_cut_direction(p, norm.value, roots);
        if (!(clearance > 0)) return false;
        const Analytic f = Analytic::log_cut(theta);
        ContourParams ct = default_contour(roots);
        // shrink toward the roots until the contour clears the cut ray
        for (double shrink : {1.0, 0.8, 0.65, 0.5}) {
            ContourParams trial = ct;
            trial.radius *= shrink;
            bool enclosing = true;
            for (const Complex& r : roots)
                if (std::abs(r - trial.center) >= trial.radius) enclosing = false;
            if (!enclosing) break;
            try {
                auto [value, rep] = funcalc(f, p, a, J, tol, trial);
                out.status = LogResult::Status::Ok;
                out.value = std::move(value);
                out.report.poly = p;
                out.report.norm = norm.value;
                out.report.cut_direction = theta;
                out.report.clearance = clearance;
                out.report.strategy = strategy;
                if (a.rows() <= 8) {
                    out.report.residual = speckit::detail::spectral_norm(
                        (detail_calc::expm(out.value) - a).eval());
                }
                return true;
            } catch (const NumericalError&) {
                continue;  // contour or series failed; try a tighter circle
            } catch (const InvalidParameter&) {
                continue;
            }
        }
        return false;
    };

    // minimal-norm polynomials of increasing degree find separating sets
    // quickly when the spectrum admits them
    const int dmax = std::min<long>(static_cast<long>(a.rows()) + 1, 8);
    for (int j = 1; j <= dmax && spent < hull_budget; ++j) {
        const long use = std::min<long>(400, hull_budget - spent);
        auto [p, norm] = hulls::min_norm_poly(spec, j, use);
        spent += use;
        out.report.candidates_tried = spent;
        if (attempt(p, norm, "min_norm_degree_" + std::to_string(j))) return out;
    }

    // enumeration walk over rational monic polynomials
    hulls::HullState state;
    size_t checked = 0;
    while (spent < hull_budget) {
        const long before = state.candidates_tried;
        const long use = std::min<long>(hull_budget - spent, 2000);
        state = hulls::hull_enumeration(spec, static_cast<int>(state.accepted.size()) + 1, use,
                                        std::move(state));
        spent += state.candidates_tried - before;
        out.report.candidates_tried = spent;
        for (; checked < state.accepted.size(); ++checked) {
            const auto& acc = state.accepted[checked];
            if (attempt(acc.poly, acc.norm,
                        "enumeration_index_" + std::to_string(acc.index)))
                return out;
        }
    }
    out.status = LogResult::Status::Inconclusive;
    out.report.candidates_tried = spent;
    return out;
}

} // namespace speckit::calculus
