#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "speckit/detail/nelder_mead.hpp"
#include "speckit/enumeration.hpp"
#include "speckit/grid.hpp"
#include "speckit/norms.hpp"
#include "speckit/operators.hpp"
#include "speckit/poly.hpp"
#include "speckit/region.hpp"

namespace speckit::hulls {

/// Membership answer for |p(z)| <= ||p(a)||. Exclusion (member == false) is
/// certified only when the norm was exact; with a lower-bound norm a
/// non-member may still belong to the true sublevel set.
struct VpMembership {
    bool member = false;
    bool exclusion_certified = false;
};

inline VpMembership vp_member(const MonicPoly& p, const NormEstimate& norm, Complex z) {
    VpMembership r;
    r.member = std::abs(p.eval(z)) <= norm.value;
    r.exclusion_certified = !r.member && norm.exact();
    return r;
}

/// Pointwise sublevel indicator; value stores |p(z)| - norm.
inline RegionEstimate vp_region(const MonicPoly& p, const NormEstimate& norm,
                                const GridSpec& grid) {
    RegionEstimate region;
    region.grid = grid;
    for (const Complex& z : grid.points()) {
        const double v = std::abs(p.eval(z)) - norm.value;
        region.samples.push_back({z, v, v <= 0.0});
    }
    region.meta.algorithm = "vp_region";
    region.meta.params = {{"degree", p.degree()},
                          {"norm", norm.value},
                          {"norm_mode", norm.mode_name()}};
    return region;
}

/// Outer approximation of the order-one hull (the closure of the numerical
/// range) for finite dense elements: intersection of the discs
/// |z - c| <= ||a - c|| over a c-lattice covering the grid window. More
/// centers tighten the approximation from outside.
inline RegionEstimate numerical_range_v1(const OperatorSpec& spec, int c_samples,
                                         const GridSpec& grid) {
    if (!spec.is_finite())
        throw InvalidParameter("numerical_range_v1: finite dense element required");
    if (c_samples < 2) throw InvalidParameter("numerical_range_v1: c_samples must be >= 2");

    std::vector<Complex> centers;
    std::vector<double> radii;
    const double dre = (grid.re_max - grid.re_min) / (c_samples - 1);
    const double dim = (grid.im_max - grid.im_min) / (c_samples - 1);
    for (int iy = 0; iy < c_samples; ++iy)
        for (int ix = 0; ix < c_samples; ++ix) {
            const Complex c(grid.re_min + ix * dre, grid.im_min + iy * dim);
            centers.push_back(c);
            radii.push_back(norm_of_poly(spec, MonicPoly({-c}), 1).value);
        }

    RegionEstimate region;
    region.grid = grid;
    for (const Complex& z : grid.points()) {
        double worst = -1e300;
        for (size_t i = 0; i < centers.size(); ++i)
            worst = std::max(worst, std::abs(z - centers[i]) - radii[i]);
        region.samples.push_back({z, worst, worst <= 0.0});
    }
    region.meta.algorithm = "numerical_range_v1";
    region.meta.params = {{"c_samples", c_samples},
                          {"lattice_pitch_re", dre},
                          {"lattice_pitch_im", dim},
                          {"operator", spec.describe()}};
    return region;
}

namespace detail_hulls {

/// Characteristic polynomial coefficients by the trace recursion
/// (arithmetic only, adequate for the small compressions used as starts).
inline std::vector<Complex> charpoly_coeffs(const ComplexMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<Complex> c(n);
    ComplexMatrix m = a;
    c[0] = -m.trace();
    for (int k = 1; k < n; ++k) {
        m = (a * (m + c[k - 1] * ComplexMatrix::Identity(n, n))).eval();
        c[k] = -m.trace() / Complex(k + 1, 0);
    }
    return c;
}

/// Objective used inside the coefficient search. Finite elements reuse a
/// cached section; a Hermitian section additionally allows evaluating
/// ||p(a)|| as max |p(lambda_i)| over its (once-computed) eigenvalues.
class NormObjective {
  public:
    NormObjective(const OperatorSpec& spec, int degree, int norm_budget)
        : spec_(spec), degree_(degree), norm_budget_(norm_budget) {
        if (spec.is_finite()) {
            a_ = section(spec, spec.dim()).entries;
            const double scale = std::max(1.0, a_.cwiseAbs().maxCoeff());
            if ((a_ - a_.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
                Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a_);
                for (int i = 0; i < a_.rows(); ++i) eig_.emplace_back(es.eigenvalues()(i), 0.0);
            }
        }
    }

    double operator()(const std::vector<double>& x) const {
        std::vector<Complex> c(degree_);
        for (int i = 0; i < degree_; ++i) c[i] = Complex(x[2 * i], x[2 * i + 1]);
        const MonicPoly p(std::move(c));
        if (!eig_.empty()) {
            double worst = 0;
            for (const Complex& l : eig_) worst = std::max(worst, std::abs(p.eval(l)));
            return worst;
        }
        if (a_.size() > 0) return speckit::detail::spectral_norm(p.apply(a_), &warm_);
        return norm_of_poly(spec_, p, norm_budget_).value;
    }

  private:
    const OperatorSpec& spec_;
    int degree_;
    int norm_budget_;
    ComplexMatrix a_;
    std::vector<Complex> eig_;
    mutable ComplexVector warm_;
};

} // namespace detail_hulls

/// Heuristic minimizer of ||p(a)|| over monic degree-j polynomials:
/// characteristic-polynomial (finite kinds) or Chebyshev-node start, then
/// derivative-free descent over the 2j real coefficient parameters, capped
/// at `budget` norm evaluations. Returns an upper bound of the true
/// minimum; no optimality certificate. The returned estimate is recomputed
/// through the public norm oracle.
inline std::pair<MonicPoly, NormEstimate> min_norm_poly(const OperatorSpec& spec, int j,
                                                        long budget, int norm_budget = 60) {
    if (j < 1) throw InvalidParameter("min_norm_poly: degree must be >= 1");
    if (budget < 1) throw InvalidParameter("min_norm_poly: budget must be >= 1");

    std::vector<Complex> init;
    if (spec.is_finite()) {
        const int m0 = std::min(j, spec.dim());
        const ComplexMatrix lead = section(spec, m0).entries;
        init = detail_hulls::charpoly_coeffs(lead);
        init.resize(j, Complex(0, 0));  // extra factors of z when j exceeds the dimension
    } else {
        const int probe = std::min(norm_budget, 40);
        const ComplexMatrix s = section(spec, probe).entries;
        double radius = 1.0;
        for (int i = 0; i < probe; ++i) {
            double row = 0;
            for (int jj = 0; jj < probe; ++jj) row += std::abs(s(i, jj));
            radius = std::max(radius, row);
        }
        std::vector<Complex> roots;
        for (int i = 1; i <= j; ++i)
            roots.emplace_back(radius * std::cos((2.0 * i - 1) * M_PI / (2.0 * j)), 0.0);
        init = MonicPoly::from_roots(roots).coeffs();
    }

    detail_hulls::NormObjective objective(spec, j, norm_budget);
    std::vector<double> x0(2 * j);
    for (int i = 0; i < j; ++i) {
        x0[2 * i] = init[i].real();
        x0[2 * i + 1] = init[i].imag();
    }
    double scale = 0.25;
    for (double v : x0) scale = std::max(scale, 0.25 * std::abs(v));

    auto fn = [&](const std::vector<double>& x) { return objective(x); };
    speckit::detail::NelderMeadResult best =
        speckit::detail::nelder_mead(fn, x0, scale, budget);
    long remaining = budget - best.evals;
    int restarts = 0;
    while (remaining > 2 * j + 2 && restarts < 3) {
        auto again = speckit::detail::nelder_mead(fn, best.x, scale * std::pow(0.3, restarts + 1),
                                                  remaining);
        remaining -= again.evals;
        ++restarts;
        if (again.value < best.value) best = again;
    }

    std::vector<Complex> out(j);
    for (int i = 0; i < j; ++i) out[i] = Complex(best.x[2 * i], best.x[2 * i + 1]);
    MonicPoly poly(std::move(out));
    return {poly, norm_of_poly(spec, poly, norm_budget)};
}

/// Certificate produced by the sampled inclusion test.
struct SubsetCert {
    bool holds = false;
    /// A positive answer certifies V_p inside the slack-inflated q-sublevel
    /// set {|q| <= norm_q + slack} on the window.
    double slack = 0;
    int samples = 0;
    double window_radius = 0;
};

/// Sampled test of V_p(a) inside V_q(a): every lattice point triggered by
/// the (Lipschitz-inflated) p-condition must satisfy the q-condition with
/// the matching inflation. False negatives are possible; positives are
/// sound up to the declared slack.
inline SubsetCert region_subset(const MonicPoly& p, const NormEstimate& norm_p,
                                const MonicPoly& q, const NormEstimate& norm_q,
                                const GridSpec& window, int samples) {
    if (samples < 8) throw InvalidParameter("region_subset: need at least 8 samples per axis");
    const double rp = p.root_bound() + std::pow(std::max(norm_p.value, 0.0), 1.0 / p.degree());
    if (window.re_min > -rp || window.re_max < rp || window.im_min > -rp || window.im_max < rp)
        throw InvalidParameter("region_subset: window too small to cover the p-sublevel set");

    const double hx = (window.re_max - window.re_min) / (samples - 1);
    const double hy = (window.im_max - window.im_min) / (samples - 1);
    const double h2 = 0.5 * std::hypot(hx, hy);
    const double rw = std::max({std::abs(window.re_min), std::abs(window.re_max),
                                std::abs(window.im_min), std::abs(window.im_max)}) *
                      std::sqrt(2.0);
    const double lp = p.deriv_sup_bound(rw);
    const double lq = q.deriv_sup_bound(rw);

    // A node triggered at level np + Lp*h2 can sit as far from the true
    // sublevel set as the lemniscate growth allows: one of the d factors of
    // |p| must drop below the (1/d)-th root of the level.
    const double trigger = norm_p.value + lp * h2;
    const double reach = h2 + std::pow(trigger, 1.0 / p.degree()) -
                         std::pow(norm_p.value, 1.0 / p.degree());
    SubsetCert cert;
    cert.samples = samples;
    cert.window_radius = rw;
    cert.slack = lq * (reach + h2);
    const double requirement = norm_q.value + lq * reach;
    for (int iy = 0; iy < samples; ++iy)
        for (int ix = 0; ix < samples; ++ix) {
            const Complex z(window.re_min + ix * hx, window.im_min + iy * hy);
            if (std::abs(p.eval(z)) <= trigger && std::abs(q.eval(z)) > requirement) {
                cert.holds = false;
                return cert;
            }
        }
    cert.holds = true;
    return cert;
}

/// One accepted set in the enumeration run, with the stored inclusion
/// certificate that justified the acceptance.
struct AcceptedSet {
    RationalMonic rational;
    MonicPoly poly = MonicPoly::identity();
    NormEstimate norm;
    std::uint64_t index = 0;
    SubsetCert certificate;  // vacuous for the first accepted set
};

/// Resumable state of the enumeration algorithm.
struct HullState {
    std::vector<AcceptedSet> accepted;
    std::uint64_t cursor = 0;
    long candidates_tried = 0;
    long norm_evaluations = 0;
    bool budget_exhausted = false;

    nlohmann::json to_json() const {
        nlohmann::json acc = nlohmann::json::array();
        for (const auto& a : accepted) {
            nlohmann::json coeffs = nlohmann::json::array();
            for (const auto& c : a.rational.coeffs)
                coeffs.push_back({{"re", {c.re.num, c.re.den}}, {"im", {c.im.num, c.im.den}}});
            acc.push_back({{"rational", coeffs},
                           {"poly", a.poly.to_json()},
                           {"norm", a.norm.value},
                           {"norm_mode", a.norm.mode_name()},
                           {"norm_witness", a.norm.witness_size},
                           {"index", a.index},
                           {"certificate",
                            {{"holds", a.certificate.holds},
                             {"slack", a.certificate.slack},
                             {"samples", a.certificate.samples},
                             {"window_radius", a.certificate.window_radius}}}});
        }
        return {{"accepted", acc},
                {"cursor", cursor},
                {"candidates_tried", candidates_tried},
                {"norm_evaluations", norm_evaluations},
                {"budget_exhausted", budget_exhausted}};
    }

    static HullState from_json(const nlohmann::json& j) {
        HullState s;
        s.cursor = j.at("cursor").get<std::uint64_t>();
        s.candidates_tried = j.at("candidates_tried").get<long>();
        s.norm_evaluations = j.at("norm_evaluations").get<long>();
        s.budget_exhausted = j.at("budget_exhausted").get<bool>();
        for (const auto& a : j.at("accepted")) {
            AcceptedSet acc;
            for (const auto& c : a.at("rational")) {
                GaussianRational g;
                g.re = Rational(c.at("re").at(0).get<long>(), c.at("re").at(1).get<long>());
                g.im = Rational(c.at("im").at(0).get<long>(), c.at("im").at(1).get<long>());
                acc.rational.coeffs.push_back(g);
            }
            acc.poly = MonicPoly::from_json(a.at("poly"));
            acc.norm.value = a.at("norm").get<double>();
            acc.norm.mode = a.at("norm_mode").get<std::string>() == "exact"
                                ? NormEstimate::Mode::Exact
                                : NormEstimate::Mode::LowerBound;
            acc.norm.witness_size = a.at("norm_witness").get<int>();
            acc.index = a.at("index").get<std::uint64_t>();
            acc.certificate.holds = a.at("certificate").at("holds").get<bool>();
            acc.certificate.slack = a.at("certificate").at("slack").get<double>();
            acc.certificate.samples = a.at("certificate").at("samples").get<int>();
            acc.certificate.window_radius = a.at("certificate").at("window_radius").get<double>();
            s.accepted.push_back(std::move(acc));
        }
        return s;
    }
};

struct HullOptions {
    int norm_budget = 60;    // section budget for lower-bound norms
    int subset_samples = 161;
    double window_margin = 0.25;
};

/// The enumeration algorithm: walk the fixed enumeration of rational monic
/// polynomials, accept a candidate when the sampled inclusion test
/// certifies its sublevel set inside the latest accepted one, stop after
/// `steps` acceptances or when `per_step_budget` candidates have been
/// consumed for the current step. A budget-exhausted run is a reported
/// outcome, not an error, and the state is resumable.
inline HullState hull_enumeration(const OperatorSpec& spec, int steps, long per_step_budget,
                                  HullState state = HullState{},
                                  HullOptions opts = HullOptions{}) {
    if (steps < 1) throw InvalidParameter("hull_enumeration: steps must be >= 1");
    if (per_step_budget < 1) throw InvalidParameter("hull_enumeration: budget must be >= 1");
    RationalEnumeration table;
    state.budget_exhausted = false;

    while (static_cast<int>(state.accepted.size()) < steps) {
        long tried = 0;
        bool advanced = false;
        while (tried < per_step_budget) {
            const std::uint64_t idx = state.cursor++;
            ++tried;
            ++state.candidates_tried;
            RationalMonic rational = table.at(idx);
            MonicPoly cand = rational.to_poly();
            NormEstimate norm = norm_of_poly(spec, cand, opts.norm_budget);
            ++state.norm_evaluations;

            if (state.accepted.empty()) {
                state.accepted.push_back({std::move(rational), cand, norm, idx, SubsetCert{}});
                advanced = true;
                break;
            }
            const AcceptedSet& prev = state.accepted.back();
            const double rc =
                cand.root_bound() + std::pow(std::max(norm.value, 0.0), 1.0 / cand.degree());
            const double rq = prev.poly.root_bound() +
                              std::pow(std::max(prev.norm.value, 0.0),
                                       1.0 / prev.poly.degree());
            const double r = std::max(rc, rq) + opts.window_margin;
            const GridSpec window = GridSpec::rect(-r, r, -r, r, 2 * r / (opts.subset_samples - 1));
            SubsetCert cert = region_subset(cand, norm, prev.poly, prev.norm, window,
                                            opts.subset_samples);
            if (cert.holds) {
                state.accepted.push_back({std::move(rational), cand, norm, idx, cert});
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            state.budget_exhausted = true;
            break;
        }
    }
    return state;
}

} // namespace speckit::hulls
