#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <random>
#include <set>

#include "speckit/hulls.hpp"

using namespace speckit;
using namespace speckit::hulls;

TEST_CASE("enumeration: index 0 is z, early indices are distinct monic polynomials") {
    MonicPoly first = enumerate_rational_monic(0);
    REQUIRE(first.degree() == 1);
    REQUIRE(first.coeffs()[0] == Complex(0, 0));

    RationalEnumeration table;
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < 500; ++i) {
        RationalMonic p = table.at(i);
        std::string key;
        key += std::to_string(p.degree()) + "|";
        for (const auto& c : p.coeffs)
            key += std::to_string(c.re.num) + "/" + std::to_string(c.re.den) + "," +
                   std::to_string(c.im.num) + "/" + std::to_string(c.im.den) + ";";
        REQUIRE(seen.insert(key).second);  // all distinct
        REQUIRE(p.degree() >= 1);
    }
}

TEST_CASE("enumeration: position inverts the map on the first 10^4 indices") {
    RationalEnumeration table;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        RationalMonic p = table.at(i);
        REQUIRE(table.position(p) == i);
    }
}

TEST_CASE("enumeration: heights are non-decreasing and every small poly appears") {
    RationalEnumeration table;
    long prev_height = 1;
    for (std::uint64_t i = 0; i < 3000; ++i) {
        const long h = table.at(i).height();
        REQUIRE(h >= prev_height);
        prev_height = h;
    }
    // z^2 - 1 has exact height 2 and a small index reachable by scan
    RationalMonic target;
    target.coeffs = {GaussianRational{Rational(0, 1), Rational(0, 1)},
                     GaussianRational{Rational(-1, 1), Rational(0, 1)}};
    const std::uint64_t pos = table.position(target);
    REQUIRE(pos < 3000);
    REQUIRE(table.at(pos) == target);
}

TEST_CASE("enumeration: rationalize round trip from floating coefficients") {
    RationalEnumeration table;
    for (std::uint64_t i = 0; i < 2000; i += 37) {
        MonicPoly p = table.at(i).to_poly();
        REQUIRE(enumeration_position(p) == i);
    }
}

TEST_CASE("vp_member on the shift") {
    OperatorSpec s = OperatorSpec::unilateral_shift();
    MonicPoly p({Complex(0, 0), Complex(0, 0)});  // z^2
    NormEstimate n = norm_of_poly(s, p, 8);
    REQUIRE(n.exact());
    REQUIRE_FALSE(vp_member(p, n, Complex(1.5, 0)).member);
    REQUIRE(vp_member(p, n, Complex(1.5, 0)).exclusion_certified);
    REQUIRE(vp_member(p, n, Complex(0.5, 0)).member);
}

TEST_CASE("vp_member with the zero element") {
    OperatorSpec z = OperatorSpec::dense(ComplexMatrix::Zero(2, 2));
    MonicPoly p = MonicPoly::identity();
    NormEstimate n = norm_of_poly(z, p, 1);
    REQUIRE(n.value == 0.0);
    REQUIRE(vp_member(p, n, Complex(0, 0)).member);
    REQUIRE_FALSE(vp_member(p, n, Complex(1e-12, 0)).member);
}

TEST_CASE("vp_region: degree-one sets are discs") {
    OperatorSpec a = OperatorSpec::dense(
        (ComplexMatrix(2, 2) << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0))
            .finished());
    const Complex c(0.3, -0.2);
    MonicPoly p({-c});
    NormEstimate n = norm_of_poly(a, p, 1);
    RegionEstimate region = vp_region(p, n, GridSpec::rect(-2, 2, -2, 2, 0.1));
    for (const auto& s : region.samples)
        REQUIRE(s.member == (std::abs(s.z - c) <= n.value));
}

TEST_CASE("vp_region of z^d on the shift is the closed unit disc") {
    OperatorSpec s = OperatorSpec::unilateral_shift();
    for (int d : {1, 2, 4}) {
        MonicPoly p(std::vector<Complex>(d, Complex(0, 0)));
        NormEstimate n = norm_of_poly(s, p, 8);
        RegionEstimate region = vp_region(p, n, GridSpec::rect(-1.5, 1.5, -1.5, 1.5, 0.25));
        for (const auto& smp : region.samples)
            REQUIRE(smp.member == (std::abs(smp.z) <= 1.0 + 1e-9));
    }
}

TEST_CASE("spectral inclusion: eigenvalues always belong to V_p") {
    std::mt19937_64 rng(3141);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix a(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) a(i, j) = Complex(u(rng), u(rng));
        OperatorSpec spec = OperatorSpec::dense(a);
        const int deg = 1 + trial % 4;
        std::vector<Complex> coeffs;
        for (int i = 0; i < deg; ++i) coeffs.emplace_back(u(rng), u(rng));
        MonicPoly p(coeffs);
        NormEstimate n = norm_of_poly(spec, p, 5);
        Eigen::ComplexEigenSolver<ComplexMatrix> es(a);
        for (int i = 0; i < 5; ++i)
            REQUIRE(vp_member(p, n, es.eigenvalues()(i)).member);
    }
}

TEST_CASE("V_p has at most degree-many grid components") {
    std::mt19937_64 rng(999);
    std::uniform_real_distribution<double> u(-1, 1);
    auto component_count = [](const RegionEstimate& region, int cols) {
        // 4-neighbor flood count over the member mask
        const int n = static_cast<int>(region.samples.size());
        const int rows = n / cols;
        std::vector<int> label(n, -1);
        int comps = 0;
        for (int start = 0; start < n; ++start) {
            if (!region.samples[start].member || label[start] >= 0) continue;
            ++comps;
            std::vector<int> stack{start};
            label[start] = comps;
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                const int r = cur / cols, c = cur % cols;
                const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
                for (auto& [rr, cc] : nb) {
                    if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
                    const int id = rr * cols + cc;
                    if (region.samples[id].member && label[id] < 0) {
                        label[id] = comps;
                        stack.push_back(id);
                    }
                }
            }
        }
        return comps;
    };
    for (int trial = 0; trial < 12; ++trial) {
        ComplexMatrix a(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) a(i, j) = Complex(u(rng), u(rng));
        OperatorSpec spec = OperatorSpec::dense(a);
        const int deg = 1 + trial % 4;
        std::vector<Complex> coeffs;
        for (int i = 0; i < deg; ++i) coeffs.emplace_back(u(rng), u(rng));
        MonicPoly p(coeffs);
        NormEstimate n = norm_of_poly(spec, p, 5);
        const double R = p.root_bound() + std::pow(n.value, 1.0 / deg) + 0.3;
        const int samples = 161;
        GridSpec g = GridSpec::rect(-R, R, -R, R, 2 * R / (samples - 1));
        RegionEstimate region = vp_region(p, n, g);
        REQUIRE(component_count(region, samples) <= deg);
    }
}

TEST_CASE("numerical_range_v1 on fixed elements") {
    // diag(0, 1): the range is the segment [0, 1]
    OperatorSpec d = OperatorSpec::dense(
        (ComplexMatrix(2, 2) << Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0))
            .finished());
    RegionEstimate r = numerical_range_v1(d, 21, GridSpec::rect(-1, 2, -1, 1, 0.05));
    for (const auto& s : r.samples) {
        const double seg = (s.z.real() < 0)   ? std::abs(s.z)
                           : (s.z.real() > 1) ? std::abs(s.z - Complex(1, 0))
                                              : std::abs(s.z.imag());
        if (s.member) REQUIRE(seg <= 0.2);
        // interior segment points are members; the endpoints sit exactly on
        // the boundary where the iterated norm may undershoot by an ulp
        if (seg <= 1e-9 && s.z.real() > 0.05 && s.z.real() < 0.95) REQUIRE(s.member);
    }

    // scalar 3: the range collapses to the point
    OperatorSpec sc = OperatorSpec::dense((ComplexMatrix(1, 1) << Complex(3, 0)).finished());
    RegionEstimate rs = numerical_range_v1(sc, 15, GridSpec::rect(2, 4, -1, 1, 0.05));
    for (const auto& s : rs.samples)
        if (s.member) REQUIRE(std::abs(s.z - Complex(3, 0)) <= 0.26);

    REQUIRE_THROWS_AS(numerical_range_v1(OperatorSpec::unilateral_shift(), 9,
                                         GridSpec::rect(-1, 1, -1, 1, 0.5)),
                      InvalidParameter);
}

TEST_CASE("numerical_range_v1 of the 2x2 nilpotent block approaches the half disc") {
    OperatorSpec j = OperatorSpec::jordan(Complex(0, 0), 2);
    RegionEstimate r = numerical_range_v1(j, 25, GridSpec::rect(-1, 1, -1, 1, 0.05));
    for (const auto& s : r.samples) {
        if (s.member) REQUIRE(std::abs(s.z) <= 0.5 + 0.15);
        if (std::abs(s.z) <= 0.5 - 1e-9) REQUIRE(s.member);
    }
}

TEST_CASE("min_norm_poly annihilates when the degree reaches the dimension") {
    OperatorSpec d = OperatorSpec::dense(
        (ComplexMatrix(2, 2) << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0))
            .finished());
    auto [p, n] = min_norm_poly(d, 2, 200);
    REQUIRE(n.value <= 1e-8);
    REQUIRE(std::abs(p.eval(Complex(1, 0))) <= 1e-7);
    REQUIRE(std::abs(p.eval(Complex(-1, 0))) <= 1e-7);

    OperatorSpec sc = OperatorSpec::dense((ComplexMatrix(1, 1) << Complex(5, 0)).finished());
    auto [p1, n1] = min_norm_poly(sc, 1, 50);
    REQUIRE(n1.value <= 1e-10);
    REQUIRE(std::abs(p1.coeffs()[0] - Complex(-5, 0)) <= 1e-8);
}

TEST_CASE("min_norm_poly best value does not get worse with a doubled budget") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    ComplexMatrix a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = Complex(u(rng), u(rng));
    OperatorSpec spec = OperatorSpec::dense(a);
    double prev = 1e300;
    for (long budget : {50, 100, 200, 400}) {
        auto [p, n] = min_norm_poly(spec, 2, budget);
        REQUIRE(n.value <= prev + 1e-10);
        prev = n.value;
    }
}

TEST_CASE("region_subset fixed examples") {
    OperatorSpec a = OperatorSpec::dense((ComplexMatrix(1, 1) << Complex(0, 0)).finished());
    (void)a;
    MonicPoly z = MonicPoly::identity();
    NormEstimate disc1{1.0, NormEstimate::Mode::Exact, 1};
    NormEstimate disc2{2.0, NormEstimate::Mode::Exact, 1};
    GridSpec window = GridSpec::rect(-4, 4, -4, 4, 0.05);

    REQUIRE(region_subset(z, disc1, z, disc1, window, 161).holds);   // p = q
    REQUIRE(region_subset(z, disc1, z, disc2, window, 161).holds);   // disc 1 inside disc 2
    REQUIRE_FALSE(region_subset(z, disc2, z, disc1, window, 161).holds);

    // window that cannot cover the sublevel set is rejected
    REQUIRE_THROWS_AS(region_subset(z, disc2, z, disc1, GridSpec::rect(-1, 1, -1, 1, 0.05), 41),
                      InvalidParameter);
}

TEST_CASE("hull_enumeration on a scalar keeps the singleton") {
    OperatorSpec sc = OperatorSpec::dense((ComplexMatrix(1, 1) << Complex(0, 0)).finished());
    HullState st = hull_enumeration(sc, 3, 5000);
    REQUIRE(st.accepted.size() >= 3);
    // every accepted sublevel set contains only the origin on a probe lattice
    for (const auto& acc : st.accepted) {
        REQUIRE(std::abs(acc.poly.eval(Complex(0, 0))) <= acc.norm.value + 1e-12);
    }
}

TEST_CASE("hull_enumeration on diag(1,-1) shrinks toward the eigenvalue pair") {
    OperatorSpec d = OperatorSpec::dense(
        (ComplexMatrix(2, 2) << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0))
            .finished());
    HullState st = hull_enumeration(d, 3, 10000);
    REQUIRE(st.accepted.size() >= 3);
    PointSet target({Complex(1, 0), Complex(-1, 0)});
    GridSpec probe = GridSpec::rect(-2, 2, -2, 2, 0.125);
    double prev = 1e300;
    for (const auto& acc : st.accepted) {
        RegionEstimate region = vp_region(acc.poly, acc.norm, probe);
        PointSet sample = region.member_points();
        REQUIRE_FALSE(sample.empty());
        const double dh = hausdorff(sample, target);
        REQUIRE(dh <= prev + 1e-9);
        prev = dh;
    }
    REQUIRE(prev <= 0.1);  // the last accepted set is essentially {1, -1}
}

TEST_CASE("hull_enumeration accepted sets are nested on the certificate lattice") {
    OperatorSpec d = OperatorSpec::dense(
        (ComplexMatrix(2, 2) << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0))
            .finished());
    HullState st = hull_enumeration(d, 3, 10000);
    for (size_t i = 1; i < st.accepted.size(); ++i) {
        const auto& cur = st.accepted[i];
        const auto& prev = st.accepted[i - 1];
        const auto& cert = cur.certificate;
        REQUIRE(cert.holds);
        const double r = cert.window_radius / std::sqrt(2.0);
        const double h = 2 * r / (cert.samples - 1);
        for (int iy = 0; iy < cert.samples; ++iy)
            for (int ix = 0; ix < cert.samples; ++ix) {
                const Complex z(-r + ix * h, -r + iy * h);
                if (std::abs(cur.poly.eval(z)) <= cur.norm.value)
                    REQUIRE(std::abs(prev.poly.eval(z)) <= prev.norm.value + cert.slack);
            }
    }
}

TEST_CASE("hull_enumeration state serializes and resumes") {
    OperatorSpec d = OperatorSpec::dense(
        (ComplexMatrix(2, 2) << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0))
            .finished());
    HullState st = hull_enumeration(d, 2, 10000);
    HullState back = HullState::from_json(st.to_json());
    REQUIRE(back.cursor == st.cursor);
    REQUIRE(back.accepted.size() == st.accepted.size());
    HullState more = hull_enumeration(d, 3, 10000, back);
    REQUIRE(more.accepted.size() == 3);
    HullState direct = hull_enumeration(d, 3, 10000);
    REQUIRE(more.accepted.back().index == direct.accepted.back().index);
}

TEST_CASE("hull_enumeration reports budget exhaustion without failing") {
    OperatorSpec d = OperatorSpec::dense(
        (ComplexMatrix(2, 2) << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0))
            .finished());
    HullState st = hull_enumeration(d, 50, 10);
    REQUIRE(st.budget_exhausted);
    REQUIRE_FALSE(st.accepted.empty());
}

TEST_CASE("every accepted shift hull contains the closed unit disc") {
    OperatorSpec s = OperatorSpec::unilateral_shift();
    HullState st = hull_enumeration(s, 2, 300);
    REQUIRE_FALSE(st.accepted.empty());
    for (const auto& acc : st.accepted)
        for (double x = -1; x <= 1.001; x += 0.125)
            for (double y = -1; y <= 1.001; y += 0.125) {
                const Complex z(x, y);
                if (std::abs(z) <= 1.0)
                    REQUIRE(vp_member(acc.poly, acc.norm, z).member);
            }
}
