#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "speckit/point_set.hpp"
#include "speckit/region.hpp"

using namespace speckit;

TEST_CASE("theta_grid basic structure") {
    PointSet g1 = theta_grid(1);
    REQUIRE(g1.size() == 9);
    // the nine lattice points {-1,0,1} x {-1,0,1}
    for (int r = -1; r <= 1; ++r)
        for (int s = -1; s <= 1; ++s) REQUIRE(g1.dist(Complex(r, s)) == 0.0);

    PointSet g4 = theta_grid(4);
    REQUIRE(g4.size() == 81);
    REQUIRE(g4.dist(Complex(2.0, -2.0)) == 0.0);
    REQUIRE(g4.dist(Complex(0.5, 0.0)) == 0.0);

    REQUIRE_THROWS_AS(theta_grid(0), InvalidParameter);
}

TEST_CASE("theta_grid refines and extends with n") {
    double prev_pitch = 10, prev_extent = 0;
    for (int n = 1; n <= 6; ++n) {
        const double pitch = std::sqrt(1.0 / n);
        const double extent = n * pitch;
        REQUIRE(pitch < prev_pitch);
        REQUIRE(extent > prev_extent);
        prev_pitch = pitch;
        prev_extent = extent;
    }
}

TEST_CASE("hausdorff examples") {
    PointSet zero({Complex(0, 0)});
    REQUIRE(hausdorff(zero, zero) == 0.0);

    PointSet b({Complex(3, 0), Complex(0, 4)});
    REQUIRE(hausdorff(zero, b) == Catch::Approx(4.0));

    PointSet a({Complex(1, 0), Complex(-1, 0)});
    PointSet one({Complex(1, 0)});
    REQUIRE(hausdorff(a, one) == Catch::Approx(2.0));

    REQUIRE_THROWS_AS(hausdorff(PointSet{}, one), InvalidParameter);
}

TEST_CASE("hausdorff is a metric on random triples") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    auto random_set = [&](int n) {
        std::vector<Complex> v;
        for (int i = 0; i < n; ++i) v.emplace_back(u(rng), u(rng));
        return PointSet(std::move(v));
    };
    for (int trial = 0; trial < 200; ++trial) {
        PointSet A = random_set(1 + trial % 7);
        PointSet B = random_set(1 + (trial / 2) % 5);
        PointSet C = random_set(1 + (trial / 3) % 6);
        const double ab = hausdorff(A, B), ba = hausdorff(B, A);
        REQUIRE(ab == ba);
        REQUIRE(hausdorff(A, A) == 0.0);
        if (ab == 0.0) REQUIRE(A == B);
        REQUIRE(ab <= hausdorff(A, C) + hausdorff(C, B) + 1e-12);
    }
}

TEST_CASE("attouch_wets examples") {
    PointSet zero({Complex(0, 0)});
    REQUIRE(attouch_wets(zero, zero, 30) == 0.0);

    PointSet half({Complex(0.5, 0)});
    const double v = attouch_wets(zero, half, 30);
    REQUIRE(v <= 0.5);
    REQUIRE(v >= 0.25 * 0.5);

    PointSet far({Complex(1e6, 0)});
    const double w = attouch_wets(zero, far, 20);
    REQUIRE(w == Catch::Approx(1.0 - std::pow(2.0, -20)).epsilon(1e-9));
}

TEST_CASE("attouch_wets tracks hausdorff on shrinking bounded perturbations") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Complex> base;
    for (int i = 0; i < 12; ++i) base.emplace_back(u(rng), u(rng));
    PointSet A(base);
    double prev_aw = 1e9;
    for (double t : {0.8, 0.4, 0.2, 0.1, 0.05}) {
        std::vector<Complex> shifted;
        for (const Complex& p : base) shifted.push_back(p + Complex(t, t / 2));
        PointSet B(shifted);
        const double h = hausdorff(A, B);
        const double aw = attouch_wets(A, B, 30);
        REQUIRE(h == Catch::Approx(t * std::sqrt(1.25)));
        REQUIRE(aw <= h + 1e-12);  // the difference function is bounded by h
        REQUIRE(aw < prev_aw);     // decreases along with h
        prev_aw = aw;
    }
}

TEST_CASE("region CSV round trip is bit exact") {
    RegionEstimate r;
    r.grid = GridSpec::theta(2);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const Complex& z : r.grid.points())
        r.samples.push_back({z, u(rng) * std::pow(10.0, int(u(rng) * 18)), u(rng) > 0});
    r.meta.algorithm = "test";
    r.meta.params = {{"eps", 0.25}};

    std::ostringstream os;
    r.to_csv(os);
    std::istringstream is(os.str());
    PointSet members = load_points_csv(is);
    REQUIRE(members == r.member_points());

    // JSON round trip preserves samples exactly
    RegionEstimate r2 = RegionEstimate::from_json(r.to_json());
    REQUIRE(r2.samples.size() == r.samples.size());
    for (size_t i = 0; i < r.samples.size(); ++i) {
        REQUIRE(r2.samples[i].z.real() == r.samples[i].z.real());
        REQUIRE(r2.samples[i].z.imag() == r.samples[i].z.imag());
        REQUIRE(r2.samples[i].value == r.samples[i].value);
        REQUIRE(r2.samples[i].member == r.samples[i].member);
    }
}

TEST_CASE("point set CSV round trip") {
    std::vector<Complex> pts;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 40; ++i) pts.emplace_back(u(rng), u(rng) * 1e-7);
    PointSet ps(pts);
    std::ostringstream os;
    point_set_to_csv(ps, os);
    std::istringstream is(os.str());
    REQUIRE(load_points_csv(is) == ps);
}
