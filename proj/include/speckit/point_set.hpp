#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "speckit/errors.hpp"
#include "speckit/grid.hpp"
#include "speckit/types.hpp"

namespace speckit {

/// Finite set of complex points. Deduplication uses exact coordinate
/// equality; callers quantize first if they want fuzzy identity.
class PointSet {
  public:
    PointSet() = default;

    explicit PointSet(std::vector<Complex> pts) {
        std::sort(pts.begin(), pts.end(), less_);
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [](const Complex& a, const Complex& b) {
                                  return a.real() == b.real() && a.imag() == b.imag();
                              }),
                  pts.end());
        points_ = std::move(pts);
    }

    const std::vector<Complex>& points() const { return points_; }
    size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    bool operator==(const PointSet& other) const {
        if (points_.size() != other.points_.size()) return false;
        for (size_t i = 0; i < points_.size(); ++i)
            if (points_[i].real() != other.points_[i].real() ||
                points_[i].imag() != other.points_[i].imag())
                return false;
        return true;
    }

    /// Distance from x to this set.
    double dist(const Complex& x) const {
        double best = std::numeric_limits<double>::infinity();
        for (const Complex& p : points_) best = std::min(best, std::abs(x - p));
        return best;
    }

  private:
    static bool less_(const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    }

    std::vector<Complex> points_;
};

/// Square grid of spacing sqrt(1/n) covering [-n*d, n*d]^2, (2n+1)^2 points.
inline PointSet theta_grid(int n) {
    if (n < 1) throw InvalidParameter("theta_grid: n must be >= 1");
    return PointSet(GridSpec::theta(n).points());
}

/// Exact two-sided Hausdorff distance between finite non-empty sets.
inline double hausdorff(const PointSet& a, const PointSet& b) {
    if (a.empty() || b.empty())
        throw InvalidParameter("hausdorff: point sets must be non-empty");
    double sup = 0.0;
    for (const Complex& p : a.points()) sup = std::max(sup, b.dist(p));
    for (const Complex& q : b.points()) sup = std::max(sup, a.dist(q));
    return sup;
}

/// Truncated Attouch-Wets distance
///   sum_{i=1..i_max} 2^-i * min{1, sup_{|x|<i} |d(x,A) - d(x,B)|}.
///
/// The inner sup is evaluated on the points of A and B inside the ball plus
/// a square lattice of pitch 0.05*i; the difference function is 2-Lipschitz,
/// so the lattice approximates the sup from below within 0.1*i*sqrt(2)/2.
/// Series tail beyond i_max is below 2^-i_max.
inline double attouch_wets(const PointSet& a, const PointSet& b, int i_max) {
    if (a.empty() || b.empty())
        throw InvalidParameter("attouch_wets: point sets must be non-empty");
    if (i_max < 1) throw InvalidParameter("attouch_wets: i_max must be >= 1");

    double total = 0.0;
    double weight = 1.0;
    for (int i = 1; i <= i_max; ++i) {
        weight *= 0.5;
        const double radius = static_cast<double>(i);
        double sup = 0.0;
        auto consider = [&](const Complex& x) {
            if (std::abs(x) < radius)
                sup = std::max(sup, std::abs(a.dist(x) - b.dist(x)));
        };
        for (const Complex& p : a.points()) consider(p);
        for (const Complex& q : b.points()) consider(q);
        const double h = 0.05 * radius;
        const int span = static_cast<int>(std::floor(radius / h));
        for (int py = -span; py <= span; ++py)
            for (int px = -span; px <= span; ++px)
                consider(Complex(px * h, py * h));
        total += weight * std::min(1.0, sup);
    }
    return total;
}

} // namespace speckit
