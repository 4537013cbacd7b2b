#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "speckit/errors.hpp"
#include "speckit/types.hpp"

namespace speckit {

/// A finite rectangular sampling grid in the complex plane.
///
/// Two modes: the square-root-coupled grid (spacing sqrt(1/n), extent
/// n*spacing in each direction, (2n+1)^2 points) used by the set-valued
/// towers, or an explicit rectangle with a fixed step.
struct GridSpec {
    enum class Mode { Theta, Rect };

    Mode mode = Mode::Theta;
    int n = 1;                    // Theta mode parameter
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0, step = 0;

    static GridSpec theta(int n) {
        if (n < 1) throw InvalidParameter("GridSpec::theta: n must be >= 1");
        GridSpec g;
        g.mode = Mode::Theta;
        g.n = n;
        const double d = std::sqrt(1.0 / n);
        g.step = d;
        g.re_min = -n * d;
        g.re_max = n * d;
        g.im_min = -n * d;
        g.im_max = n * d;
        return g;
    }

    static GridSpec rect(double re_min, double re_max, double im_min, double im_max,
                         double step) {
        if (!(step > 0)) throw InvalidParameter("GridSpec::rect: step must be > 0");
        if (!(re_max >= re_min) || !(im_max >= im_min))
            throw InvalidParameter("GridSpec::rect: degenerate rectangle");
        GridSpec g;
        g.mode = Mode::Rect;
        g.re_min = re_min;
        g.re_max = re_max;
        g.im_min = im_min;
        g.im_max = im_max;
        g.step = step;
        return g;
    }

    double pitch() const { return step; }

    int cols() const {
        if (mode == Mode::Theta) return 2 * n + 1;
        return static_cast<int>(std::floor((re_max - re_min) / step + 0.5 * step / step)) + 1;
    }

    /// Grid points in deterministic row-major order: imaginary part outer
    /// (ascending), real part inner (ascending).
    std::vector<Complex> points() const {
        std::vector<Complex> out;
        if (mode == Mode::Theta) {
            const double d = std::sqrt(1.0 / n);
            out.reserve(static_cast<size_t>(2 * n + 1) * (2 * n + 1));
            for (int s = -n; s <= n; ++s)
                for (int r = -n; r <= n; ++r)
                    out.emplace_back(r * d, s * d);
        } else {
            const double tol = step * 1e-9;
            const int ny = static_cast<int>(std::floor((im_max - im_min + tol) / step));
            const int nx = static_cast<int>(std::floor((re_max - re_min + tol) / step));
            for (int iy = 0; iy <= ny; ++iy)
                for (int ix = 0; ix <= nx; ++ix)
                    out.emplace_back(re_min + ix * step, im_min + iy * step);
        }
        return out;
    }

    std::string describe() const {
        if (mode == Mode::Theta) return "theta(" + std::to_string(n) + ")";
        return "rect";
    }
};

} // namespace speckit
