#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "speckit/errors.hpp"
#include "speckit/types.hpp"

namespace speckit {

/// Monic polynomial p(z) = z^d + a1 z^{d-1} + ... + ad, d >= 1.
/// The leading coefficient is implicit; `coeffs[i-1]` stores a_i.
class MonicPoly {
  public:
    explicit MonicPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw InvalidParameter("MonicPoly: degree must be >= 1");
    }

    static MonicPoly identity() { return MonicPoly({Complex(0, 0)}); }  // p(z) = z

    /// p(z) = (z - c1)...(z - cd)
    static MonicPoly from_roots(const std::vector<Complex>& roots) {
        if (roots.empty()) throw InvalidParameter("MonicPoly: need at least one root");
        std::vector<Complex> c{Complex(1, 0)};  // full coefficient list, leading first
        for (const Complex& r : roots) {
            std::vector<Complex> nc(c.size() + 1, Complex(0, 0));
            for (size_t i = 0; i < c.size(); ++i) {
                nc[i] += c[i];
                nc[i + 1] -= c[i] * r;
            }
            c = std::move(nc);
        }
        return MonicPoly(std::vector<Complex>(c.begin() + 1, c.end()));
    }

    int degree() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    Complex eval(const Complex& z) const {
        Complex r(1, 0);
        for (const Complex& c : coeffs_) r = r * z + c;
        return r;
    }

    Complex deriv_eval(const Complex& z) const {
        const int d = degree();
        Complex r(static_cast<double>(d), 0);
        for (int i = 1; i < d; ++i) r = r * z + Complex(static_cast<double>(d - i), 0) * coeffs_[i - 1];
        return r;
    }

    /// All roots lie inside |z| <= 1 + max |a_i| (Cauchy bound).
    double root_bound() const {
        double m = 0;
        for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
        return 1.0 + m;
    }

    /// sup_{|z| <= R} |p'(z)|, by the coefficient triangle inequality.
    double deriv_sup_bound(double R) const {
        const int d = degree();
        double s = d * std::pow(R, d - 1);
        for (int i = 1; i < d; ++i)
            s += (d - i) * std::abs(coeffs_[i - 1]) * std::pow(R, d - i - 1);
        return s;
    }

    bool operator==(const MonicPoly& o) const { return coeffs_ == o.coeffs_; }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const Complex& c : coeffs_) arr.push_back({c.real(), c.imag()});
        return arr;
    }

    static MonicPoly from_json(const nlohmann::json& arr) {
        std::vector<Complex> c;
        for (const auto& e : arr) c.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        return MonicPoly(std::move(c));
    }

    /// p(A) by Horner's scheme, deg(p)-1 matrix multiplications.
    ComplexMatrix apply(const ComplexMatrix& a) const {
        const Eigen::Index n = a.rows();
        ComplexMatrix m = a + coeffs_[0] * ComplexMatrix::Identity(n, n);
        for (size_t i = 1; i < coeffs_.size(); ++i)
            m = (m * a + coeffs_[i] * ComplexMatrix::Identity(n, n)).eval();
        return m;
    }

    std::string describe() const {
        std::string s = "z^" + std::to_string(degree());
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            s += " + (" + std::to_string(coeffs_[i].real()) + (coeffs_[i].imag() < 0 ? "" : "+") +
                 std::to_string(coeffs_[i].imag()) + "i)";
            const int pw = degree() - 1 - static_cast<int>(i);
            if (pw > 0) s += "z" + (pw > 1 ? "^" + std::to_string(pw) : "");
        }
        return s;
    }

  private:
    std::vector<Complex> coeffs_;
};

} // namespace speckit
