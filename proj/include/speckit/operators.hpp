#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "speckit/errors.hpp"
#include "speckit/types.hpp"

namespace speckit {

/// Strictly increasing integer schedule m -> a*m + b with k_m > m,
/// the free parameter of the diagonal-subsequence counterexample.
struct Schedule {
    long a = 2;
    long b = 1;

    Schedule() = default;
    Schedule(long a_, long b_) : a(a_), b(b_) {
        if (a < 1 || b < 1)
            throw InvalidParameter("Schedule: need a >= 1 and b >= 1 so that k_m > m");
    }

    long k(long m) const { return a * m + b; }

    /// Inverse query: the m with k_m + 1 == i, if any.
    std::optional<long> m_for_k_plus_1(long i) const {
        const long t = i - 1 - b;
        if (t < a || t % a != 0) return std::nullopt;
        return t / a;
    }
};

/// Declarative operator description exposing the matrix-entry oracle
/// x_ij = <T e_j, e_i> with 1-based basis indices. Every algorithm in the
/// library consumes operators through this interface.
class OperatorSpec {
  public:
    enum class Kind {
        Diagonal,
        UnilateralShift,
        BilateralShift,
        ToeplitzBand,
        Dense,
        Jordan,
        Counterexample,
    };

    // --- factories ---

    static OperatorSpec diagonal(std::vector<Complex> values) {
        OperatorSpec s(Kind::Diagonal);
        s.diag_values_ = std::move(values);
        s.diag_formula_ = Formula::List;
        s.band_width_ = 0;
        return s;
    }

    /// Catalog formulas: "1/j" or "constant:<c>".
    static OperatorSpec diagonal_formula(const std::string& formula) {
        OperatorSpec s(Kind::Diagonal);
        if (formula == "1/j") {
            s.diag_formula_ = Formula::InvJ;
        } else if (formula.rfind("constant:", 0) == 0) {
            s.diag_formula_ = Formula::Constant;
            s.diag_const_ = Complex(std::strtod(formula.c_str() + 9, nullptr), 0);
        } else {
            throw InvalidParameter("diagonal formula not in catalog: " + formula);
        }
        s.band_width_ = 0;
        return s;
    }

    static OperatorSpec unilateral_shift() {
        OperatorSpec s(Kind::UnilateralShift);
        s.band_width_ = 1;
        return s;
    }

    /// Bilateral shift re-indexed to the natural numbers by the fixed
    /// interleaving 0,-1,1,-2,2,... of the integer basis. Sections under
    /// this ordering are not Toeplitz; the re-indexed operator is banded
    /// with band width 2.
    static OperatorSpec bilateral_shift() {
        OperatorSpec s(Kind::BilateralShift);
        s.band_width_ = 2;
        return s;
    }

    static OperatorSpec toeplitz_band(std::vector<int> offsets, std::vector<Complex> coeffs) {
        if (offsets.size() != coeffs.size() || offsets.empty())
            throw InvalidParameter("toeplitz_band: offsets/coefficients mismatch");
        OperatorSpec s(Kind::ToeplitzBand);
        int bw = 0;
        for (int o : offsets) bw = std::max(bw, std::abs(o));
        s.band_width_ = bw;
        s.toeplitz_offsets_ = std::move(offsets);
        s.toeplitz_coeffs_ = std::move(coeffs);
        return s;
    }

    static OperatorSpec dense(ComplexMatrix m) {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw InvalidParameter("dense: need a square matrix of dimension >= 1");
        OperatorSpec s(Kind::Dense);
        s.dim_ = static_cast<int>(m.rows());
        s.dense_ = std::move(m);
        return s;
    }

    static OperatorSpec jordan(Complex eigenvalue, int size) {
        if (size < 1) throw InvalidParameter("jordan: size must be >= 1");
        OperatorSpec s(Kind::Jordan);
        s.dim_ = size;
        s.jordan_eig_ = eigenvalue;
        s.band_width_ = 1;
        return s;
    }

    /// The convergence-failure operator: column m carries the weight 1+eps
    /// at row k_m + 1, and every row not of the form k_m + 1 carries the
    /// same weight at the far column r + boost_offset. With this placement
    /// the compressions P_m T*T P_m = (1+eps)^2 P_m,
    /// P_m T* P_{k_m} T P_m = (1+eps)^2 P_{m-1} and the row-side analogue
    /// hold exactly for every m <= boost_offset.
    static OperatorSpec counterexample(double eps, Schedule schedule = Schedule(),
                                       long boost_offset = 1000) {
        if (!(eps > 0)) throw InvalidParameter("counterexample: eps must be > 0");
        if (boost_offset < 8) throw InvalidParameter("counterexample: boost_offset too small");
        OperatorSpec s(Kind::Counterexample);
        s.ce_eps_ = eps;
        s.ce_schedule_ = schedule;
        s.ce_offset_ = boost_offset;
        return s;
    }

    // --- structure queries ---

    Kind kind() const { return kind_; }
    bool adjointed() const { return adjointed_; }
    bool is_finite() const { return dim_ > 0; }
    int dim() const { return dim_; }  // 0 for infinite kinds
    std::optional<int> band_width() const { return band_width_; }
    double counterexample_eps() const { return ce_eps_; }
    const Schedule& counterexample_schedule() const { return ce_schedule_; }
    long counterexample_offset() const { return ce_offset_; }

    OperatorSpec adjoint() const {
        OperatorSpec s = *this;
        s.adjointed_ = !s.adjointed_;
        return s;
    }

    /// x_ij = <T e_j, e_i>; deterministic, 1-based.
    Complex entry(long i, long j) const {
        if (i < 1 || j < 1) throw IndexError("entry: indices are 1-based");
        if (is_finite() && (i > dim_ || j > dim_))
            throw IndexError("entry: index exceeds operator dimension");
        return adjointed_ ? std::conj(base_entry(j, i)) : base_entry(i, j);
    }

    /// Largest row index of any nonzero entry in column j (at least j, so a
    /// diagonal shift stays inside). Absent when no finite bound is known.
    std::optional<long> column_reach(long j) const {
        if (adjointed_) return base_row_reach(j);
        return base_column_reach(j);
    }

    /// Largest column index of any nonzero entry in row i.
    std::optional<long> row_reach(long i) const {
        if (adjointed_) return base_column_reach(i);
        return base_row_reach(i);
    }

    std::string describe() const {
        std::string base;
        switch (kind_) {
            case Kind::Diagonal: base = "diagonal"; break;
            case Kind::UnilateralShift: base = "unilateral_shift"; break;
            case Kind::BilateralShift: base = "bilateral_shift"; break;
            case Kind::ToeplitzBand: base = "toeplitz_band"; break;
            case Kind::Dense: base = "dense(" + std::to_string(dim_) + ")"; break;
            case Kind::Jordan: base = "jordan(" + std::to_string(dim_) + ")"; break;
            case Kind::Counterexample: base = "counterexample"; break;
        }
        return adjointed_ ? base + "*" : base;
    }

    // --- serialization ---

    nlohmann::json to_json() const;
    static OperatorSpec from_json(const nlohmann::json& j);
    static OperatorSpec load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw InvalidParameter("cannot open operator spec: " + path);
        nlohmann::json j;
        try {
            f >> j;
        } catch (const std::exception& e) {
            throw InvalidParameter("operator spec parse error: " + std::string(e.what()));
        }
        return from_json(j);
    }

  private:
    explicit OperatorSpec(Kind k)
        : kind_(k) {}

    enum class Formula { List, InvJ, Constant };

    Complex diag_value(long j) const {
        switch (diag_formula_) {
            case Formula::InvJ: return Complex(1.0 / static_cast<double>(j), 0);
            case Formula::Constant: return diag_const_;
            case Formula::List:
                return j <= static_cast<long>(diag_values_.size()) ? diag_values_[j - 1]
                                                                   : Complex(0, 0);
        }
        return Complex(0, 0);
    }

    /// Position of integer index z in the interleaving 0,-1,1,-2,2,...
    static long bilateral_position(long z) {
        if (z == 0) return 1;
        if (z < 0) return -2 * z;
        return 2 * z + 1;
    }
    /// Inverse of bilateral_position.
    static long bilateral_integer(long pos) {
        if (pos == 1) return 0;
        if (pos % 2 == 0) return -(pos / 2);
        return (pos - 1) / 2;
    }

    Complex base_entry(long i, long j) const {
        switch (kind_) {
            case Kind::Diagonal:
                return i == j ? diag_value(j) : Complex(0, 0);
            case Kind::UnilateralShift:
                return i == j + 1 ? Complex(1, 0) : Complex(0, 0);
            case Kind::BilateralShift:
                return bilateral_integer(i) == bilateral_integer(j) + 1 ? Complex(1, 0)
                                                                        : Complex(0, 0);
            case Kind::ToeplitzBand: {
                const long o = i - j;
                for (size_t t = 0; t < toeplitz_offsets_.size(); ++t)
                    if (toeplitz_offsets_[t] == o) return toeplitz_coeffs_[t];
                return Complex(0, 0);
            }
            case Kind::Dense:
                return dense_(i - 1, j - 1);
            case Kind::Jordan:
                if (i == j) return jordan_eig_;
                if (j == i + 1) return Complex(1, 0);
                return Complex(0, 0);
            case Kind::Counterexample: {
                const double w = 1.0 + ce_eps_;
                if (i == ce_schedule_.k(j) + 1) return Complex(w, 0);
                if (j == i + ce_offset_ && !ce_schedule_.m_for_k_plus_1(i)) return Complex(w, 0);
                return Complex(0, 0);
            }
        }
        return Complex(0, 0);
    }

    std::optional<long> base_column_reach(long j) const {
        switch (kind_) {
            case Kind::Diagonal: return j;
            case Kind::UnilateralShift: return j + 1;
            case Kind::BilateralShift: return j + 2;
            case Kind::ToeplitzBand: return j + *band_width_;
            case Kind::Dense:
            case Kind::Jordan: return dim_;
            case Kind::Counterexample: return std::max(j, ce_schedule_.k(j) + 1);
        }
        return std::nullopt;
    }

    std::optional<long> base_row_reach(long i) const {
        switch (kind_) {
            case Kind::Diagonal: return i;
            case Kind::UnilateralShift: return i;  // row i has entry at column i-1 only
            case Kind::BilateralShift: return i + 2;
            case Kind::ToeplitzBand: return i + *band_width_;
            case Kind::Dense:
            case Kind::Jordan: return dim_;
            case Kind::Counterexample:
                // monotone envelope over rows <= i; rows of the form k_m+1
                // reach only backwards, all others reach i + offset
                return i + ce_offset_;
        }
        return std::nullopt;
    }

    Kind kind_;
    bool adjointed_ = false;
    int dim_ = 0;
    std::optional<int> band_width_;

    Formula diag_formula_ = Formula::List;
    std::vector<Complex> diag_values_;
    Complex diag_const_{0, 0};

    std::vector<int> toeplitz_offsets_;
    std::vector<Complex> toeplitz_coeffs_;

    ComplexMatrix dense_;
    Complex jordan_eig_{0, 0};

    double ce_eps_ = 0;
    Schedule ce_schedule_;
    long ce_offset_ = 1000;
};

namespace detail {
inline nlohmann::json complex_to_json(const Complex& c) {
    return nlohmann::json::array({c.real(), c.imag()});
}
inline Complex complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0);
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}
} // namespace detail

inline nlohmann::json OperatorSpec::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::Diagonal:
            j["kind"] = "diagonal";
            if (diag_formula_ == Formula::InvJ) {
                j["formula"] = "1/j";
            } else if (diag_formula_ == Formula::Constant) {
                j["formula"] = "constant:" + std::to_string(diag_const_.real());
            } else {
                nlohmann::json arr = nlohmann::json::array();
                for (const Complex& v : diag_values_) arr.push_back(detail::complex_to_json(v));
                j["values"] = arr;
            }
            break;
        case Kind::UnilateralShift: j["kind"] = "unilateral_shift"; break;
        case Kind::BilateralShift: j["kind"] = "bilateral_shift"; break;
        case Kind::ToeplitzBand: {
            j["kind"] = "toeplitz_band";
            j["offsets"] = toeplitz_offsets_;
            nlohmann::json arr = nlohmann::json::array();
            for (const Complex& v : toeplitz_coeffs_) arr.push_back(detail::complex_to_json(v));
            j["coefficients"] = arr;
            break;
        }
        case Kind::Dense: {
            j["kind"] = "dense";
            j["n"] = dim_;
            nlohmann::json arr = nlohmann::json::array();
            for (int r = 0; r < dim_; ++r)
                for (int c = 0; c < dim_; ++c) arr.push_back(detail::complex_to_json(dense_(r, c)));
            j["values"] = arr;
            break;
        }
        case Kind::Jordan:
            j["kind"] = "jordan";
            j["eigenvalue"] = detail::complex_to_json(jordan_eig_);
            j["size"] = dim_;
            break;
        case Kind::Counterexample:
            j["kind"] = "counterexample";
            j["epsilon"] = ce_eps_;
            j["schedule"] = {{"a", ce_schedule_.a}, {"b", ce_schedule_.b}};
            j["boost_offset"] = ce_offset_;
            break;
    }
    if (adjointed_) j["adjoint"] = true;
    return j;
}

inline OperatorSpec OperatorSpec::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    OperatorSpec s = [&]() -> OperatorSpec {
        if (kind == "diagonal") {
            if (j.contains("formula"))
                return diagonal_formula(j.at("formula").get<std::string>());
            std::vector<Complex> vals;
            for (const auto& e : j.at("values")) vals.push_back(detail::complex_from_json(e));
            return diagonal(std::move(vals));
        }
        if (kind == "unilateral_shift") return unilateral_shift();
        if (kind == "bilateral_shift") return bilateral_shift();
        if (kind == "toeplitz_band") {
            std::vector<int> offs = j.at("offsets").get<std::vector<int>>();
            std::vector<Complex> cs;
            for (const auto& e : j.at("coefficients")) cs.push_back(detail::complex_from_json(e));
            return toeplitz_band(std::move(offs), std::move(cs));
        }
        if (kind == "dense") {
            const int n = j.at("n").get<int>();
            const auto& arr = j.at("values");
            if (static_cast<int>(arr.size()) != n * n)
                throw InvalidParameter("dense: values length must be n*n");
            ComplexMatrix m(n, n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) m(r, c) = detail::complex_from_json(arr[r * n + c]);
            return dense(std::move(m));
        }
        if (kind == "jordan")
            return jordan(detail::complex_from_json(j.at("eigenvalue")), j.at("size").get<int>());
        if (kind == "counterexample") {
            Schedule sch;
            if (j.contains("schedule"))
                sch = Schedule(j.at("schedule").at("a").get<long>(),
                               j.at("schedule").at("b").get<long>());
            long off = j.value("boost_offset", 1000L);
            return counterexample(j.at("epsilon").get<double>(), sch, off);
        }
        throw InvalidParameter("unknown operator kind: " + kind);
    }();
    if (j.value("adjoint", false)) s = s.adjoint();
    return s;
}

/// Dense m x m compression of the operator (or of its adjoint).
/// For an orthogonal projection these agree: section(T*, m) = section(T, m)*.
struct Section {
    ComplexMatrix entries;
    int m = 0;
    std::string source_kind;
    bool adjointed = false;
};

inline Section section(const OperatorSpec& spec, int m, bool adjoint = false) {
    if (m < 1) throw InvalidParameter("section: m must be >= 1");
    if (spec.is_finite() && m > spec.dim())
        throw IndexError("section: m exceeds operator dimension");
    ComplexMatrix mat(m, m);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            mat(i - 1, j - 1) = adjoint ? std::conj(spec.entry(j, i)) : spec.entry(i, j);
    return Section{std::move(mat), m, spec.describe(), adjoint};
}

/// Rectangular compression: rows 1..rows, columns 1..cols.
inline ComplexMatrix rect_section(const OperatorSpec& spec, long rows, long cols) {
    if (rows < 1 || cols < 1) throw InvalidParameter("rect_section: sizes must be >= 1");
    if (spec.is_finite() && (rows > spec.dim() || cols > spec.dim()))
        throw IndexError("rect_section: size exceeds operator dimension");
    ComplexMatrix mat(rows, cols);
    for (long i = 1; i <= rows; ++i)
        for (long j = 1; j <= cols; ++j) mat(i - 1, j - 1) = spec.entry(i, j);
    return mat;
}

} // namespace speckit
