#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "speckit/errors.hpp"
#include "speckit/poly.hpp"

namespace speckit::hulls {

/// Reduced rational with positive denominator. Height = max(|num|, den).
struct Rational {
    long num = 0;
    long den = 1;

    Rational() = default;
    Rational(long n, long d) {
        if (d == 0) throw InvalidParameter("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const long g = std::gcd(std::abs(n), d);
        num = g ? n / g : 0;
        den = g ? d / g : 1;
    }
    long height() const { return std::max(std::abs(num), den); }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator<(const Rational& o) const {
        return num * o.den < o.num * den;  // heights stay small, no overflow concern
    }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

struct GaussianRational {
    Rational re, im;
    long height() const { return std::max(re.height(), im.height()); }
    Complex value() const { return Complex(re.value(), im.value()); }
    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
};

/// Monic polynomial with Gaussian-rational coefficients in exact form.
struct RationalMonic {
    std::vector<GaussianRational> coeffs;  // a_1 .. a_d

    int degree() const { return static_cast<int>(coeffs.size()); }
    long height() const {
        long h = degree();
        for (const auto& c : coeffs) h = std::max(h, c.height());
        return h;
    }
    MonicPoly to_poly() const {
        std::vector<Complex> c;
        for (const auto& g : coeffs) c.push_back(g.value());
        return MonicPoly(std::move(c));
    }
    bool operator==(const RationalMonic& o) const { return coeffs == o.coeffs; }
};

/// Fixed total bijection between the natural numbers and monic polynomials
/// with Gaussian-rational coefficients.
///
/// Ordering: by height h = max(degree, coefficient heights), h = 1, 2, ...;
/// within a height, by degree ascending, then lexicographically over the
/// coefficient tuple (a_1 most significant). Coefficient values are indexed
/// through prefix-stable lists: the rationals of height <= h extend the
/// rationals of height <= h-1 (new entries ordered by (|num|, num, den)),
/// and Gaussian values pair them with (re-index, im-index) order. Index 0
/// is the polynomial z.
class RationalEnumeration {
  public:
    using u128 = unsigned __int128;
    static constexpr std::uint64_t kNoPosition = ~0ULL;

    RationalMonic at(std::uint64_t index) {
        long h = 1;
        for (;;) {
            extend(h);
            std::uint64_t within = index;
            for (int d = 1; d <= h; ++d) {
                const u128 blk = block_count(h, d);
                if (static_cast<u128>(within) < blk)
                    return decode(h, d, within);
                within -= static_cast<std::uint64_t>(blk);
            }
            index = within;
            ++h;
            if (h > 64) throw InvalidParameter("enumeration index out of supported range");
        }
    }

    /// Exact inverse of `at`.
    std::uint64_t position(const RationalMonic& p) {
        const long h = p.height();
        extend(h);
        u128 before = 0;
        for (long hh = 1; hh < h; ++hh)
            for (int d = 1; d <= hh; ++d) before += block_count(hh, d);
        const int d = p.degree();
        for (int dd = 1; dd < d; ++dd) before += block_count(h, dd);
        before += rank_in_block(h, d, p);
        if (before > static_cast<u128>(~0ULL))
            throw InvalidParameter("position: index exceeds 64 bits");
        return static_cast<std::uint64_t>(before);
    }

    /// Recovers the exact rational form of a polynomial whose coefficients
    /// are floating-point images of rationals with height <= max_height.
    static std::optional<RationalMonic> rationalize(const MonicPoly& p, long max_height = 4096) {
        auto snap = [&](double v) -> std::optional<Rational> {
            for (long q = 1; q <= max_height; ++q) {
                const double scaled = v * static_cast<double>(q);
                const double r = std::round(scaled);
                if (std::abs(scaled - r) <= 1e-9 * std::max(1.0, std::abs(scaled)) &&
                    std::abs(r) <= static_cast<double>(max_height)) {
                    Rational cand(static_cast<long>(r), q);
                    if (std::abs(cand.value() - v) <= 1e-12 * std::max(1.0, std::abs(v)))
                        return cand;
                }
            }
            return std::nullopt;
        };
        RationalMonic out;
        for (const Complex& c : p.coeffs()) {
            auto re = snap(c.real()), im = snap(c.imag());
            if (!re || !im) return std::nullopt;
            out.coeffs.push_back({*re, *im});
        }
        return out;
    }

  private:
    // prefix-stable lists
    std::vector<Rational> q_list_;
    std::vector<long> q_count_;  // q_count_[h] = |{rationals of height <= h}|, q_count_[0] = 0
    std::vector<std::pair<long, long>> g_list_;  // (index into q_list_) pairs
    std::vector<long> g_count_;
    std::map<std::pair<long, long>, long> q_index_;   // (num, den) -> q index
    std::map<std::pair<long, long>, long> g_index_;   // (re idx, im idx) -> g index

    void extend(long h) {
        if (q_count_.empty()) {
            q_count_.push_back(0);
            g_count_.push_back(0);
        }
        while (static_cast<long>(q_count_.size()) <= h) {
            const long hh = static_cast<long>(q_count_.size());
            std::vector<Rational> fresh;
            for (long num = -hh; num <= hh; ++num)
                for (long den = 1; den <= hh; ++den) {
                    if (std::gcd(std::abs(num), den) != 1) continue;
                    Rational r;
                    r.num = num;
                    r.den = den;
                    if (r.height() == hh) fresh.push_back(r);
                }
            std::sort(fresh.begin(), fresh.end(), [](const Rational& a, const Rational& b) {
                const long am = std::abs(a.num), bm = std::abs(b.num);
                if (am != bm) return am < bm;
                if (a.num != b.num) return a.num < b.num;
                return a.den < b.den;
            });
            const long old_q = static_cast<long>(q_list_.size());
            for (const Rational& r : fresh) {
                q_index_[{r.num, r.den}] = static_cast<long>(q_list_.size());
                q_list_.push_back(r);
            }
            q_count_.push_back(static_cast<long>(q_list_.size()));

            // new Gaussian pairs: at least one part has height hh
            std::vector<std::pair<long, long>> gf;
            const long total_q = static_cast<long>(q_list_.size());
            for (long ix = 0; ix < total_q; ++ix)
                for (long iy = 0; iy < total_q; ++iy)
                    if (ix >= old_q || iy >= old_q) gf.emplace_back(ix, iy);
            std::sort(gf.begin(), gf.end());
            for (const auto& pr : gf) {
                g_index_[pr] = static_cast<long>(g_list_.size());
                g_list_.push_back(pr);
            }
            g_count_.push_back(static_cast<long>(g_list_.size()));
        }
    }

    static u128 sat_pow(u128 base, int e) {
        const u128 cap = static_cast<u128>(-1) >> 1;
        u128 r = 1;
        for (int i = 0; i < e; ++i) {
            if (base != 0 && r > cap / base) return cap;
            r *= base;
        }
        return r;
    }

    /// Number of polynomials of exact height h and degree d.
    u128 block_count(long h, int d) {
        const u128 g = g_count_[h];
        const u128 gold = g_count_[h - 1];
        if (d == h) return sat_pow(g, d);
        const u128 all = sat_pow(g, d), old = sat_pow(gold, d);
        return all > old ? all - old : 0;
    }

    /// The rank-th tuple (lexicographic over digit indices into the height-h
    /// Gaussian list) among tuples of degree d containing, when d < h, at
    /// least one digit of exact height h.
    RationalMonic decode(long h, int d, std::uint64_t rank) {
        const long g = g_count_[h];
        const long gold = g_count_[h - 1];
        const bool must_contain_new = d < h;
        RationalMonic out;
        u128 r = rank;
        bool has_new = !must_contain_new;
        for (int pos = 0; pos < d; ++pos) {
            const int rest = d - 1 - pos;
            for (long v = 0; v < g; ++v) {
                const bool hn = has_new || v >= gold;
                const u128 cnt = hn ? sat_pow(g, rest)
                                    : sat_pow(g, rest) - sat_pow(gold, rest);
                if (r < cnt) {
                    const auto& pr = g_list_[v];
                    out.coeffs.push_back({q_list_[pr.first], q_list_[pr.second]});
                    has_new = hn;
                    break;
                }
                r -= cnt;
            }
        }
        if (static_cast<int>(out.coeffs.size()) != d)
            throw InvalidParameter("enumeration decode: rank out of block");
        return out;
    }

    u128 rank_in_block(long h, int d, const RationalMonic& p) {
        const long g = g_count_[h];
        const long gold = g_count_[h - 1];
        const bool must_contain_new = d < h;
        bool has_new = !must_contain_new;
        u128 rank = 0;
        for (int pos = 0; pos < d; ++pos) {
            const auto& c = p.coeffs[pos];
            const auto qi_re = q_index_.find({c.re.num, c.re.den});
            const auto qi_im = q_index_.find({c.im.num, c.im.den});
            if (qi_re == q_index_.end() || qi_im == q_index_.end())
                throw InvalidParameter("position: coefficient outside extended tables");
            const auto gi = g_index_.find({qi_re->second, qi_im->second});
            if (gi == g_index_.end())
                throw InvalidParameter("position: pair outside extended tables");
            const long digit = gi->second;
            const int rest = d - 1 - pos;
            for (long v = 0; v < digit; ++v) {
                const bool hn = has_new || v >= gold;
                rank += hn ? sat_pow(g, rest) : sat_pow(g, rest) - sat_pow(gold, rest);
            }
            has_new = has_new || digit >= gold;
        }
        return rank;
    }
};

/// The index-th monic polynomial with Gaussian-rational coefficients in the
/// library's fixed enumeration. Index 0 is z.
inline MonicPoly enumerate_rational_monic(std::uint64_t index) {
    thread_local RationalEnumeration table;
    return table.at(index).to_poly();
}

/// Inverse of the enumeration on exact rational form.
inline std::uint64_t enumeration_position(const RationalMonic& p) {
    thread_local RationalEnumeration table;
    return table.position(p);
}

inline std::uint64_t enumeration_position(const MonicPoly& p) {
    auto r = RationalEnumeration::rationalize(p);
    if (!r) throw InvalidParameter("enumeration_position: coefficients are not small rationals");
    return enumeration_position(*r);
}

} // namespace speckit::hulls
