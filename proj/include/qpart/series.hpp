#pragma once

// Exact truncated Laurent series in q with big-integer coefficients, plus the
// auxiliary-variable extension used for bivariate and trivariate identities.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qpart/error.hpp"

namespace qpart {

using BigInt = boost::multiprecision::cpp_int;

/// Truncation order of a series that is known exactly (a Laurent polynomial).
inline constexpr int kExact = std::numeric_limits<int>::max();

namespace detail {

inline int trunc_add(int a, int b)
{
    if (a == kExact || b == kExact) return kExact;
    const long long s = static_cast<long long>(a) + b;
    if (s >= kExact || s <= std::numeric_limits<int>::min())
        throw Error("q-exponent overflow");
    return static_cast<int>(s);
}

inline std::string coeff_prefix(const BigInt& c, bool first, bool unit_term)
{
    std::string out;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
        if (c < 0) out += "-";
    } else {
        out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || unit_term) out += mag.str();
    return out;
}

} // namespace detail

/// Integer binomial coefficient; zero outside 0 <= k <= n.
inline BigInt binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

// ---------------------------------------------------------------------------
// QSeries
// ---------------------------------------------------------------------------

/// Truncated Laurent series in q.
///
/// Terms are kept sorted by exponent with no zero coefficients stored, and
/// every stored exponent is below `trunc()`. Coefficients at exponents at or
/// above `trunc()` are unknown; `trunc() == kExact` marks an exact polynomial.
class QSeries {
public:
    using Term = std::pair<int, BigInt>;

    /// Exact zero.
    QSeries() = default;

    static QSeries zero(int trunc = kExact)
    {
        QSeries s;
        s.trunc_ = trunc;
        return s;
    }

    static QSeries constant(const BigInt& c, int trunc = kExact) { return monomial(c, 0, trunc); }

    static QSeries monomial(const BigInt& c, int exp, int trunc = kExact)
    {
        QSeries s = zero(trunc);
        if (c != 0 && exp < trunc) s.terms_.emplace_back(exp, c);
        return s;
    }

    static QSeries from_map(const std::map<int, BigInt>& coeffs, int trunc = kExact)
    {
        QSeries s = zero(trunc);
        for (const auto& [e, c] : coeffs)
            if (c != 0 && e < trunc) s.terms_.emplace_back(e, c);
        return s;
    }

    /// Builds from `coeffs[i]` at exponent `offset + i`.
    static QSeries from_dense(std::vector<BigInt> coeffs, int offset, int trunc = kExact)
    {
        QSeries s = zero(trunc);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const int e = offset + static_cast<int>(i);
            if (e >= trunc) break;
            if (coeffs[i] != 0) s.terms_.emplace_back(e, std::move(coeffs[i]));
        }
        return s;
    }

    const std::vector<Term>& terms() const noexcept { return terms_; }
    int trunc() const noexcept { return trunc_; }
    bool is_exact() const noexcept { return trunc_ == kExact; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Lowest exponent that may carry a nonzero coefficient.
    int valuation() const noexcept { return terms_.empty() ? trunc_ : terms_.front().first; }

    std::optional<int> max_exponent() const
    {
        if (terms_.empty()) return std::nullopt;
        return terms_.back().first;
    }

    BigInt coeff(int exp) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                                   [](const Term& t, int e) { return t.first < e; });
        if (it != terms_.end() && it->first == exp) return it->second;
        return 0;
    }

    std::map<int, BigInt> to_map() const { return {terms_.begin(), terms_.end()}; }

    QSeries truncated(int t) const
    {
        QSeries s = *this;
        if (t >= s.trunc_) return s;
        s.trunc_ = t;
        auto it = std::lower_bound(s.terms_.begin(), s.terms_.end(), t,
                                   [](const Term& x, int e) { return x.first < e; });
        s.terms_.erase(it, s.terms_.end());
        return s;
    }

    /// Multiplication by q^shift.
    QSeries shifted(int shift) const
    {
        QSeries s = *this;
        for (auto& t : s.terms_) t.first = detail::trunc_add(t.first, shift);
        s.trunc_ = detail::trunc_add(s.trunc_, shift);
        return s;
    }

    /// Sum of coefficients, i.e. the value at q = 1. Requires an exact series.
    BigInt at_one() const
    {
        if (!is_exact()) throw Error("cannot evaluate a truncated series at q = 1");
        BigInt sum = 0;
        for (const auto& t : terms_) sum += t.second;
        return sum;
    }

    QSeries operator-() const
    {
        QSeries s = *this;
        for (auto& t : s.terms_) t.second = -t.second;
        return s;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) { return combine(a, b, false); }
    friend QSeries operator-(const QSeries& a, const QSeries& b) { return combine(a, b, true); }

    friend QSeries operator*(const QSeries& a, const QSeries& b) { return multiply(a, b, kExact); }

    friend QSeries operator*(const BigInt& c, const QSeries& a)
    {
        if (c == 0) return zero(a.trunc_);
        QSeries s = a;
        for (auto& t : s.terms_) t.second *= c;
        return s;
    }

    QSeries& operator+=(const QSeries& b) { return *this = *this + b; }
    QSeries& operator-=(const QSeries& b) { return *this = *this - b; }
    QSeries& operator*=(const QSeries& b) { return *this = *this * b; }

    /// Structural equality: same terms and same truncation order.
    friend bool operator==(const QSeries& a, const QSeries& b) = default;

    /// Product with its result truncated at `cap` (or earlier, if the operands force it).
    static QSeries multiply(const QSeries& a, const QSeries& b, int cap)
    {
        const int t = std::min({detail::trunc_add(a.trunc_, b.valuation()),
                                detail::trunc_add(b.trunc_, a.valuation()), cap});
        QSeries out = zero(t);
        if (a.terms_.empty() || b.terms_.empty()) return out;

        const long long lo = static_cast<long long>(a.terms_.front().first) + b.terms_.front().first;
        long long hi = static_cast<long long>(a.terms_.back().first) + b.terms_.back().first + 1;
        if (t != kExact) hi = std::min<long long>(hi, t);
        if (hi <= lo) return out;
        const long long width = hi - lo;
        const long long work = static_cast<long long>(a.terms_.size()) * static_cast<long long>(b.terms_.size());

        if (width <= 4 * work + 64) {
            std::vector<BigInt> dense(static_cast<std::size_t>(width));
            for (const auto& [ea, ca] : a.terms_) {
                for (const auto& [eb, cb] : b.terms_) {
                    const long long e = static_cast<long long>(ea) + eb;
                    if (e >= hi) break;
                    dense[static_cast<std::size_t>(e - lo)] += ca * cb;
                }
            }
            return from_dense(std::move(dense), static_cast<int>(lo), t);
        }
        std::map<int, BigInt> acc;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                const long long e = static_cast<long long>(ea) + eb;
                if (e >= hi) break;
                acc[static_cast<int>(e)] += ca * cb;
            }
        }
        return from_map(acc, t);
    }

    friend std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.str(); }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            os << detail::coeff_prefix(c, first, e == 0);
            if (e != 0) {
                const BigInt mag = c < 0 ? BigInt(-c) : c;
                if (mag != 1) os << "*";
                os << "q";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        if (!is_exact()) os << (first ? "" : " + ") << "O(q^" << trunc_ << ")";
        else if (first) os << "0";
        return os.str();
    }

private:
    static QSeries combine(const QSeries& a, const QSeries& b, bool subtract)
    {
        QSeries out = zero(std::min(a.trunc_, b.trunc_));
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        auto push = [&](int e, BigInt c) {
            if (e < out.trunc_ && c != 0) out.terms_.emplace_back(e, std::move(c));
        };
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
                push(ia->first, ia->second);
                ++ia;
            } else if (ia == a.terms_.end() || ib->first < ia->first) {
                push(ib->first, subtract ? BigInt(-ib->second) : ib->second);
                ++ib;
            } else {
                push(ia->first, subtract ? BigInt(ia->second - ib->second) : BigInt(ia->second + ib->second));
                ++ia;
                ++ib;
            }
        }
        return out;
    }

    std::vector<Term> terms_;
    int trunc_ = kExact;
};

/// Series `b` with a*b = 1 below the truncation order min(a.trunc(), trunc).
inline QSeries invert_unit(const QSeries& a, int trunc = kExact)
{
    const int t = std::min(a.trunc(), trunc);
    if (a.coeff(0) != 1) throw NonUnitConstantTerm("constant term is " + a.coeff(0).str() + ", expected 1");
    if (a.valuation() < 0) throw NonUnitConstantTerm("series has negative q-exponents");
    if (t == kExact) throw Error("inverse of a non-monomial needs a finite truncation order");
    if (t <= 0) return QSeries::zero(t);

    std::vector<BigInt> b(static_cast<std::size_t>(t));
    b[0] = 1;
    const auto& terms = a.terms();
    for (int n = 1; n < t; ++n) {
        BigInt acc = 0;
        for (const auto& [k, ak] : terms) {
            if (k == 0) continue;
            if (k > n) break;
            acc += ak * b[static_cast<std::size_t>(n - k)];
        }
        b[static_cast<std::size_t>(n)] = -acc;
    }
    return QSeries::from_dense(std::move(b), 0, t);
}

/// f / (1 - c q^e) for e >= 1, truncated at min(f.trunc(), trunc).
inline QSeries divide_one_minus(const QSeries& f, const BigInt& c, int e, int trunc = kExact)
{
    if (e < 1) throw NonConvergent("1 - c*q^e with e < 1 is not invertible as a power series");
    const int t = std::min(f.trunc(), trunc);
    if (f.is_zero()) return QSeries::zero(t);
    if (t == kExact) throw Error("division needs a finite truncation order");
    const int lo = f.valuation();
    if (lo >= t) return QSeries::zero(t);
    std::vector<BigInt> g(static_cast<std::size_t>(t - lo));
    for (const auto& [k, ck] : f.terms()) g[static_cast<std::size_t>(k - lo)] = ck;
    for (std::size_t k = static_cast<std::size_t>(e); k < g.size(); ++k)
        if (g[k - e] != 0) g[k] += c * g[k - e];
    return QSeries::from_dense(std::move(g), lo, t);
}

/// Exact quotient of two exact Laurent polynomials; throws DivisionInexact on a remainder.
inline QSeries exact_divide(const QSeries& num, const QSeries& den)
{
    if (!num.is_exact() || !den.is_exact()) throw Error("exact_divide requires exact operands");
    if (den.is_zero()) throw DivisionInexact("division by zero polynomial");
    if (num.is_zero()) return QSeries{};
    const int dlo = den.valuation();
    const int dhi = *den.max_exponent();
    const int nlo = num.valuation();
    const int nhi = *num.max_exponent();
    if (nhi - nlo < dhi - dlo) throw DivisionInexact("numerator degree span smaller than denominator");

    std::vector<BigInt> rem(static_cast<std::size_t>(nhi - nlo + 1));
    for (const auto& [e, c] : num.terms()) rem[static_cast<std::size_t>(e - nlo)] = c;
    std::vector<BigInt> dd(static_cast<std::size_t>(dhi - dlo + 1));
    for (const auto& [e, c] : den.terms()) dd[static_cast<std::size_t>(e - dlo)] = c;

    const std::size_t qlen = rem.size() - dd.size() + 1;
    std::vector<BigInt> quot(qlen);
    const BigInt& lead = dd[0];
    for (std::size_t i = 0; i < qlen; ++i) {
        if (rem[i] == 0) continue;
        BigInt r;
        BigInt qc;
        boost::multiprecision::divide_qr(rem[i], lead, qc, r);
        if (r != 0) throw DivisionInexact("non-integral quotient coefficient");
        for (std::size_t j = 0; j < dd.size(); ++j)
            if (dd[j] != 0) rem[i + j] -= qc * dd[j];
        quot[i] = std::move(qc);
    }
    for (const auto& r : rem)
        if (r != 0) throw DivisionInexact("nonzero remainder");
    return QSeries::from_dense(std::move(quot), nlo - dlo);
}

/// Gaussian binomial coefficient [m choose k]_q as an exact polynomial; zero when k < 0 or k > m.
inline QSeries qbinom(long m, long k)
{
    if (m < 0 || k < 0 || k > m) return QSeries{};
    k = std::min(k, m - k);
    const long j = m - k;
    // Pascal rule [a+b, b] = [a+b-1, b-1] + q^b [a+b-1, b] over the a x b grid.
    // row[b] holds [a + b, b] as a dense coefficient vector.
    std::vector<std::vector<BigInt>> row(static_cast<std::size_t>(k + 1), std::vector<BigInt>{1});
    for (long a = 1; a <= j; ++a) {
        for (long b = 1; b <= k; ++b) {
            const auto& left = row[static_cast<std::size_t>(b - 1)]; // [a + b - 1, b - 1]
            const auto& up = row[static_cast<std::size_t>(b)];       // [a - 1 + b, b]
            std::vector<BigInt> next(std::max(left.size(), up.size() + static_cast<std::size_t>(b)));
            for (std::size_t i = 0; i < left.size(); ++i) next[i] += left[i];
            for (std::size_t i = 0; i < up.size(); ++i) next[i + static_cast<std::size_t>(b)] += up[i];
            row[static_cast<std::size_t>(b)] = std::move(next);
        }
    }
    return QSeries::from_dense(std::move(row[static_cast<std::size_t>(k)]), 0);
}

// ---------------------------------------------------------------------------
// Auxiliary variables and MultiSeries
// ---------------------------------------------------------------------------

enum class Aux : std::size_t { z = 0, x = 1, y = 2 };
inline constexpr std::array<char, 3> kAuxNames{'z', 'x', 'y'};

inline std::optional<Aux> aux_from_name(std::string_view name)
{
    if (name == "z") return Aux::z;
    if (name == "x") return Aux::x;
    if (name == "y") return Aux::y;
    return std::nullopt;
}

/// Monomial z^a x^b y^c with signed exponents.
struct Mono {
    std::array<int, 3> exps{};

    static Mono of(Aux v, int e = 1)
    {
        Mono m;
        m.exps[static_cast<std::size_t>(v)] = e;
        return m;
    }

    int operator[](Aux v) const { return exps[static_cast<std::size_t>(v)]; }
    int& operator[](Aux v) { return exps[static_cast<std::size_t>(v)]; }

    bool is_one() const { return exps == std::array<int, 3>{}; }
    bool has_negative() const
    {
        return std::any_of(exps.begin(), exps.end(), [](int e) { return e < 0; });
    }

    friend Mono operator*(Mono a, const Mono& b)
    {
        for (std::size_t i = 0; i < 3; ++i) a.exps[i] += b.exps[i];
        return a;
    }
    Mono pow(int p) const
    {
        Mono m = *this;
        for (auto& e : m.exps) e *= p;
        return m;
    }

    friend auto operator<=>(const Mono&, const Mono&) = default;

    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < 3; ++i) {
            if (exps[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += kAuxNames[i];
            if (exps[i] != 1) out += "^" + std::to_string(exps[i]);
        }
        return out.empty() ? "1" : out;
    }
};

/// c * m * q^e, the argument shape of the Pochhammer builders.
struct QMonomial {
    BigInt coeff{1};
    Mono mono{};
    int qexp = 0;

    QMonomial times(const QMonomial& o) const { return {coeff * o.coeff, mono * o.mono, qexp + o.qexp}; }
    QMonomial shifted(int e) const { return {coeff, mono, qexp + e}; }
    QMonomial negated() const { return {-coeff, mono, qexp}; }
};

/// Series in q whose coefficients are finite combinations of aux monomials,
/// stored as one QSeries per monomial under a single global truncation order.
class MultiSeries {
public:
    /// Exact zero.
    MultiSeries() = default;

    MultiSeries(const QSeries& s) : trunc_(s.trunc()) // NOLINT: implicit lift of a q-series
    {
        if (!s.is_zero()) entries_.emplace(Mono{}, s);
    }

    static MultiSeries zero(int trunc = kExact)
    {
        MultiSeries s;
        s.trunc_ = trunc;
        return s;
    }

    static MultiSeries term(const QMonomial& m, int trunc = kExact)
    {
        MultiSeries s = zero(trunc);
        if (m.coeff != 0 && m.qexp < trunc) s.entries_.emplace(m.mono, QSeries::monomial(m.coeff, m.qexp, trunc));
        return s;
    }

    static MultiSeries constant(const BigInt& c, int trunc = kExact) { return term({c, {}, 0}, trunc); }
    static MultiSeries q(int e = 1) { return term({1, {}, e}); }
    static MultiSeries variable(Aux v) { return term({1, Mono::of(v), 0}); }

    const std::map<Mono, QSeries>& entries() const noexcept { return entries_; }
    int trunc() const noexcept { return trunc_; }
    bool is_exact() const noexcept { return trunc_ == kExact; }
    bool is_zero() const noexcept { return entries_.empty(); }

    int valuation() const
    {
        int v = trunc_;
        for (const auto& [m, s] : entries_) v = std::min(v, s.valuation());
        return v;
    }

    BigInt coeff(const Mono& m, int exp) const
    {
        auto it = entries_.find(m);
        return it == entries_.end() ? BigInt(0) : it->second.coeff(exp);
    }

    /// The q-series multiplying `m`.
    QSeries part(const Mono& m) const
    {
        auto it = entries_.find(m);
        return it == entries_.end() ? QSeries::zero(trunc_) : it->second;
    }

    bool has_negative_aux() const
    {
        return std::any_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.first.has_negative(); });
    }

    /// Number of stored (monomial, exponent) coefficients.
    std::size_t size() const
    {
        std::size_t n = 0;
        for (const auto& [m, s] : entries_) n += s.terms().size();
        return n;
    }

    MultiSeries truncated(int t) const
    {
        if (t >= trunc_) return *this;
        MultiSeries out = zero(t);
        for (const auto& [m, s] : entries_) out.put(m, s.truncated(t));
        return out;
    }

    MultiSeries shifted_q(int e) const
    {
        MultiSeries out = zero(detail::trunc_add(trunc_, e));
        for (const auto& [m, s] : entries_) out.entries_.emplace(m, s.shifted(e));
        return out;
    }

    /// Multiplication by c * m * q^e.
    MultiSeries times(const QMonomial& t) const
    {
        if (t.coeff == 0) return zero(detail::trunc_add(trunc_, t.qexp));
        MultiSeries out = zero(detail::trunc_add(trunc_, t.qexp));
        for (const auto& [m, s] : entries_) out.entries_.emplace(m * t.mono, (t.coeff * s).shifted(t.qexp));
        return out;
    }

    /// Replaces variable `v` by c * `replacement`; c must be +-1 if `v` occurs with negative exponent.
    MultiSeries substitute(Aux v, const BigInt& c, const Mono& replacement) const
    {
        MultiSeries out = zero(trunc_);
        for (const auto& [m, s] : entries_) {
            const int a = m[v];
            BigInt factor = 1;
            if (a < 0 && c != 1 && c != -1) throw Error("substitution needs a unit coefficient for negative powers");
            for (int i = 0; i < std::abs(a); ++i) factor *= c;
            Mono base = m;
            base[v] = 0;
            out.accumulate(base * replacement.pow(a), factor * s);
        }
        return out;
    }

    MultiSeries operator-() const
    {
        MultiSeries out = *this;
        for (auto& [m, s] : out.entries_) s = -s;
        return out;
    }

    friend MultiSeries operator+(const MultiSeries& a, const MultiSeries& b) { return combine(a, b, false); }
    friend MultiSeries operator-(const MultiSeries& a, const MultiSeries& b) { return combine(a, b, true); }
    friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) { return multiply(a, b, kExact); }

    MultiSeries& operator+=(const MultiSeries& b) { return *this = *this + b; }
    MultiSeries& operator-=(const MultiSeries& b) { return *this = *this - b; }
    MultiSeries& operator*=(const MultiSeries& b) { return *this = *this * b; }

    friend bool operator==(const MultiSeries& a, const MultiSeries& b) = default;

    static MultiSeries multiply(const MultiSeries& a, const MultiSeries& b, int cap)
    {
        const int t = std::min({detail::trunc_add(a.trunc_, b.valuation()),
                                detail::trunc_add(b.trunc_, a.valuation()), cap});
        MultiSeries out = zero(t);
        for (const auto& [ma, sa] : a.entries_)
            for (const auto& [mb, sb] : b.entries_) out.accumulate(ma * mb, QSeries::multiply(sa, sb, t));
        return out;
    }

    /// Coefficients grouped by q-exponent: slices[k - lo] maps monomial -> coefficient of q^k.
    struct Slices {
        int lo = 0;
        int trunc = kExact;
        std::vector<std::map<Mono, BigInt>> at;
    };

    Slices slices(int t) const
    {
        Slices out;
        out.trunc = std::min(t, trunc_);
        out.lo = std::min(valuation(), out.trunc);
        if (out.trunc == kExact) throw Error("slicing needs a finite truncation order");
        out.at.resize(static_cast<std::size_t>(out.trunc - out.lo));
        for (const auto& [m, s] : entries_)
            for (const auto& [e, c] : s.terms())
                if (e < out.trunc) out.at[static_cast<std::size_t>(e - out.lo)].emplace(m, c);
        return out;
    }

    static MultiSeries from_slices(const Slices& sl)
    {
        std::map<Mono, std::vector<std::pair<int, BigInt>>> cols;
        for (std::size_t i = 0; i < sl.at.size(); ++i)
            for (const auto& [m, c] : sl.at[i])
                if (c != 0) cols[m].emplace_back(sl.lo + static_cast<int>(i), c);
        MultiSeries out = zero(sl.trunc);
        for (auto& [m, terms] : cols) {
            std::map<int, BigInt> mp(terms.begin(), terms.end());
            out.put(m, QSeries::from_map(mp, sl.trunc));
        }
        return out;
    }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, s] : entries_) {
            if (!first) os << " + ";
            first = false;
            const QSeries body = QSeries::from_map(s.to_map());
            if (m.is_one())
                os << "(" << body.str() << ")";
            else
                os << m.str() << "*(" << body.str() << ")";
        }
        if (!is_exact()) os << (first ? "" : " + ") << "O(q^" << trunc_ << ")";
        else if (first) os << "0";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiSeries& s) { return os << s.str(); }

private:
    static MultiSeries combine(const MultiSeries& a, const MultiSeries& b, bool subtract)
    {
        const int t = std::min(a.trunc_, b.trunc_);
        MultiSeries out = zero(t);
        for (const auto& [m, s] : a.entries_) out.accumulate(m, s.truncated(t));
        for (const auto& [m, s] : b.entries_) out.accumulate(m, subtract ? -s.truncated(t) : s.truncated(t));
        return out;
    }

    void put(const Mono& m, QSeries s)
    {
        if (!s.is_zero()) entries_.insert_or_assign(m, std::move(s));
    }

    // Adds `s` (already carrying trunc >= trunc_) at `m`, keeping canonical form.
    void accumulate(const Mono& m, const QSeries& s)
    {
        if (s.is_zero()) return;
        auto it = entries_.find(m);
        if (it == entries_.end()) {
            entries_.emplace(m, s.truncated(trunc_));
            return;
        }
        it->second = (it->second + s).truncated(trunc_);
        if (it->second.is_zero()) entries_.erase(it);
    }

    std::map<Mono, QSeries> entries_;
    int trunc_ = kExact;
};

inline bool aux_free(const MultiSeries& s)
{
    return s.entries().empty() || (s.entries().size() == 1 && s.entries().begin()->first.is_one());
}

/// Series `b` with a*b = 1 below min(a.trunc(), trunc).
inline MultiSeries invert_unit(const MultiSeries& a, int trunc = kExact)
{
    if (aux_free(a)) return invert_unit(a.part(Mono{}), trunc);
    const int t = std::min(a.trunc(), trunc);
    if (a.coeff(Mono{}, 0) != 1)
        throw NonUnitConstantTerm("constant term is " + a.coeff(Mono{}, 0).str() + ", expected 1");
    const MultiSeries rest = a - MultiSeries::constant(1);
    if (rest.valuation() < 1)
        throw NonConvergent("non-constant part has q-degree <= 0; the inverse does not converge in q");
    if (t == kExact) throw Error("inverse of a non-monomial needs a finite truncation order");
    if (t <= 0) return MultiSeries::zero(t);

    const auto r = rest.slices(t);
    MultiSeries::Slices b;
    b.lo = 0;
    b.trunc = t;
    b.at.resize(static_cast<std::size_t>(t));
    b.at[0].emplace(Mono{}, 1);
    for (int e = 1; e < t; ++e) {
        auto& cur = b.at[static_cast<std::size_t>(e)];
        for (int j = std::max(1, r.lo); j <= e; ++j) {
            const auto& rj = r.at[static_cast<std::size_t>(j - r.lo)];
            if (rj.empty()) continue;
            for (const auto& [mr, cr] : rj)
                for (const auto& [mb, cb] : b.at[static_cast<std::size_t>(e - j)]) cur[mr * mb] -= cr * cb;
        }
        for (auto it = cur.begin(); it != cur.end();) it = it->second == 0 ? cur.erase(it) : std::next(it);
    }
    return MultiSeries::from_slices(b);
}

/// f / (1 - w) for w = c*m*q^e with e >= 1, truncated at min(f.trunc(), trunc).
inline MultiSeries divide_one_minus(const MultiSeries& f, const QMonomial& w, int trunc = kExact)
{
    if (w.qexp < 1) throw NonConvergent("1 - w with q-degree of w below 1 is not invertible in q");
    if (w.mono.is_one() && aux_free(f)) return divide_one_minus(f.part(Mono{}), w.coeff, w.qexp, trunc);
    const int t = std::min(f.trunc(), trunc);
    if (f.is_zero()) return MultiSeries::zero(t);
    if (t == kExact) throw Error("division needs a finite truncation order");
    // g = f + w g, solved by increasing q-exponent.
    auto g = f.slices(t);
    for (std::size_t k = static_cast<std::size_t>(w.qexp); k < g.at.size(); ++k) {
        const auto& src = g.at[k - static_cast<std::size_t>(w.qexp)];
        if (src.empty()) continue;
        std::vector<std::pair<Mono, BigInt>> add;
        add.reserve(src.size());
        for (const auto& [m, c] : src) add.emplace_back(m * w.mono, w.coeff * c);
        auto& dst = g.at[k];
        for (auto& [m, c] : add) dst[m] += c;
    }
    return MultiSeries::from_slices(g);
}

/// (a; q^step)_n = prod_{k<n} (1 - a q^{step k}), an exact polynomial unless `cap` truncates it.
inline MultiSeries poch_finite(const QMonomial& a, int step, long n, int cap = kExact)
{
    if (n < 0) throw Error("poch_finite: negative count");
    if (step < 1) throw Error("poch_finite: step must be positive");
    MultiSeries r = MultiSeries::constant(1, cap);
    for (long k = 0; k < n; ++k) {
        const QMonomial f = a.shifted(static_cast<int>(step * k));
        if (cap != kExact && f.qexp >= cap && r.valuation() >= 0) break;
        r = (r - r.times(f)).truncated(cap);
    }
    return r;
}

/// (a; q^step)_n for an arbitrary series a.
inline MultiSeries poch_finite(const MultiSeries& a, int step, long n, int cap = kExact)
{
    if (n < 0) throw Error("poch_finite: negative count");
    if (step < 1) throw Error("poch_finite: step must be positive");
    MultiSeries r = MultiSeries::constant(1, cap);
    for (long k = 0; k < n; ++k) r = r - MultiSeries::multiply(r, a.shifted_q(static_cast<int>(step * k)), cap);
    return r.truncated(cap);
}

/// (a; q^step)_inf truncated at `trunc`; requires a to carry positive q-degree.
inline MultiSeries poch_infinite(const QMonomial& a, int step, int trunc)
{
    if (a.qexp < 1) throw NonConvergent("infinite product needs a base of positive q-degree");
    if (step < 1) throw Error("poch_infinite: step must be positive");
    if (trunc == kExact) throw Error("infinite product needs a finite truncation order");
    MultiSeries r = MultiSeries::constant(1, trunc);
    for (long k = 0; a.qexp + step * k < trunc; ++k) r = r - r.times(a.shifted(static_cast<int>(step * k)));
    return r;
}

inline MultiSeries poch_infinite(const MultiSeries& a, int step, int trunc)
{
    if (step < 1) throw Error("poch_infinite: step must be positive");
    const int t = std::min(trunc, a.trunc());
    if (t == kExact) throw Error("infinite product needs a finite truncation order");
    if (a.is_zero()) return MultiSeries::constant(1, t);
    const int v = a.valuation();
    if (v < 1) throw NonConvergent("infinite product needs a base of positive q-degree");
    MultiSeries r = MultiSeries::constant(1, t);
    for (long k = 0; v + step * k < t; ++k)
        r = r - MultiSeries::multiply(r, a.shifted_q(static_cast<int>(step * k)), t);
    return r.truncated(t);
}

/// f / (a; q^step)_n.
inline MultiSeries divide_poch(MultiSeries f, const QMonomial& a, int step, long n, int trunc)
{
    for (long k = 0; k < n; ++k) f = divide_one_minus(f, a.shifted(static_cast<int>(step * k)), trunc);
    return f.truncated(trunc);
}

/// f / (a; q^step)_inf.
inline MultiSeries divide_poch_infinite(MultiSeries f, const QMonomial& a, int step, int trunc)
{
    if (a.qexp < 1) throw NonConvergent("infinite product needs a base of positive q-degree");
    const int t = std::min(f.trunc(), trunc);
    if (t == kExact) throw Error("infinite product needs a finite truncation order");
    const int v = f.valuation();
    for (long k = 0; v + a.qexp + step * k < t; ++k) f = divide_one_minus(f, a.shifted(static_cast<int>(step * k)), t);
    return f.truncated(t);
}

/// Aux monomial and q-exponent of the first coefficient where two series differ below their common order.
struct Mismatch {
    Mono mono;
    int exponent = 0;
    BigInt lhs;
    BigInt rhs;
};

/// Ordered by q-exponent, then monomial.
inline std::optional<Mismatch> first_mismatch(const MultiSeries& a, const MultiSeries& b)
{
    const int t = std::min(a.trunc(), b.trunc());
    const MultiSeries d = (a - b).truncated(t);
    std::optional<Mismatch> best;
    for (const auto& [m, s] : d.entries()) {
        const int e = s.valuation();
        if (!best || e < best->exponent || (e == best->exponent && m < best->mono))
            best = Mismatch{m, e, a.coeff(m, e), b.coeff(m, e)};
    }
    return best;
}

} // namespace qpart
