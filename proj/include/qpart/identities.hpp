#pragma once

// Registry of q-series identities with closed-form and (where available)
// enumerative sides, and coefficient-exact verification.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpart/bijections.hpp"
#include "qpart/domains.hpp"
#include "qpart/params.hpp"
#include "qpart/series.hpp"

namespace qpart {

enum class Side { lhs, rhs, combinatorial };

inline std::string to_string(Side s)
{
    switch (s) {
    case Side::lhs: return "lhs";
    case Side::rhs: return "rhs";
    case Side::combinatorial: return "combinatorial";
    }
    return "?";
}

enum class IdentityKind { polynomial_exact, truncated_series, integer };

inline constexpr long kDefaultWeightCap = 30;

using SideBuilder = std::function<MultiSeries(const Params&, int trunc)>;
using CombinatorialBuilder = std::function<MultiSeries(const Params&, int trunc, long weight_cap)>;

struct IdentityCase {
    std::string id;
    std::string summary;
    std::vector<std::string> param_names;
    IdentityKind kind = IdentityKind::truncated_series;
    SideBuilder lhs;
    SideBuilder rhs;
    CombinatorialBuilder combinatorial; // empty when no enumerative side exists
    // Expression-language forms of both sides. Infinite sums are cut at the bound T,
    // which callers bind to the truncation order.
    std::string lhs_text;
    std::string rhs_text;
};

struct VerifyReport {
    std::string id;
    Params params;
    int trunc = 0;
    bool equal = false;
    std::optional<Mismatch> first_mismatch;
    std::string compared;      // which pair of sides the mismatch (if any) refers to
    bool combinatorial = false; // whether an enumerative side took part
};

// ---------------------------------------------------------------------------
// Building blocks
// ---------------------------------------------------------------------------

namespace detail {

inline MultiSeries mul_capped(const MultiSeries& a, const MultiSeries& b, int trunc)
{
    return MultiSeries::multiply(a, b, trunc);
}

inline MultiSeries zq(int zexp, int qexp, const BigInt& c = 1) { return MultiSeries::term({c, Mono::of(Aux::z, zexp), qexp}); }

inline QMonomial qm(const BigInt& c, int qexp, Mono m = {}) { return {c, m, qexp}; }

inline long tri(long t) { return t * (t + 1) / 2; }

inline int as_int(long v) { return static_cast<int>(v); }

/// Generating function sum of q^{weight} over a list of elements.
template <class Range, class W>
MultiSeries gf(const Range& elems, W weight_of, int trunc = kExact)
{
    std::map<int, BigInt> acc;
    for (const auto& e : elems) acc[static_cast<int>(weight_of(e))] += 1;
    return QSeries::from_map(acc, trunc);
}

} // namespace detail

/// S_n(i) = sum_{s=0}^{n} q^{is} (q;q)_{n+s} / (q^2;q^2)_s, each quotient taken as an exact division.
inline QSeries s_sum(long n, long i)
{
    if (n < 0 || i < 0) throw BadParams("s_sum requires n >= 0 and i >= 0");
    QSeries total;
    for (long s = 0; s <= n; ++s) {
        const QSeries num = poch_finite(detail::qm(1, 1), 1, n + s).part(Mono{});
        const QSeries den = poch_finite(detail::qm(1, 2), 2, s).part(Mono{});
        total += exact_divide(num, den).shifted(static_cast<int>(i * s));
    }
    return total;
}

/// Integer identity obtained at q = 1, with the subset pivot decomposition counted explicitly.
struct Q1Limit {
    long n = 0;
    BigInt lhs;                 // sum_s 2^{n-s} C(n+s, s)
    BigInt rhs;                 // sum_t C(2n+1, n+1+t)
    BigInt four_pow;            // 4^n
    std::vector<BigInt> pivots; // subsets of {1..2n+1} whose (n+1)-th smallest element is n+1+s
    bool pivots_enumerated = false;

    bool holds() const
    {
        if (lhs != rhs || rhs != four_pow) return false;
        for (std::size_t s = 0; s < pivots.size(); ++s) {
            const long ss = static_cast<long>(s);
            if (pivots[s] != (BigInt(1) << (n - ss)) * binomial(n + ss, ss)) return false;
        }
        return true;
    }
};

/// Pivot counts come from direct subset enumeration when n <= enumerate_up_to.
inline Q1Limit q1_limit_check(long n, long enumerate_up_to = 8)
{
    if (n < 0) throw BadParams("q1limit requires n >= 0");
    Q1Limit r;
    r.n = n;
    for (long s = 0; s <= n; ++s) r.lhs += (BigInt(1) << (n - s)) * binomial(n + s, s);
    for (long t = 0; t <= n; ++t) r.rhs += binomial(2 * n + 1, n + 1 + t);
    r.four_pow = BigInt(1) << (2 * n);
    r.pivots.assign(static_cast<std::size_t>(n + 1), 0);
    if (n <= enumerate_up_to) {
        r.pivots_enumerated = true;
        const long width = 2 * n + 1;
        for (unsigned long mask = 0; mask < (1UL << width); ++mask) {
            long seen = 0;
            for (long b = 0; b < width; ++b) {
                if (!(mask & (1UL << b))) continue;
                if (++seen == n + 1) {
                    ++r.pivots[static_cast<std::size_t>(b + 1 - (n + 1))];
                    break;
                }
            }
        }
    } else {
        // n elements below the pivot chosen from n+s, any subset of the n-s above it
        for (long s = 0; s <= n; ++s) r.pivots[static_cast<std::size_t>(s)] = (BigInt(1) << (n - s)) * binomial(n + s, n);
    }
    return r;
}

inline std::uint64_t p_omega(long N)
{
    if (N < 1) throw BadParams("p_omega requires N >= 1");
    std::uint64_t c = 0;
    for_each_partition_of(N, [&](const Partition& p) {
        const int two_min = 2 * p.smallest();
        if (std::all_of(p.parts().begin(), p.parts().end(), [&](int v) { return v % 2 == 0 || v < two_min; })) ++c;
    });
    return c;
}

inline std::uint64_t p_nu(long N)
{
    if (N < 1) throw BadParams("p_nu requires N >= 1");
    std::uint64_t c = 0;
    for_each_partition_of(N, [&](const Partition& p) {
        if (!is_distinct(p)) return;
        const int two_min = 2 * p.smallest();
        if (std::all_of(p.parts().begin(), p.parts().end(), [&](int v) { return v % 2 == 0 || v < two_min; })) ++c;
    });
    return c;
}

/// p_nu with 0 admitted as a part: adds the partitions into distinct even parts.
/// This is the count generated by the second bivariate identity at z = 1.
inline std::uint64_t p_nu_zero(long N)
{
    if (N < 1) throw BadParams("p_nu_zero requires N >= 1");
    std::uint64_t even = 0;
    for_each_partition_of(N, [&](const Partition& p) {
        if (is_distinct(p) && std::all_of(p.parts().begin(), p.parts().end(), [](int v) { return v % 2 == 0; })) ++even;
    });
    return p_nu(N) + even;
}

// ---------------------------------------------------------------------------
// Closed-form sides
// ---------------------------------------------------------------------------

namespace sides {

using detail::as_int;
using detail::mul_capped;
using detail::qm;
using detail::tri;

inline MultiSeries ay1_lhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (int n = 1; n < T; ++n) {
        MultiSeries t = MultiSeries::term(qm(1, n), T);
        t = divide_poch(t, {1, Mono::of(Aux::z), n}, 1, n + 1, T);
        t = divide_poch_infinite(t, {1, Mono::of(Aux::z), 2 * n + 2}, 2, T);
        total += t;
    }
    return total;
}

inline MultiSeries ay1_rhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (long n = 0; 2 * n * n + 2 * n + 1 < T; ++n) {
        MultiSeries t = MultiSeries::term({1, Mono::of(Aux::z, as_int(n)), as_int(2 * n * n + 2 * n + 1)}, T);
        t = divide_poch(t, qm(1, 1), 2, n + 1, T);
        t = divide_poch(t, {1, Mono::of(Aux::z), 1}, 2, n + 1, T);
        total += t;
    }
    return total;
}

inline MultiSeries ay2_lhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (int n = 0; n < T; ++n) {
        MultiSeries t = MultiSeries::term(qm(1, n), T);
        t = mul_capped(t, poch_finite(QMonomial{-1, Mono::of(Aux::z), n + 1}, 1, n, T - n), T);
        t = mul_capped(t, poch_infinite(QMonomial{-1, Mono::of(Aux::z), 2 * n + 2}, 2, T), T);
        total += t;
    }
    return total;
}

inline MultiSeries ay2_rhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (long n = 0; n * n + n < T; ++n) {
        MultiSeries t = MultiSeries::term({1, Mono::of(Aux::z, as_int(n)), as_int(n * n + n)}, T);
        total += divide_poch(t, qm(1, 1), 2, n + 1, T);
    }
    return total;
}

inline MultiSeries thm21_lhs(long n)
{
    MultiSeries total;
    for (long s = 0; s <= n; ++s) {
        MultiSeries t = MultiSeries::q(as_int(s));
        t *= poch_finite(qm(-1, as_int(s + 1)), 1, n - s);
        t *= MultiSeries(qbinom(n + s, s));
        total += t;
    }
    return total;
}

inline MultiSeries neg_q_poch_squared(long n)
{
    const MultiSeries p = poch_finite(qm(-1, 1), 1, n);
    return p * p;
}

inline MultiSeries staircase_sum(long n)
{
    MultiSeries total;
    for (long t = 0; t <= n; ++t) total += MultiSeries(qbinom(2 * n + 1, n + 1 + t).shifted(as_int(tri(t))));
    return total;
}

inline MultiSeries omega_lhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (long n = 0; 2 * n * n + 2 * n < T; ++n) {
        MultiSeries t = MultiSeries::term({1, Mono::of(Aux::z, as_int(n)), as_int(2 * n * n + 2 * n)}, T);
        t = divide_poch(t, qm(1, 1), 2, n + 1, T);
        t = divide_poch(t, {1, Mono::of(Aux::z), 1}, 2, n + 1, T);
        total += t;
    }
    return total;
}

inline MultiSeries omega_rhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (int n = 0; n < T; ++n) {
        MultiSeries t = MultiSeries::term({1, Mono::of(Aux::z, n), n}, T);
        total += divide_poch(t, qm(1, 1), 2, n + 1, T);
    }
    return total;
}

inline MultiSeries omega1_lhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (long n = 0; (2 * n + 1) * (2 * n + 1) < T; ++n) {
        MultiSeries t = MultiSeries::term({1, Mono::of(Aux::z, as_int(2 * n + 1)), as_int((2 * n + 1) * (2 * n + 1))}, T);
        t = divide_poch(t, qm(1, 2), 4, n + 1, T);
        t = divide_poch(t, {1, Mono::of(Aux::z, 2), 2}, 4, n + 1, T);
        total += t;
    }
    return total;
}

inline MultiSeries omega1_rhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (int n = 0; 2 * n + 1 < T; ++n) {
        MultiSeries t = MultiSeries::term({1, Mono::of(Aux::z, 2 * n + 1), 2 * n + 1}, T);
        total += divide_poch(t, qm(1, 2), 4, n + 1, T);
    }
    return total;
}

inline MultiSeries nu1_lhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (long n = 0; n * n + n < T; ++n) {
        MultiSeries t = MultiSeries::term(qm(1, as_int(n * n + n)), T);
        total += divide_poch(t, {-1, Mono::of(Aux::z), 1}, 2, n + 1, T);
    }
    return total;
}

inline MultiSeries nu1_rhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (int n = 0; n < T; ++n) {
        const MultiSeries p = poch_finite(QMonomial{1, Mono::of(Aux::z, -1), 1}, 2, n, T - n);
        total += mul_capped(p, MultiSeries::term({n % 2 ? -1 : 1, Mono::of(Aux::z, n), n}), T);
    }
    return total;
}

inline MultiSeries nu2_lhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (long n = 0; n * n + n < T; ++n) {
        MultiSeries t = MultiSeries::term({1, Mono::of(Aux::z, as_int(n)), as_int(n * n + n)}, T);
        total += divide_poch(t, qm(-1, 1), 2, n + 1, T);
    }
    return total;
}

inline MultiSeries nu2_rhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (int n = 0; n < T; ++n) {
        const MultiSeries p = poch_finite(QMonomial{1, Mono::of(Aux::z), 1}, 2, n, T - n);
        total += mul_capped(p, MultiSeries::term(qm(n % 2 ? -1 : 1, n)), T);
    }
    return total;
}

inline MultiSeries nu3_lhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (long n = 0; n * n + n < T; ++n) {
        MultiSeries t = MultiSeries::term({1, Mono::of(Aux::x, as_int(n)), as_int(n * n + n)}, T);
        total += divide_poch(t, {1, Mono::of(Aux::y), 1}, 2, n + 1, T);
    }
    return total;
}

inline MultiSeries nu3_rhs(int T)
{
    MultiSeries total = MultiSeries::zero(T);
    for (int n = 0; n < T; ++n) {
        const MultiSeries p = poch_finite(QMonomial{-1, Mono::of(Aux::x) * Mono::of(Aux::y, -1), 1}, 2, n, T - n);
        total += mul_capped(p, MultiSeries::term({1, Mono::of(Aux::y, n), n}), T);
    }
    return total;
}

inline MultiSeries qbinom_thm_lhs(long N) { return poch_finite(QMonomial{1, Mono::of(Aux::z), 0}, 1, N); }

inline MultiSeries qbinom_thm_rhs(long N)
{
    MultiSeries total;
    for (long t = 0; t <= N; ++t) {
        const MultiSeries sign = MultiSeries::term({t % 2 ? -1 : 1, Mono::of(Aux::z, as_int(t)), as_int(t * (t - 1) / 2)});
        total += sign * MultiSeries(qbinom(N, t));
    }
    return total;
}

} // namespace sides

// ---------------------------------------------------------------------------
// Enumerative sides
// ---------------------------------------------------------------------------

namespace combinatorial {

inline MultiSeries b1_gf(long n)
{
    return detail::gf(enumerate_b1(static_cast<int>(n)), [](const B1Element& e) { return e.weight(); });
}

inline MultiSeries b2_gf(long n)
{
    return detail::gf(enumerate_b2(static_cast<int>(n)), [](const B2Element& e) { return e.weight(); });
}

/// q^{n(n+1)/2} times the sum over P_>(n) of q^{|rho(lambda)|}.
inline MultiSeries p_gt_via_rho_gf(long n)
{
    const int nn = static_cast<int>(n);
    return detail::gf(enumerate_p_gt(nn), [&](const SignedDistinctSet& s) { return rho(nn, s).weight() + detail::tri(n); });
}

/// Sum over DS elements of weight <= cap of z^{largest part} q^{weight}.
inline MultiSeries ds_gf(long cap)
{
    std::map<std::pair<int, int>, BigInt> acc;
    for (const auto& p : enumerate_ds(std::nullopt, cap)) acc[{p.largest(), static_cast<int>(p.weight())}] += 1;
    MultiSeries out = MultiSeries::zero(static_cast<int>(cap + 1));
    for (const auto& [key, c] : acc) out += MultiSeries::term({c, Mono::of(Aux::z, key.first), key.second});
    return out.truncated(static_cast<int>(cap + 1));
}

/// Sum over OE elements of weight <= cap of z^{2k+1} q^{weight}.
inline MultiSeries oe_gf(long cap)
{
    MultiSeries out = MultiSeries::zero(static_cast<int>(cap + 1));
    for (const auto& e : enumerate_oe(std::nullopt, cap))
        out += MultiSeries::term({1, Mono::of(Aux::z, e.mu()), static_cast<int>(e.weight())});
    return out.truncated(static_cast<int>(cap + 1));
}

/// Sum over O_{n,k} elements of weight <= cap of x^n y^k q^{weight}.
inline MultiSeries o_gf(long cap)
{
    MultiSeries out = MultiSeries::zero(static_cast<int>(cap + 1));
    for (int n = 0; static_cast<long>(n) * (n + 1) <= cap; ++n)
        for (int k = 0; k <= cap; ++k)
            for (const auto& e : enumerate_o(n, k, cap))
                out += MultiSeries::term({1, Mono::of(Aux::x, n) * Mono::of(Aux::y, k), static_cast<int>(e.weight())});
    return out.truncated(static_cast<int>(cap + 1));
}

/// Sum over DO_{n,k} elements of weight <= cap of x^n y^k q^{weight}.
inline MultiSeries do_gf(long cap)
{
    MultiSeries out = MultiSeries::zero(static_cast<int>(cap + 1));
    for (int m = 0; m <= cap; ++m)
        for (int n = 0; n <= m; ++n)
            for (const auto& e : enumerate_do(n, m - n, cap))
                out += MultiSeries::term({1, Mono::of(Aux::x, n) * Mono::of(Aux::y, m - n), static_cast<int>(e.weight())});
    return out.truncated(static_cast<int>(cap + 1));
}

} // namespace combinatorial

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace detail {

inline long param_n(const Params& p, const char* name = "n")
{
    const long v = require_param(p, name);
    if (v < 0) throw BadParams(std::string("parameter ") + name + " must be nonnegative");
    return v;
}

inline long cap_for(int trunc, long weight_cap)
{
    return std::min<long>(weight_cap, trunc == kExact ? weight_cap : trunc - 1L);
}

inline std::vector<IdentityCase> make_registry()
{
    using namespace sides;
    std::vector<IdentityCase> r;

    r.push_back({"ay1", "sum q^n/((zq^n;q)_{n+1}(zq^{2n+2};q^2)_inf) = sum z^n q^{2n^2+2n+1}/((q;q^2)_{n+1}(zq;q^2)_{n+1})",
                 {}, IdentityKind::truncated_series,
                 [](const Params&, int T) { return ay1_lhs(T); },
                 [](const Params&, int T) { return ay1_rhs(T); }, {},
                 "sum(n, 1, T, q^n * poch(z*q^n, 1, n+1)^(-1) * poch(z*q^(2*n+2), 2, inf)^(-1))",
                 "sum(n, 0, T, z^n * q^(2*n^2+2*n+1) * poch(q, 2, n+1)^(-1) * poch(z*q, 2, n+1)^(-1))"});

    r.push_back({"ay2", "sum q^n (-zq^{n+1};q)_n (-zq^{2n+2};q^2)_inf = sum z^n q^{n^2+n}/(q;q^2)_{n+1}",
                 {}, IdentityKind::truncated_series,
                 [](const Params&, int T) { return ay2_lhs(T); },
                 [](const Params&, int T) { return ay2_rhs(T); }, {},
                 "sum(n, 0, T, q^n * poch(-z*q^(n+1), 1, n) * poch(-z*q^(2*n+2), 2, inf))",
                 "sum(n, 0, T, z^n * q^(n^2+n) * poch(q, 2, n+1)^(-1))"});

    r.push_back({"ay3", "S_n(1) = sum q^s (q;q)_{n+s}/(q^2;q^2)_s = (q^2;q^2)_n",
                 {"n"}, IdentityKind::polynomial_exact,
                 [](const Params& p, int) { return MultiSeries(s_sum(param_n(p), 1)); },
                 [](const Params& p, int) { return poch_finite(qm(1, 2), 2, param_n(p)); }, {},
                 "sum(s, 0, n, q^s * poch(q, 1, n+s) * poch(q^2, 2, s)^(-1))",
                 "poch(q^2, 2, n)"});

    r.push_back({"thm21", "sum q^s (-q^{s+1};q)_{n-s} [n+s,s] = (-q;q)_n^2",
                 {"n"}, IdentityKind::polynomial_exact,
                 [](const Params& p, int) { return thm21_lhs(param_n(p)); },
                 [](const Params& p, int) { return neg_q_poch_squared(param_n(p)); },
                 [](const Params& p, int, long) { return combinatorial::b1_gf(param_n(p)); },
                 "sum(s, 0, n, q^s * poch(-q^(s+1), 1, n-s) * qbinom(n+s, s))",
                 "poch(-q, 1, n)^2"});

    r.push_back({"lemma22", "sum q^s (-q^{s+1};q)_{n-s} [n+s,s] = sum q^{t(t+1)/2} [2n+1, n+1+t]",
                 {"n"}, IdentityKind::polynomial_exact,
                 [](const Params& p, int) { return thm21_lhs(param_n(p)); },
                 [](const Params& p, int) { return staircase_sum(param_n(p)); },
                 [](const Params& p, int, long) { return combinatorial::b2_gf(param_n(p)); },
                 "sum(s, 0, n, q^s * poch(-q^(s+1), 1, n-s) * qbinom(n+s, s))",
                 "sum(t, 0, n, q^binom(t+1, 2) * qbinom(2*n+1, n+1+t))"});

    r.push_back({"middle", "sum q^{t(t+1)/2} [2n+1, n+1+t] = (-q;q)_n^2",
                 {"n"}, IdentityKind::polynomial_exact,
                 [](const Params& p, int) { return staircase_sum(param_n(p)); },
                 [](const Params& p, int) { return neg_q_poch_squared(param_n(p)); },
                 [](const Params& p, int, long) { return combinatorial::p_gt_via_rho_gf(param_n(p)); },
                 "sum(t, 0, n, q^binom(t+1, 2) * qbinom(2*n+1, n+1+t))",
                 "poch(-q, 1, n)^2"});

    r.push_back({"q1limit", "sum 2^{n-s} C(n+s,s) = sum C(2n+1, n+1+t) = 4^n",
                 {"n"}, IdentityKind::integer,
                 [](const Params& p, int) { return MultiSeries::constant(q1_limit_check(param_n(p), -1).lhs); },
                 [](const Params& p, int) { return MultiSeries::constant(q1_limit_check(param_n(p), -1).rhs); },
                 [](const Params& p, int, long) {
                     const auto r = q1_limit_check(param_n(p));
                     BigInt total = 0;
                     for (const auto& c : r.pivots) total += c;
                     return MultiSeries::constant(total);
                 },
                 "sum(s, 0, n, 2^(n-s) * binom(n+s, s))",
                 "sum(t, 0, n, binom(2*n+1, n+1+t))"});

    r.push_back({"omega", "sum z^n q^{2n^2+2n}/((q;q^2)_{n+1}(zq;q^2)_{n+1}) = sum z^n q^n/(q;q^2)_{n+1}",
                 {}, IdentityKind::truncated_series,
                 [](const Params&, int T) { return omega_lhs(T); },
                 [](const Params&, int T) { return omega_rhs(T); }, {},
                 "sum(n, 0, T, z^n * q^(2*n^2+2*n) * poch(q, 2, n+1)^(-1) * poch(z*q, 2, n+1)^(-1))",
                 "sum(n, 0, T, z^n * q^n * poch(q, 2, n+1)^(-1))"});

    r.push_back({"omega1",
                 "sum z^{2n+1} q^{(2n+1)^2}/((q^2;q^4)_{n+1}(z^2q^2;q^4)_{n+1}) = sum z^{2n+1} q^{2n+1}/(q^2;q^4)_{n+1}",
                 {}, IdentityKind::truncated_series,
                 [](const Params&, int T) { return omega1_lhs(T); },
                 [](const Params&, int T) { return omega1_rhs(T); },
                 [](const Params&, int T, long cap) { return combinatorial::ds_gf(cap_for(T, cap)); },
                 "sum(n, 0, T, z^(2*n+1) * q^((2*n+1)^2) * poch(q^2, 4, n+1)^(-1) * poch(z^2*q^2, 4, n+1)^(-1))",
                 "sum(n, 0, T, z^(2*n+1) * q^(2*n+1) * poch(q^2, 4, n+1)^(-1))"});

    r.push_back({"nu1", "sum q^{n^2+n}/(-zq;q^2)_{n+1} = sum (q/z;q^2)_n (-zq)^n",
                 {}, IdentityKind::truncated_series,
                 [](const Params&, int T) { return nu1_lhs(T); },
                 [](const Params&, int T) { return nu1_rhs(T); }, {},
                 "sum(n, 0, T, q^(n^2+n) * poch(-z*q, 2, n+1)^(-1))",
                 "sum(n, 0, T, poch(q*z^(-1), 2, n) * (-z*q)^n)"});

    r.push_back({"nu2", "sum z^n q^{n^2+n}/(-q;q^2)_{n+1} = sum (zq;q^2)_n (-q)^n",
                 {}, IdentityKind::truncated_series,
                 [](const Params&, int T) { return nu2_lhs(T); },
                 [](const Params&, int T) { return nu2_rhs(T); }, {},
                 "sum(n, 0, T, z^n * q^(n^2+n) * poch(-q, 2, n+1)^(-1))",
                 "sum(n, 0, T, poch(z*q, 2, n) * (-q)^n)"});

    r.push_back({"nu3", "sum q^{n^2+n} x^n/(yq;q^2)_{n+1} = sum (-xq/y;q^2)_n (yq)^n",
                 {}, IdentityKind::truncated_series,
                 [](const Params&, int T) { return nu3_lhs(T); },
                 [](const Params&, int T) { return nu3_rhs(T); },
                 [](const Params&, int T, long cap) { return combinatorial::o_gf(cap_for(T, cap)); },
                 "sum(n, 0, T, q^(n^2+n) * x^n * poch(y*q, 2, n+1)^(-1))",
                 "sum(n, 0, T, poch(-x*q*y^(-1), 2, n) * (y*q)^n)"});

    r.push_back({"qbinom_thm", "(z;q)_N = sum [N,t] (-1)^t z^t q^{t(t-1)/2}",
                 {"N"}, IdentityKind::polynomial_exact,
                 [](const Params& p, int) { return qbinom_thm_lhs(param_n(p, "N")); },
                 [](const Params& p, int) { return qbinom_thm_rhs(param_n(p, "N")); }, {},
                 "poch(z, 1, N)",
                 "sum(t, 0, N, qbinom(N, t) * (-1)^t * z^t * q^binom(t, 2))"});
    return r;
}

} // namespace detail

inline const std::vector<IdentityCase>& registry()
{
    static const std::vector<IdentityCase> r = detail::make_registry();
    return r;
}

inline std::vector<std::string> identity_ids()
{
    std::vector<std::string> ids;
    for (const auto& c : registry()) ids.push_back(c.id);
    return ids;
}

inline const IdentityCase& find_identity(const std::string& id)
{
    for (const auto& c : registry())
        if (c.id == id) return c;
    throw UnknownIdentity("unknown identity '" + id + "'");
}

namespace detail {

inline void check_params(const IdentityCase& c, const Params& p)
{
    for (const auto& name : c.param_names) {
        auto v = get_param(p, name);
        if (!v) throw BadParams(c.id + " requires parameter '" + name + "'");
        if (*v < 0) throw BadParams("parameter " + name + " must be nonnegative");
    }
    for (const auto& [k, v] : p)
        if (std::find(c.param_names.begin(), c.param_names.end(), k) == c.param_names.end())
            throw BadParams(c.id + " does not take parameter '" + k + "'");
}

} // namespace detail

/// One side of an identity expanded below `trunc`. Exact sides are returned untruncated
/// when trunc == kExact.
inline MultiSeries build_side(const std::string& id, Side side, const Params& params, int trunc,
                              long weight_cap = kDefaultWeightCap)
{
    const IdentityCase& c = find_identity(id);
    detail::check_params(c, params);
    if (trunc < 1) throw BadParams("truncation order must be at least 1");
    if (c.kind == IdentityKind::truncated_series && trunc == kExact)
        throw BadParams(id + " is an infinite series and needs a finite truncation order");
    switch (side) {
    case Side::lhs: return c.lhs(params, trunc).truncated(trunc);
    case Side::rhs: return c.rhs(params, trunc).truncated(trunc);
    case Side::combinatorial:
        if (!c.combinatorial) throw BadParams(id + " has no combinatorial side");
        return c.combinatorial(params, trunc, weight_cap).truncated(trunc);
    }
    throw BadParams("bad side");
}

/// Compares lhs with rhs, then lhs with the combinatorial side where one exists.
/// Registry sides must have no negative aux exponents once expanded.
inline VerifyReport verify(const std::string& id, const Params& params, int trunc, long weight_cap = kDefaultWeightCap)
{
    const IdentityCase& c = find_identity(id);
    VerifyReport rep;
    rep.id = id;
    rep.params = params;
    rep.trunc = trunc;
    const MultiSeries lhs = build_side(id, Side::lhs, params, trunc, weight_cap);
    const MultiSeries rhs = build_side(id, Side::rhs, params, trunc, weight_cap);
    rep.compared = "lhs/rhs";
    rep.first_mismatch = first_mismatch(lhs, rhs);
    if (!rep.first_mismatch && c.combinatorial) {
        rep.combinatorial = true;
        const MultiSeries comb = build_side(id, Side::combinatorial, params, trunc, weight_cap);
        if (auto m = first_mismatch(lhs, comb)) {
            rep.compared = "lhs/combinatorial";
            rep.first_mismatch = m;
        }
    }
    rep.equal = !rep.first_mismatch && !lhs.has_negative_aux() && !rhs.has_negative_aux();
    return rep;
}

} // namespace qpart
