#pragma once

// The finite (or weight-capped) families the bijections act on, each with a
// membership predicate and an exhaustive enumerator.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpart/params.hpp"
#include "qpart/partitions.hpp"

namespace qpart {

/// (lambda, pi): lambda distinct with parts <= n, pi with at most n+1 parts all below
/// the smallest part of lambda (below or equal to n when lambda is empty).
struct B1Element {
    DistinctPartition lambda;
    Partition pi;

    long weight() const { return lambda.weight() + pi.weight(); }
    friend auto operator<=>(const B1Element&, const B1Element&) = default;
    std::string str() const { return lambda.str() + "|" + pi.str(); }
};

/// (mu, nu) with mu = (t, t-1, ..., 1) stored as t; nu fits an (n+1+t) x (n-t) box.
struct B2Element {
    int t = 0;
    Partition nu;

    long weight() const { return static_cast<long>(t) * (t + 1) / 2 + nu.weight(); }
    friend auto operator<=>(const B2Element&, const B2Element&) = default;
    std::string str() const { return "t=" + std::to_string(t) + "|" + nu.str(); }
};

inline DistinctPartition staircase(int t)
{
    std::vector<int> v;
    for (int i = t; i >= 1; --i) v.push_back(i);
    return DistinctPartition(std::move(v));
}

/// (mu, nu) with mu the run {-n, ..., t} stored as t; nu fits an (n+1+t) x (n-t) box.
struct B3Element {
    int n = 0;
    int t = 0;
    Partition nu;

    long mu_weight() const { return static_cast<long>(t) * (t + 1) / 2 - static_cast<long>(n) * (n + 1) / 2; }
    long weight() const { return mu_weight() + nu.weight(); }
    SignedDistinctSet mu() const
    {
        std::vector<int> v;
        for (int i = -n; i <= t; ++i) v.push_back(i);
        return {n, std::move(v)};
    }
    friend auto operator<=>(const B3Element&, const B3Element&) = default;
    std::string str() const { return "t=" + std::to_string(t) + "|" + nu.str(); }
};

/// (mu, nu) with mu the single odd part 2k+1.
struct OEElement {
    int k = 0;
    Partition nu;

    int mu() const { return 2 * k + 1; }
    long weight() const { return mu() + nu.weight(); }
    friend auto operator<=>(const OEElement&, const OEElement&) = default;
    std::string str() const { return "(" + std::to_string(mu()) + ")|" + nu.str(); }
};

/// (lambda, pi) with lambda the n x (n+1) rectangle (n+1 parts equal to n).
struct OElement {
    int n = 0;
    Partition pi;

    int k() const { return static_cast<int>(pi.length()); }
    long weight() const { return static_cast<long>(n) * (n + 1) + pi.weight(); }
    friend auto operator<=>(const OElement&, const OElement&) = default;
    std::string str() const { return "rect(" + std::to_string(n) + ")|" + pi.str(); }
};

inline Partition rectangle(int n)
{
    return n == 0 ? Partition{} : Partition(std::vector<int>(static_cast<std::size_t>(n) + 1, n));
}

/// (mu, nu) with mu the single part n+k (possibly 0) and nu distinct odd with n parts.
struct DOElement {
    int mu = 0;
    DistinctPartition nu;

    int n() const { return static_cast<int>(nu.length()); }
    int k() const { return mu - n(); }
    long weight() const { return mu + nu.weight(); }
    friend auto operator<=>(const DOElement&, const DOElement&) = default;
    std::string str() const { return "(" + std::to_string(mu) + ")|" + nu.str(); }
};

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

inline bool is_b1(int n, const B1Element& e)
{
    if (n < 0) return false;
    if (e.lambda.largest() > n) return false;
    if (e.pi.length() > static_cast<std::size_t>(n) + 1) return false;
    if (e.lambda.empty()) return e.pi.largest() <= n;
    return e.pi.largest() < e.lambda.smallest();
}

inline bool is_b2(int n, const B2Element& e)
{
    return n >= 0 && e.t >= 0 && e.t <= n && e.nu.length() <= static_cast<std::size_t>(n + 1 + e.t) &&
           e.nu.largest() <= n - e.t;
}

inline bool is_b3(int n, const B3Element& e)
{
    return e.n == n && is_b2(n, B2Element{e.t, e.nu});
}

inline bool is_p(int n, const SignedDistinctSet& s) { return n >= 0 && s.bound() == n; }
inline bool is_p_gt(int n, const SignedDistinctSet& s) { return is_p(n, s) && s.size() >= static_cast<std::size_t>(n) + 1; }
inline bool is_p_le(int n, const SignedDistinctSet& s) { return is_p(n, s) && s.size() <= static_cast<std::size_t>(n); }

/// Structural part of DS membership: odd Durfee size, and both the parts below the
/// square and the conjugate of the region right of it are odd with even multiplicities.
inline bool is_ds_shape(const Partition& p)
{
    const int d = durfee_size(p);
    if (d % 2 == 0) return false;
    std::vector<int> below(p.parts().begin() + d, p.parts().end());
    std::vector<int> right;
    for (int i = 0; i < d; ++i)
        if (p.parts()[static_cast<std::size_t>(i)] > d) right.push_back(p.parts()[static_cast<std::size_t>(i)] - d);
    const Partition b(std::move(below));
    const Partition r = conjugate(Partition(std::move(right)));
    return all_odd(b) && even_multiplicities(b) && all_odd(r) && even_multiplicities(r);
}

inline bool is_ds(int k, const Partition& p) { return k >= 0 && p.largest() == 2 * k + 1 && is_ds_shape(p); }

inline bool is_oe(int k, const OEElement& e)
{
    return k >= 0 && e.k == k && all_odd(e.nu) && even_multiplicities(e.nu) && e.nu.largest() <= 2 * k + 1;
}

inline bool is_o(int n, int k, const OElement& e)
{
    return n >= 0 && e.n == n && all_odd(e.pi) && e.pi.length() == static_cast<std::size_t>(k) &&
           e.pi.largest() <= 2 * n + 1;
}

inline bool is_do(int n, int k, const DOElement& e)
{
    return n >= 0 && k >= 0 && e.mu == n + k && e.n() == n && all_odd(e.nu.partition()) &&
           (e.nu.empty() || e.nu.largest() <= 2 * (n + k) - 1);
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

inline std::vector<B1Element> enumerate_b1(int n)
{
    std::vector<B1Element> out;
    if (n < 0) return out;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        std::vector<int> lam;
        for (int v = n; v >= 1; --v)
            if (mask & (1UL << (v - 1))) lam.push_back(v);
        DistinctPartition lambda(lam);
        const int bound = lambda.empty() ? n : lambda.smallest() - 1;
        for_each_partition_in_box(n + 1, bound, [&](const Partition& pi) { out.push_back({lambda, pi}); });
    }
    return out;
}

inline std::vector<B2Element> enumerate_b2(int n)
{
    std::vector<B2Element> out;
    for (int t = 0; t <= n; ++t)
        for_each_partition_in_box(n + 1 + t, n - t, [&](const Partition& nu) { out.push_back({t, nu}); });
    return out;
}

inline std::vector<B3Element> enumerate_b3(int n)
{
    std::vector<B3Element> out;
    for (int t = 0; t <= n; ++t)
        for_each_partition_in_box(n + 1 + t, n - t, [&](const Partition& nu) { out.push_back({n, t, nu}); });
    return out;
}

inline std::vector<SignedDistinctSet> enumerate_p(int n)
{
    std::vector<SignedDistinctSet> out;
    for_each_signed_set(n, [&](const SignedDistinctSet& s) { out.push_back(s); });
    return out;
}

inline std::vector<SignedDistinctSet> enumerate_p_gt(int n)
{
    std::vector<SignedDistinctSet> out;
    for_each_signed_set(n, [&](const SignedDistinctSet& s) {
        if (s.size() >= static_cast<std::size_t>(n) + 1) out.push_back(s);
    });
    return out;
}

inline std::vector<SignedDistinctSet> enumerate_p_le(int n)
{
    std::vector<SignedDistinctSet> out;
    for_each_signed_set(n, [&](const SignedDistinctSet& s) {
        if (s.size() <= static_cast<std::size_t>(n)) out.push_back(s);
    });
    return out;
}

/// DS_k elements of weight <= cap; all k when k is unset.
inline std::vector<Partition> enumerate_ds(std::optional<int> k, long cap)
{
    std::vector<Partition> out;
    const int max_part = k ? 2 * *k + 1 : static_cast<int>(cap);
    for_each_partition(cap, max_part, static_cast<std::size_t>(std::max(cap, 0L)), [&](const Partition& p) {
        if (p.empty() || p.largest() % 2 == 0) return;
        if (k && p.largest() != 2 * *k + 1) return;
        if (is_ds_shape(p)) out.push_back(p);
    });
    return out;
}

inline std::vector<OEElement> enumerate_oe(std::optional<int> k, long cap)
{
    std::vector<OEElement> out;
    const int k_lo = k ? *k : 0;
    const int k_hi = k ? *k : static_cast<int>((cap - 1) / 2);
    for (int kk = k_lo; kk <= k_hi; ++kk) {
        const long rest = cap - (2 * kk + 1);
        for_each_partition(rest, 2 * kk + 1, static_cast<std::size_t>(std::max(rest, 0L)), [&](const Partition& nu) {
            if (all_odd(nu) && even_multiplicities(nu)) out.push_back({kk, nu});
        });
    }
    return out;
}

inline std::vector<OElement> enumerate_o(int n, int k, long cap)
{
    std::vector<OElement> out;
    if (n < 0 || k < 0) return out;
    const long rest = cap - static_cast<long>(n) * (n + 1);
    for_each_partition(rest, 2 * n + 1, static_cast<std::size_t>(k), [&](const Partition& pi) {
        if (pi.length() == static_cast<std::size_t>(k) && all_odd(pi)) out.push_back({n, pi});
    });
    return out;
}

inline std::vector<DOElement> enumerate_do(int n, int k, long cap)
{
    std::vector<DOElement> out;
    if (n < 0 || k < 0) return out;
    const long rest = cap - (n + k);
    for_each_partition(rest, 2 * (n + k) - 1, static_cast<std::size_t>(n), [&](const Partition& nu) {
        if (nu.length() == static_cast<std::size_t>(n) && all_odd(nu) && is_distinct(nu))
            out.push_back({n + k, DistinctPartition(nu)});
    });
    return out;
}

// ---------------------------------------------------------------------------
// Name-keyed access
// ---------------------------------------------------------------------------

using DomainElement =
    std::variant<B1Element, B2Element, B3Element, SignedDistinctSet, Partition, OEElement, OElement, DOElement>;

inline long weight(const DomainElement& e)
{
    return std::visit([](const auto& x) { return static_cast<long>(x.weight()); }, e);
}

inline std::string to_string(const DomainElement& e)
{
    return std::visit([](const auto& x) { return x.str(); }, e);
}

inline const std::vector<std::string>& domain_names()
{
    static const std::vector<std::string> names{"B1", "B2", "B3", "P", "P_gt", "P_le", "DS", "OE", "O", "DO"};
    return names;
}

namespace detail {

inline bool infinite_domain(std::string_view name)
{
    return name == "DS" || name == "OE" || name == "O" || name == "DO";
}

inline int int_param(const Params& p, const std::string& name) { return static_cast<int>(require_param(p, name)); }

inline std::optional<int> opt_int_param(const Params& p, const std::string& name)
{
    auto v = get_param(p, name);
    return v ? std::optional<int>(static_cast<int>(*v)) : std::nullopt;
}

template <class T, class Pred>
bool holds_and(const DomainElement& e, Pred pred)
{
    const T* x = std::get_if<T>(&e);
    return x && pred(*x);
}

template <class T>
std::vector<DomainElement> lift(std::vector<T> v)
{
    return {std::make_move_iterator(v.begin()), std::make_move_iterator(v.end())};
}

} // namespace detail

/// Every element of the named family, filtered to weight <= weight_cap for the infinite
/// families (DS, OE, O, DO), which require a cap. DS/OE take an optional k.
inline std::vector<DomainElement> enumerate_domain(std::string_view name, const Params& params,
                                                   std::optional<long> weight_cap = std::nullopt)
{
    using detail::int_param;
    if (std::find(domain_names().begin(), domain_names().end(), name) == domain_names().end())
        throw UnknownDomain("unknown domain '" + std::string(name) + "'");
    if (detail::infinite_domain(name) && !weight_cap)
        throw MissingParam("domain " + std::string(name) + " requires a weight cap");
    if (name == "B1") return detail::lift(enumerate_b1(int_param(params, "n")));
    if (name == "B2") return detail::lift(enumerate_b2(int_param(params, "n")));
    if (name == "B3") return detail::lift(enumerate_b3(int_param(params, "n")));
    if (name == "P") return detail::lift(enumerate_p(int_param(params, "n")));
    if (name == "P_gt") return detail::lift(enumerate_p_gt(int_param(params, "n")));
    if (name == "P_le") return detail::lift(enumerate_p_le(int_param(params, "n")));
    if (name == "DS") return detail::lift(enumerate_ds(detail::opt_int_param(params, "k"), *weight_cap));
    if (name == "OE") return detail::lift(enumerate_oe(detail::opt_int_param(params, "k"), *weight_cap));
    if (name == "O") return detail::lift(enumerate_o(int_param(params, "n"), int_param(params, "k"), *weight_cap));
    return detail::lift(enumerate_do(int_param(params, "n"), int_param(params, "k"), *weight_cap));
}

/// Membership test for a named family (the weight cap is not part of membership).
inline bool validate_domain(std::string_view name, const Params& params, const DomainElement& e)
{
    using detail::holds_and;
    using detail::int_param;
    using detail::opt_int_param;
    if (std::find(domain_names().begin(), domain_names().end(), name) == domain_names().end())
        throw UnknownDomain("unknown domain '" + std::string(name) + "'");
    if (name == "B1") return holds_and<B1Element>(e, [&](const auto& x) { return is_b1(int_param(params, "n"), x); });
    if (name == "B2") return holds_and<B2Element>(e, [&](const auto& x) { return is_b2(int_param(params, "n"), x); });
    if (name == "B3") return holds_and<B3Element>(e, [&](const auto& x) { return is_b3(int_param(params, "n"), x); });
    if (name == "P") return holds_and<SignedDistinctSet>(e, [&](const auto& x) { return is_p(int_param(params, "n"), x); });
    if (name == "P_gt")
        return holds_and<SignedDistinctSet>(e, [&](const auto& x) { return is_p_gt(int_param(params, "n"), x); });
    if (name == "P_le")
        return holds_and<SignedDistinctSet>(e, [&](const auto& x) { return is_p_le(int_param(params, "n"), x); });
    if (name == "DS")
        return holds_and<Partition>(e, [&](const auto& x) {
            auto k = opt_int_param(params, "k");
            return k ? is_ds(*k, x) : (x.largest() % 2 == 1 && is_ds_shape(x));
        });
    if (name == "OE")
        return holds_and<OEElement>(e, [&](const auto& x) {
            auto k = opt_int_param(params, "k");
            return is_oe(k ? *k : x.k, x);
        });
    if (name == "O")
        return holds_and<OElement>(e, [&](const auto& x) { return is_o(int_param(params, "n"), int_param(params, "k"), x); });
    return holds_and<DOElement>(e, [&](const auto& x) { return is_do(int_param(params, "n"), int_param(params, "k"), x); });
}

} // namespace qpart
