#pragma once

// Constructive weight-preserving bijections between partition families, each
// with an explicit inverse, plus an exhaustive checker.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qpart/domains.hpp"

namespace qpart {

namespace detail {

#ifdef NDEBUG
inline constexpr bool kCheckOutputs = false;
#else
inline constexpr bool kCheckOutputs = true;
#endif

inline void ensure_output(bool ok, const char* what)
{
    if (kCheckOutputs && !ok) throw std::logic_error(std::string("bijection produced an invalid image: ") + what);
}

inline std::vector<int> negated(const std::vector<int>& v)
{
    std::vector<int> out;
    out.reserve(v.size());
    for (int x : v) out.push_back(-x);
    return out;
}

/// Elements of {lo, ..., hi} not in `s` (sorted input, sorted output).
inline std::vector<int> complement_in_range(int lo, int hi, const std::vector<int>& s)
{
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v)
        if (!std::binary_search(s.begin(), s.end(), v)) out.push_back(v);
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// phi : B1(n) -> B2(n)
// ---------------------------------------------------------------------------

/// Intermediate stages of phi, for demonstrations.
struct PhiTrace {
    int ell = 0;
    DistinctPartition mu;
    std::vector<int> lambda_star; // lambda_i - (ell + 1 - i), may contain zeros
    B2Element image;
};

inline PhiTrace phi_trace(int n, const B1Element& in)
{
    if (!is_b1(n, in)) throw DomainViolation("phi: " + in.str() + " is not in B1(" + std::to_string(n) + ")");
    const auto& lam = in.lambda.parts();
    const int ell = static_cast<int>(lam.size());
    PhiTrace tr;
    tr.ell = ell;
    tr.mu = staircase(ell);
    for (int i = 1; i <= ell; ++i) tr.lambda_star.push_back(lam[static_cast<std::size_t>(i - 1)] - (ell + 1 - i));
    std::vector<int> nu;
    for (int v : tr.lambda_star)
        if (v > 0) nu.push_back(v);
    nu.insert(nu.end(), in.pi.parts().begin(), in.pi.parts().end());
    tr.image = B2Element{ell, Partition(std::move(nu))};
    detail::ensure_output(is_b2(n, tr.image), "phi");
    return tr;
}

inline B2Element phi(int n, const B1Element& in) { return phi_trace(n, in).image; }

inline B1Element phi_inverse(int n, const B2Element& in)
{
    if (!is_b2(n, in)) throw DomainViolation("phi_inverse: " + in.str() + " is not in B2(" + std::to_string(n) + ")");
    const int t = in.t;
    std::vector<int> lam;
    for (int i = 1; i <= t; ++i) lam.push_back(in.nu.part(static_cast<std::size_t>(i)) + (t + 1 - i));
    std::vector<int> pi;
    for (std::size_t i = static_cast<std::size_t>(t); i < in.nu.length(); ++i) pi.push_back(in.nu.parts()[i]);
    B1Element out{DistinctPartition(std::move(lam)), Partition(std::move(pi))};
    detail::ensure_output(is_b1(n, out), "phi_inverse");
    return out;
}

// ---------------------------------------------------------------------------
// psi : subsets of {-n..-1} -> distinct partitions with parts <= n
// ---------------------------------------------------------------------------

inline bool is_negative_subset(int n, const SignedDistinctSet& mu)
{
    return mu.bound() == n && std::all_of(mu.elements().begin(), mu.elements().end(), [](int v) { return v < 0; });
}

/// Negation of the complement of mu in {-n, ..., -1}; |mu| = |psi(mu)| - n(n+1)/2.
inline DistinctPartition psi(int n, const SignedDistinctSet& mu)
{
    if (!is_negative_subset(n, mu)) throw DomainViolation("psi: " + mu.str() + " is not a subset of {-n..-1}");
    auto comp = detail::negated(detail::complement_in_range(-n, -1, mu.elements()));
    // complement is increasing in the negatives, so its negation is already decreasing
    DistinctPartition out(std::move(comp));
    detail::ensure_output(out.largest() <= n, "psi");
    return out;
}

inline SignedDistinctSet psi_inverse(int n, const DistinctPartition& d)
{
    if (d.largest() > n) throw DomainViolation("psi_inverse: part exceeds n in " + d.str());
    std::vector<int> neg = detail::negated(d.parts());
    return {n, detail::complement_in_range(-n, -1, neg)};
}

// ---------------------------------------------------------------------------
// tau : P_>(n) -> P_<=(n), lambda -> -(N \ lambda)
// ---------------------------------------------------------------------------

namespace detail {

inline SignedDistinctSet negated_complement(int n, const SignedDistinctSet& s)
{
    auto comp = negated(complement_in_range(-n, n, s.elements()));
    std::reverse(comp.begin(), comp.end());
    return {n, std::move(comp)};
}

} // namespace detail

inline SignedDistinctSet tau(int n, const SignedDistinctSet& lam)
{
    if (!is_p_gt(n, lam)) throw DomainViolation("tau: " + lam.str() + " is not in P_>(" + std::to_string(n) + ")");
    auto out = detail::negated_complement(n, lam);
    detail::ensure_output(is_p_le(n, out), "tau");
    return out;
}

/// The same construction applied from the small side.
inline SignedDistinctSet tau_inverse(int n, const SignedDistinctSet& kappa)
{
    if (!is_p_le(n, kappa)) throw DomainViolation("tau_inverse: " + kappa.str() + " has more than n elements");
    auto out = detail::negated_complement(n, kappa);
    detail::ensure_output(is_p_gt(n, out), "tau_inverse");
    return out;
}

// ---------------------------------------------------------------------------
// rho : P_>(n) -> B3(n)
// ---------------------------------------------------------------------------

/// Subtracts the run -n, -n+1, ... from the increasingly indexed elements.
inline B3Element rho(int n, const SignedDistinctSet& lam)
{
    if (!is_p_gt(n, lam)) throw DomainViolation("rho: " + lam.str() + " is not in P_>(" + std::to_string(n) + ")");
    const int len = static_cast<int>(lam.size());
    const int t = len - (n + 1);
    std::vector<int> nu;
    for (int i = 1; i <= len; ++i) nu.push_back(lam.element(static_cast<std::size_t>(i)) - (-n + i - 1));
    B3Element out{n, t, Partition::from_multiset(std::move(nu))};
    detail::ensure_output(is_b3(n, out), "rho");
    return out;
}

inline SignedDistinctSet rho_inverse(int n, const B3Element& in)
{
    if (!is_b3(n, in)) throw DomainViolation("rho_inverse: " + in.str() + " is not in B3(" + std::to_string(n) + ")");
    const int len = n + 1 + in.t;
    // nu padded with zeros and read increasingly
    std::vector<int> inc(static_cast<std::size_t>(len), 0);
    const auto& parts = in.nu.parts();
    for (std::size_t j = 0; j < parts.size(); ++j) inc[static_cast<std::size_t>(len) - 1 - j] = parts[j];
    std::vector<int> lam;
    for (int i = 1; i <= len; ++i) lam.push_back(inc[static_cast<std::size_t>(i - 1)] + (-n + i - 1));
    SignedDistinctSet out(n, std::move(lam));
    detail::ensure_output(is_p_gt(n, out), "rho_inverse");
    return out;
}

// ---------------------------------------------------------------------------
// durfee_split : DS_k -> OE_k
// ---------------------------------------------------------------------------

inline OEElement durfee_split(const Partition& lam)
{
    if (lam.empty() || lam.largest() % 2 == 0 || !is_ds_shape(lam))
        throw DomainViolation("durfee_split: " + lam.str() + " is not in any DS_k");
    const int k = (lam.largest() - 1) / 2;
    OEElement out{k, Partition(std::vector<int>(lam.parts().begin() + 1, lam.parts().end()))};
    detail::ensure_output(is_oe(k, out), "durfee_split");
    return out;
}

/// Attaches mu on top of nu.
inline Partition durfee_join(const OEElement& e)
{
    if (!is_oe(e.k, e)) throw DomainViolation("durfee_join: " + e.str() + " is not in OE_k");
    std::vector<int> parts{e.mu()};
    parts.insert(parts.end(), e.nu.parts().begin(), e.nu.parts().end());
    Partition out(std::move(parts));
    detail::ensure_output(is_ds(e.k, out), "durfee_join");
    return out;
}

// ---------------------------------------------------------------------------
// nu3 : O_{n,k} -> DO_{n,k}
// ---------------------------------------------------------------------------

/// Intermediate stages of the O -> DO map.
struct Nu3Trace {
    Partition nu_star;
    int mu = 0;
    Partition nu_prime;
    DOElement image;
};

namespace detail {

/// Ferrers diagram as row lengths; supports adding a column on the right and a row below.
class Diagram {
public:
    explicit Diagram(const Partition& p) : rows_(p.parts()) {}

    /// Column of the given height immediately right of the current diagram.
    void add_column(int height)
    {
        const int col = rows_.empty() ? 0 : rows_.front();
        while (rows_.size() < static_cast<std::size_t>(height)) rows_.push_back(0);
        for (int i = 0; i < height; ++i) {
            if (rows_[static_cast<std::size_t>(i)] != col) throw std::logic_error("column placement breaks the diagram");
            ++rows_[static_cast<std::size_t>(i)];
        }
    }

    void add_row(int width)
    {
        if (width == 0) return;
        if (!rows_.empty() && rows_.back() < width) throw std::logic_error("row placement breaks the diagram");
        rows_.push_back(width);
    }

    Partition partition() const { return Partition::from_multiset(rows_); }

private:
    std::vector<int> rows_;
};

} // namespace detail

inline Nu3Trace nu3_trace(int n, int k, const OElement& in)
{
    if (!is_o(n, k, in)) throw DomainViolation("nu3_forward: " + in.str() + " is not in O_{n,k}");
    // pi's parts are processed largest first: 2s+1 contributes a column of height s+1
    // to the right of the diagram and a row of width s below it.
    detail::Diagram dia(rectangle(n));
    for (int part : in.pi.parts()) {
        const int s = (part - 1) / 2;
        dia.add_column(s + 1);
        dia.add_row(s);
    }
    Nu3Trace tr;
    tr.nu_star = dia.partition();
    tr.mu = tr.nu_star.largest();
    tr.nu_prime = Partition(std::vector<int>(tr.nu_star.parts().begin() + (tr.nu_star.empty() ? 0 : 1),
                                             tr.nu_star.parts().end()));
    if (tr.mu != n + k) throw std::logic_error("nu3: largest part of the grown diagram is not n+k");
    if (!is_self_conjugate(tr.nu_prime)) throw std::logic_error("nu3: remainder is not self-conjugate");
    if (durfee_size(tr.nu_prime) != n) throw std::logic_error("nu3: remainder has Durfee size != n");
    if (tr.nu_prime.largest() > n + k) throw std::logic_error("nu3: remainder exceeds n+k");
    tr.image = DOElement{tr.mu, selfconj_to_distinct_odd(tr.nu_prime)};
    detail::ensure_output(is_do(n, k, tr.image), "nu3_forward");
    return tr;
}

inline DOElement nu3_forward(int n, int k, const OElement& in) { return nu3_trace(n, k, in).image; }

inline OElement nu3_inverse(int n, int k, const DOElement& in)
{
    if (!is_do(n, k, in)) throw DomainViolation("nu3_inverse: " + in.str() + " is not in DO_{n,k}");
    const Partition nu_prime = distinct_odd_to_selfconj(in.nu);
    // rows below the Durfee square are the nonzero s values; the rest of the k parts are 1s
    std::vector<int> pi;
    for (std::size_t i = static_cast<std::size_t>(n); i < nu_prime.length(); ++i) pi.push_back(2 * nu_prime.parts()[i] + 1);
    while (pi.size() < static_cast<std::size_t>(k)) pi.push_back(1);
    OElement out{n, Partition(std::move(pi))};
    detail::ensure_output(is_o(n, k, out), "nu3_inverse");
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive checking
// ---------------------------------------------------------------------------

struct BijectionReport {
    std::string name;
    std::size_t domain_size = 0;
    std::size_t codomain_size = 0;
    std::size_t roundtrip_failures = 0;
    std::size_t weight_violations = 0;
    std::size_t validation_failures = 0; // images outside the codomain, or preimages outside the domain
    std::size_t coverage_failures = 0;   // image set differs from the enumerated codomain
    bool weight_multisets_equal = true;
    std::optional<std::string> witness;

    bool passed() const
    {
        return roundtrip_failures == 0 && weight_violations == 0 && validation_failures == 0 &&
               coverage_failures == 0 && weight_multisets_equal && domain_size == codomain_size;
    }

    void merge(const BijectionReport& o)
    {
        domain_size += o.domain_size;
        codomain_size += o.codomain_size;
        roundtrip_failures += o.roundtrip_failures;
        weight_violations += o.weight_violations;
        validation_failures += o.validation_failures;
        coverage_failures += o.coverage_failures;
        weight_multisets_equal = weight_multisets_equal && o.weight_multisets_equal;
        if (!witness) witness = o.witness;
    }
};

inline const std::vector<std::string>& bijection_names()
{
    static const std::vector<std::string> names{"phi", "psi", "tau", "rho", "durfee_split", "nu3"};
    return names;
}

namespace detail {

/// Runs forward/inverse over an enumerated domain and an independently enumerated codomain.
/// `shift` is the constant with weight(x) == weight(forward(x)) + shift.
template <class D, class C, class Fwd, class Inv, class InDom, class InCod, class WD, class WC>
BijectionReport run_check(std::string name, const std::vector<D>& domain, const std::vector<C>& codomain, Fwd fwd,
                          Inv inv, InDom in_domain, InCod in_codomain, WD wd, WC wc, long shift)
{
    BijectionReport r;
    r.name = std::move(name);
    r.domain_size = domain.size();
    r.codomain_size = codomain.size();
    auto note = [&](const std::string& s) {
        if (!r.witness) r.witness = s;
    };

    std::multiset<long> wdom;
    std::multiset<long> wimg;
    std::set<C> images;
    for (const auto& x : domain) {
        wdom.insert(wd(x));
        try {
            const C y = fwd(x);
            if (!in_codomain(y)) {
                ++r.validation_failures;
                note("image outside codomain for input " + x.str());
            }
            if (wd(x) != wc(y) + shift) {
                ++r.weight_violations;
                note("weight law fails for input " + x.str());
            }
            wimg.insert(wc(y) + shift);
            images.insert(y);
            const D back = inv(y);
            if (!(back == x)) {
                ++r.roundtrip_failures;
                note("inverse(forward(x)) != x for x = " + x.str());
            }
        } catch (const std::exception& e) {
            ++r.roundtrip_failures;
            note("exception on input " + x.str() + ": " + e.what());
        }
    }
    std::set<C> cod(codomain.begin(), codomain.end());
    if (images != cod) {
        ++r.coverage_failures;
        note("forward image does not coincide with the codomain");
    }
    for (const auto& y : codomain) {
        try {
            const D x = inv(y);
            if (!in_domain(x)) {
                ++r.validation_failures;
                note("preimage outside domain for " + y.str());
            }
            if (!(fwd(x) == y)) {
                ++r.roundtrip_failures;
                note("forward(inverse(y)) != y for y = " + y.str());
            }
        } catch (const std::exception& e) {
            ++r.roundtrip_failures;
            note("exception on codomain element " + y.str() + ": " + e.what());
        }
    }
    std::multiset<long> wcod;
    for (const auto& y : codomain) wcod.insert(wc(y) + shift);
    r.weight_multisets_equal = wdom == wimg && wdom == wcod;
    return r;
}

inline std::vector<SignedDistinctSet> negative_subsets(int n)
{
    std::vector<SignedDistinctSet> out;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        std::vector<int> v;
        for (int b = n - 1; b >= 0; --b)
            if (mask & (1UL << b)) v.push_back(-(b + 1));
        out.emplace_back(n, std::move(v));
    }
    return out;
}

inline std::vector<DistinctPartition> distinct_bounded(int n)
{
    std::vector<DistinctPartition> out;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        std::vector<int> v;
        for (int b = n - 1; b >= 0; --b)
            if (mask & (1UL << b)) v.push_back(b + 1);
        out.emplace_back(std::move(v));
    }
    return out;
}

} // namespace detail

/// Exhaustive check of a named bijection.
///
/// phi, psi, tau, rho take `n`. durfee_split takes an optional `k` (all k otherwise) and
/// needs a weight cap. nu3 takes either `n` and `k`, or `max_nk` to sweep all n + k <= max_nk,
/// and needs a weight cap.
inline BijectionReport check_bijection(const std::string& name, const Params& params,
                                       std::optional<long> weight_cap = std::nullopt)
{
    auto wt = [](const auto& x) { return static_cast<long>(x.weight()); };
    if (name == "phi") {
        const int n = static_cast<int>(require_param(params, "n"));
        return detail::run_check(
            name, enumerate_b1(n), enumerate_b2(n), [&](const B1Element& x) { return phi(n, x); },
            [&](const B2Element& y) { return phi_inverse(n, y); }, [&](const B1Element& x) { return is_b1(n, x); },
            [&](const B2Element& y) { return is_b2(n, y); }, wt, wt, 0);
    }
    if (name == "psi") {
        const int n = static_cast<int>(require_param(params, "n"));
        return detail::run_check(
            name, detail::negative_subsets(n), detail::distinct_bounded(n),
            [&](const SignedDistinctSet& x) { return psi(n, x); },
            [&](const DistinctPartition& y) { return psi_inverse(n, y); },
            [&](const SignedDistinctSet& x) { return is_negative_subset(n, x); },
            [&](const DistinctPartition& y) { return y.largest() <= n; }, wt, wt, -static_cast<long>(n) * (n + 1) / 2);
    }
    if (name == "tau") {
        const int n = static_cast<int>(require_param(params, "n"));
        return detail::run_check(
            name, enumerate_p_gt(n), enumerate_p_le(n), [&](const SignedDistinctSet& x) { return tau(n, x); },
            [&](const SignedDistinctSet& y) { return tau_inverse(n, y); },
            [&](const SignedDistinctSet& x) { return is_p_gt(n, x); },
            [&](const SignedDistinctSet& y) { return is_p_le(n, y); }, wt, wt, 0);
    }
    if (name == "rho") {
        const int n = static_cast<int>(require_param(params, "n"));
        return detail::run_check(
            name, enumerate_p_gt(n), enumerate_b3(n), [&](const SignedDistinctSet& x) { return rho(n, x); },
            [&](const B3Element& y) { return rho_inverse(n, y); },
            [&](const SignedDistinctSet& x) { return is_p_gt(n, x); }, [&](const B3Element& y) { return is_b3(n, y); },
            wt, wt, 0);
    }
    if (name == "durfee_split") {
        if (!weight_cap) throw MissingParam("durfee_split check requires a weight cap");
        auto k = get_param(params, "k");
        std::optional<int> kk = k ? std::optional<int>(static_cast<int>(*k)) : std::nullopt;
        return detail::run_check(
            name, enumerate_ds(kk, *weight_cap), enumerate_oe(kk, *weight_cap),
            [](const Partition& x) { return durfee_split(x); }, [](const OEElement& y) { return durfee_join(y); },
            [&](const Partition& x) { return kk ? is_ds(*kk, x) : (x.largest() % 2 == 1 && is_ds_shape(x)); },
            [&](const OEElement& y) { return is_oe(kk ? *kk : y.k, y); }, wt, wt, 0);
    }
    if (name == "nu3") {
        if (!weight_cap) throw MissingParam("nu3 check requires a weight cap");
        auto one = [&](int n, int k) {
            return detail::run_check(
                name, enumerate_o(n, k, *weight_cap), enumerate_do(n, k, *weight_cap),
                [&](const OElement& x) { return nu3_forward(n, k, x); },
                [&](const DOElement& y) { return nu3_inverse(n, k, y); },
                [&](const OElement& x) { return is_o(n, k, x); }, [&](const DOElement& y) { return is_do(n, k, y); },
                wt, wt, 0);
        };
        if (auto max_nk = get_param(params, "max_nk")) {
            BijectionReport total;
            total.name = name;
            for (int s = 0; s <= *max_nk; ++s)
                for (int n = 0; n <= s; ++n) total.merge(one(n, s - n));
            return total;
        }
        return one(static_cast<int>(require_param(params, "n")), static_cast<int>(require_param(params, "k")));
    }
    throw UnknownBijection("unknown bijection '" + name + "'");
}

} // namespace qpart
