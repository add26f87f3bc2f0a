#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "qpart/error.hpp"

namespace qpart {

/// Integer partition: weakly decreasing positive parts.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw InvalidPartition("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidPartition("partition parts must be weakly decreasing");
        }
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    /// Sorts decreasingly and drops zero entries.
    static Partition from_multiset(std::vector<int> parts)
    {
        std::erase(parts, 0);
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    int largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }
    int smallest() const noexcept { return parts_.empty() ? 0 : parts_.back(); }
    long weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

    /// 1-based part access; zero beyond the last part.
    int part(std::size_t i) const noexcept { return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0; }

    std::size_t multiplicity(int v) const
    {
        return static_cast<std::size_t>(std::count(parts_.begin(), parts_.end(), v));
    }

    friend auto operator<=>(const Partition&, const Partition&) = default;

    std::string str() const
    {
        std::string out = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(parts_[i]);
        }
        return out + ")";
    }

private:
    std::vector<int> parts_;
};

/// Partition with strictly decreasing parts.
class DistinctPartition {
public:
    DistinctPartition() = default;

    explicit DistinctPartition(Partition p) : p_(std::move(p))
    {
        const auto& v = p_.parts();
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] == v[i - 1]) throw InvalidPartition("distinct partition has a repeated part " + std::to_string(v[i]));
    }
    explicit DistinctPartition(std::vector<int> parts) : DistinctPartition(Partition(std::move(parts))) {}
    DistinctPartition(std::initializer_list<int> parts) : DistinctPartition(Partition(parts)) {}

    const Partition& partition() const noexcept { return p_; }
    const std::vector<int>& parts() const noexcept { return p_.parts(); }
    std::size_t length() const noexcept { return p_.length(); }
    bool empty() const noexcept { return p_.empty(); }
    int largest() const noexcept { return p_.largest(); }
    int smallest() const noexcept { return p_.smallest(); }
    long weight() const noexcept { return p_.weight(); }
    int part(std::size_t i) const noexcept { return p_.part(i); }

    friend auto operator<=>(const DistinctPartition&, const DistinctPartition&) = default;
    std::string str() const { return p_.str(); }

private:
    Partition p_;
};

/// A set of distinct integers drawn from {-n, ..., n}, kept in increasing order.
/// Its weight (the element sum) may be negative.
class SignedDistinctSet {
public:
    SignedDistinctSet() = default;

    SignedDistinctSet(int n, std::vector<int> elements) : n_(n), elems_(std::move(elements))
    {
        if (n_ < 0) throw InvalidPartition("signed set bound must be nonnegative");
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (elems_[i] < -n_ || elems_[i] > n_)
                throw InvalidPartition("element " + std::to_string(elems_[i]) + " outside [-n, n]");
            if (i > 0 && elems_[i] <= elems_[i - 1]) throw InvalidPartition("signed set must be strictly increasing");
        }
    }

    /// Sorts the input; rejects duplicates.
    static SignedDistinctSet from_unsorted(int n, std::vector<int> elements)
    {
        std::sort(elements.begin(), elements.end());
        return {n, std::move(elements)};
    }

    int bound() const noexcept { return n_; }
    const std::vector<int>& elements() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    long weight() const noexcept { return std::accumulate(elems_.begin(), elems_.end(), 0L); }
    bool contains(int v) const { return std::binary_search(elems_.begin(), elems_.end(), v); }

    /// 1-based, smallest element first.
    int element(std::size_t i) const { return elems_.at(i - 1); }

    friend auto operator<=>(const SignedDistinctSet&, const SignedDistinctSet&) = default;

    std::string str() const
    {
        std::string out = "{";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(elems_[i]);
        }
        return out + "}";
    }

private:
    int n_ = 0;
    std::vector<int> elems_;
};

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

/// Transpose of the Ferrers diagram.
inline Partition conjugate(const Partition& p)
{
    std::vector<int> out(static_cast<std::size_t>(p.largest()), 0);
    for (int part : p.parts())
        for (int j = 0; j < part; ++j) ++out[static_cast<std::size_t>(j)];
    return Partition(std::move(out));
}

/// Side of the largest square fitting in the Ferrers diagram.
inline int durfee_size(const Partition& p)
{
    int d = 0;
    while (static_cast<std::size_t>(d) < p.length() && p.part(static_cast<std::size_t>(d) + 1) >= d + 1) ++d;
    return d;
}

inline bool is_self_conjugate(const Partition& p) { return conjugate(p) == p; }

inline bool all_odd(const Partition& p)
{
    return std::all_of(p.parts().begin(), p.parts().end(), [](int v) { return v % 2 != 0; });
}

/// Every distinct part occurs an even number of times.
inline bool even_multiplicities(const Partition& p)
{
    const auto& v = p.parts();
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) % 2 != 0) return false;
        i = j;
    }
    return true;
}

inline bool is_distinct(const Partition& p)
{
    return std::adjacent_find(p.parts().begin(), p.parts().end()) == p.parts().end();
}

/// Principal-hook map: part i of the result is 2(p_i - i) + 1 for i up to the Durfee size.
inline DistinctPartition selfconj_to_distinct_odd(const Partition& p)
{
    if (!is_self_conjugate(p)) throw NotSelfConjugate(p.str() + " is not self-conjugate");
    const int d = durfee_size(p);
    std::vector<int> hooks;
    hooks.reserve(static_cast<std::size_t>(d));
    for (int i = 1; i <= d; ++i) hooks.push_back(2 * (p.part(static_cast<std::size_t>(i)) - i) + 1);
    return DistinctPartition(std::move(hooks));
}

/// Folds distinct odd parts back into principal hooks.
inline Partition distinct_odd_to_selfconj(const DistinctPartition& h)
{
    const auto& v = h.parts();
    for (int x : v)
        if (x % 2 == 0) throw DomainViolation("hook lengths must be odd, got " + std::to_string(x));
    const int d = static_cast<int>(v.size());
    // Row i (1-based) has length arm_i + i for i <= d; below the square, row j counts the
    // columns i <= d whose length arm_i + i reaches j.
    std::vector<int> rows;
    for (int i = 1; i <= d; ++i) rows.push_back((v[static_cast<std::size_t>(i - 1)] - 1) / 2 + i);
    const int height = d == 0 ? 0 : rows.front();
    for (int j = d + 1; j <= height; ++j) {
        int c = 0;
        for (int i = 1; i <= d; ++i)
            if (rows[static_cast<std::size_t>(i - 1)] >= j) ++c;
        rows.push_back(c);
    }
    return Partition(std::move(rows));
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
void partitions_rec(std::vector<int>& cur, long remaining, int max_part, std::size_t max_parts, F& f)
{
    f(Partition(cur));
    if (cur.size() >= max_parts) return;
    for (int v = static_cast<int>(std::min<long>(max_part, remaining)); v >= 1; --v) {
        cur.push_back(v);
        partitions_rec(cur, remaining - v, v, max_parts, f);
        cur.pop_back();
    }
}

} // namespace detail

/// Calls f on every partition with weight <= max_weight, parts <= max_part and at most
/// max_parts parts, each exactly once.
template <class F>
void for_each_partition(long max_weight, int max_part, std::size_t max_parts, F&& f)
{
    if (max_weight < 0) return;
    std::vector<int> cur;
    detail::partitions_rec(cur, max_weight, std::max(max_part, 0), max_parts, f);
}

/// Every partition fitting in a max_parts x max_part box.
template <class F>
void for_each_partition_in_box(int max_parts, int max_part, F&& f)
{
    if (max_parts < 0 || max_part < 0) throw Error("box bounds must be nonnegative");
    for_each_partition(static_cast<long>(max_parts) * max_part, max_part, static_cast<std::size_t>(max_parts), f);
}

inline std::vector<Partition> enumerate_partitions(int max_parts, int max_part)
{
    std::vector<Partition> out;
    for_each_partition_in_box(max_parts, max_part, [&](const Partition& p) { out.push_back(p); });
    return out;
}

/// Every partition of exactly n.
template <class F>
void for_each_partition_of(long n, F&& f)
{
    for_each_partition(n, static_cast<int>(n), static_cast<std::size_t>(std::max(n, 0L)), [&](const Partition& p) {
        if (p.weight() == n) f(p);
    });
}

/// All subsets of {-n, ..., n}.
template <class F>
void for_each_signed_set(int n, F&& f)
{
    if (n < 0) throw Error("signed set bound must be nonnegative");
    if (n > 14) throw Error("signed set enumeration limited to n <= 14");
    const int width = 2 * n + 1;
    std::vector<int> elems;
    for (unsigned long mask = 0; mask < (1UL << width); ++mask) {
        elems.clear();
        for (int b = 0; b < width; ++b)
            if (mask & (1UL << b)) elems.push_back(b - n);
        f(SignedDistinctSet(n, elems));
    }
}

// ---------------------------------------------------------------------------
// Text forms: "(5,3)" for partitions, "{-4,-2,0}" for signed sets.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> parse_int_list(std::string_view text, char open, char close)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.front() != open || s.back() != close)
        throw Error("expected " + std::string(1, open) + "..." + std::string(1, close) + ", got '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<int> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw Error("bad integer '" + tok + "'");
        }
        if (used != tok.size()) throw Error("bad integer '" + tok + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace detail

inline Partition parse_partition(std::string_view text)
{
    return Partition(detail::parse_int_list(text, '(', ')'));
}

inline SignedDistinctSet parse_signed_set(int n, std::string_view text)
{
    return SignedDistinctSet(n, detail::parse_int_list(text, '{', '}'));
}

} // namespace qpart
