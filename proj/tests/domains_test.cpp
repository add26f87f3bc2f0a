#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qpart/domains.hpp"

using namespace qpart;

namespace {

QSeries gf_of(const std::vector<DomainElement>& elems)
{
    std::map<int, BigInt> m;
    for (const auto& e : elems) m[static_cast<int>(weight(e))] += 1;
    return QSeries::from_map(m);
}

QSeries neg_q_poch_sq(int n)
{
    QSeries p = QSeries::constant(1);
    for (int k = 1; k <= n; ++k) p = p * (QSeries::constant(1) + QSeries::monomial(1, k));
    return p * p;
}

// Direct reading of the DS definition, cell by cell.
bool ds_by_definition(const std::vector<int>& desc)
{
    if (desc.empty()) return false;
    int d = 0;
    while (d < static_cast<int>(desc.size()) && desc[static_cast<std::size_t>(d)] >= d + 1) ++d;
    if (d % 2 == 0) return false;
    auto odd_even_mult = [](const std::vector<int>& v) {
        std::map<int, int> mult;
        for (int x : v) ++mult[x];
        for (auto [x, m] : mult)
            if (x % 2 == 0 || m % 2 == 1) return false;
        return true;
    };
    std::vector<int> below(desc.begin() + d, desc.end());
    std::vector<int> cols;
    for (int c = d + 1; c <= desc.front(); ++c) {
        int h = 0;
        for (int r = 0; r < d; ++r) h += desc[static_cast<std::size_t>(r)] >= c ? 1 : 0;
        cols.push_back(h);
    }
    return odd_even_mult(below) && odd_even_mult(cols);
}

} // namespace

TEST(Domains, PCountsAndHalving)
{
    EXPECT_EQ(enumerate_domain("P", {{"n", 1}}).size(), 8u);
    EXPECT_EQ(enumerate_domain("P_gt", {{"n", 1}}).size(), 4u);
    for (int n = 0; n <= 7; ++n) EXPECT_EQ(enumerate_p_gt(n).size(), std::size_t{1} << (2 * n)) << n;
}

TEST(Domains, SignedGeneratingFunctions)
{
    for (int n = 0; n <= 8; ++n) {
        const int shift = -n * (n + 1) / 2;
        const QSeries full = QSeries::constant(2) * neg_q_poch_sq(n).shifted(shift);
        EXPECT_EQ(gf_of(enumerate_domain("P", {{"n", n}})), full) << n;
        EXPECT_EQ(gf_of(enumerate_domain("P_gt", {{"n", n}})), neg_q_poch_sq(n).shifted(shift)) << n;
        if (n > 0) {
            EXPECT_LT(gf_of(enumerate_domain("P_gt", {{"n", n}})).valuation(), 0);
        }
    }
}

TEST(Domains, B1SmallCase)
{
    const auto b1 = enumerate_b1(1);
    EXPECT_EQ(b1.size(), 4u);
    std::map<int, BigInt> m;
    for (const auto& e : b1) m[static_cast<int>(e.weight())] += 1;
    // 1 + q + q^2 + q from the two summands at n = 1
    EXPECT_EQ(QSeries::from_map(m), QSeries::from_dense({1, 2, 1}, 0));
}

TEST(Domains, B1AgainstDefinition)
{
    for (int n = 0; n <= 4; ++n) {
        // brute force: every distinct lambda <= n and every partition pi in a generous box
        std::set<B1Element> expect;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> lam;
            for (int v = n; v >= 1; --v)
                if (mask & (1u << (v - 1))) lam.push_back(v);
            for (const auto& pi : enumerate_partitions(n + 2, n + 1)) {
                B1Element e{DistinctPartition(lam), pi};
                const bool pi_ok = lam.empty() ? pi.largest() <= n : pi.largest() < lam.back();
                if (pi.length() <= static_cast<std::size_t>(n + 1) && pi_ok) expect.insert(e);
            }
        }
        const auto got = enumerate_b1(n);
        EXPECT_EQ(std::set<B1Element>(got.begin(), got.end()), expect);
        EXPECT_EQ(got.size(), expect.size());
    }
}

TEST(Domains, B2AndB3Sizes)
{
    for (int n = 0; n <= 6; ++n) {
        BigInt total = 0;
        for (int t = 0; t <= n; ++t) total += binomial(2 * n + 1, n - t);
        EXPECT_EQ(BigInt(enumerate_b2(n).size()), total);
        EXPECT_EQ(enumerate_b3(n).size(), enumerate_b2(n).size());
        // |B3(n)| = |P_gt(n)| = 4^n
        EXPECT_EQ(BigInt(enumerate_b3(n).size()), BigInt(1) << (2 * n));
    }
}

TEST(Domains, DSMatchesDefinition)
{
    const long cap = 25;
    std::set<Partition> expect;
    for (int w = 1; w <= cap; ++w)
        oracle::partitions_of(w, [&](const std::vector<int>& asc) {
            std::vector<int> desc(asc.rbegin(), asc.rend());
            if (ds_by_definition(desc)) expect.insert(Partition(desc));
        });
    const auto got = enumerate_ds(std::nullopt, cap);
    EXPECT_EQ(std::set<Partition>(got.begin(), got.end()), expect);
    EXPECT_EQ(got.size(), expect.size());
    EXPECT_TRUE(is_ds(1, Partition{3}));
    EXPECT_TRUE(is_ds(1, Partition{3, 1, 1}));
    EXPECT_FALSE(is_ds(1, Partition{3, 1}));
    EXPECT_FALSE(is_ds(1, Partition{3, 3}));
}

TEST(Domains, OEAndDSAreEquinumerous)
{
    for (int k = 0; k <= 5; ++k) {
        const auto ds = enumerate_ds(k, 25);
        const auto oe = enumerate_oe(k, 25);
        EXPECT_EQ(ds.size(), oe.size()) << k;
        for (const auto& e : oe) EXPECT_TRUE(is_oe(k, e));
    }
}

TEST(Domains, OAndDOGeneratingFunctions)
{
    // O_{n,k}: q^{n(n+1)} times odd partitions with exactly k parts <= 2n+1.
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= 3; ++k) {
            const long cap = 30;
            std::size_t expect = 0;
            for (int w = 0; w + n * (n + 1) <= cap; ++w)
                oracle::partitions_of(w, [&](const std::vector<int>& asc) {
                    const bool ok = static_cast<int>(asc.size()) == k &&
                                    std::all_of(asc.begin(), asc.end(), [&](int x) { return x % 2 == 1 && x <= 2 * n + 1; });
                    expect += ok ? 1 : 0;
                });
            EXPECT_EQ(enumerate_o(n, k, cap).size(), expect) << n << "," << k;
            for (const auto& e : enumerate_do(n, k, cap)) EXPECT_TRUE(is_do(n, k, e));
        }
}

TEST(Domains, ValidatorsAcceptEnumeratedAndRejectMutants)
{
    const Params n3{{"n", 3}};
    for (const char* name : {"B1", "B2", "B3", "P", "P_gt", "P_le"})
        for (const auto& e : enumerate_domain(name, n3)) EXPECT_TRUE(validate_domain(name, n3, e)) << name;
    for (const char* name : {"DS", "OE"})
        for (const auto& e : enumerate_domain(name, {}, 20)) EXPECT_TRUE(validate_domain(name, {}, e)) << name;
    const Params nk{{"n", 2}, {"k", 2}};
    for (const char* name : {"O", "DO"})
        for (const auto& e : enumerate_domain(name, nk, 30)) EXPECT_TRUE(validate_domain(name, nk, e)) << name;

    // one part changed
    EXPECT_FALSE(validate_domain("B1", n3, B1Element{DistinctPartition({3, 2}), Partition{2}}));
    EXPECT_FALSE(validate_domain("B1", n3, B1Element{DistinctPartition({4}), Partition{}}));
    EXPECT_FALSE(validate_domain("B2", n3, B2Element{1, Partition{3}}));
    EXPECT_FALSE(validate_domain("P_gt", n3, SignedDistinctSet(3, {-3, 0, 3})));
    EXPECT_FALSE(validate_domain("DS", {}, Partition{3, 2}));
    EXPECT_FALSE(validate_domain("OE", {}, OEElement{1, Partition{1}}));
    EXPECT_FALSE(validate_domain("O", nk, OElement{2, Partition{7, 1}}));
    EXPECT_FALSE(validate_domain("O", nk, OElement{2, Partition{3, 2}}));
    EXPECT_FALSE(validate_domain("DO", nk, DOElement{4, DistinctPartition({9, 1})}));
    EXPECT_FALSE(validate_domain("DO", nk, DOElement{4, DistinctPartition({3})}));
    // wrong element type for the family
    EXPECT_FALSE(validate_domain("B2", n3, B1Element{}));
}

TEST(Domains, Errors)
{
    EXPECT_THROW(enumerate_domain("B9", {{"n", 1}}), UnknownDomain);
    EXPECT_THROW(enumerate_domain("B1", {}), MissingParam);
    EXPECT_THROW(enumerate_domain("DS", {}), MissingParam);
    EXPECT_THROW(enumerate_domain("O", {{"n", 1}}, 10), MissingParam);
}
