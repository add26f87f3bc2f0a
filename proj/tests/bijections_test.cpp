#include <gtest/gtest.h>

#include "qpart/bijections.hpp"

using namespace qpart;

TEST(Phi, WorkedExample)
{
    const PhiTrace tr = phi_trace(5, B1Element{DistinctPartition({5, 3}), Partition{2, 2, 2, 1, 1}});
    EXPECT_EQ(tr.ell, 2);
    EXPECT_EQ(tr.mu, DistinctPartition({2, 1}));
    EXPECT_EQ(tr.lambda_star, (std::vector<int>{3, 2}));
    EXPECT_EQ(tr.image.t, 2);
    EXPECT_EQ(tr.image.nu, Partition({3, 2, 2, 2, 2, 1, 1}));
    EXPECT_EQ(tr.image.weight(), 16);
}

TEST(Phi, EmptyPair)
{
    for (int n = 0; n <= 4; ++n) {
        const B2Element img = phi(n, B1Element{});
        EXPECT_EQ(img.t, 0);
        EXPECT_TRUE(img.nu.empty());
    }
}

TEST(Phi, RejectsOutsideDomain)
{
    EXPECT_THROW(phi(3, B1Element{DistinctPartition({3}), Partition{3}}), DomainViolation);
    EXPECT_THROW(phi_inverse(3, B2Element{4, Partition{}}), DomainViolation);
}

TEST(Phi, Exhaustive)
{
    for (int n = 0; n <= 5; ++n) {
        const BijectionReport r = check_bijection("phi", {{"n", n}});
        EXPECT_TRUE(r.passed()) << n << " " << r.witness.value_or("");
        EXPECT_EQ(r.domain_size, r.codomain_size);
    }
}

TEST(Psi, Examples)
{
    EXPECT_EQ(psi(2, SignedDistinctSet(2, {})), DistinctPartition({2, 1}));
    EXPECT_EQ(psi(2, SignedDistinctSet(2, {-2, -1})), DistinctPartition{});
    const SignedDistinctSet mu(3, {-2});
    const DistinctPartition img = psi(3, mu);
    EXPECT_EQ(img, DistinctPartition({3, 1}));
    EXPECT_EQ(mu.weight(), -6 + img.weight());
    EXPECT_THROW(psi(3, SignedDistinctSet(3, {1})), DomainViolation);
}

TEST(Psi, Exhaustive)
{
    for (int n = 0; n <= 8; ++n) EXPECT_TRUE(check_bijection("psi", {{"n", n}}).passed()) << n;
}

TEST(Tau, Examples)
{
    EXPECT_EQ(tau(1, SignedDistinctSet(1, {-1, 0, 1})), SignedDistinctSet(1, {}));
    EXPECT_EQ(tau(1, SignedDistinctSet(1, {0, 1})), SignedDistinctSet(1, {1}));
    EXPECT_THROW(tau(1, SignedDistinctSet(1, {1})), DomainViolation);
    const BijectionReport r = check_bijection("tau", {{"n", 1}});
    EXPECT_EQ(r.domain_size, 4u);
}

TEST(Tau, Exhaustive)
{
    for (int n = 0; n <= 6; ++n) {
        const BijectionReport r = check_bijection("tau", {{"n", n}});
        EXPECT_TRUE(r.passed()) << n;
        EXPECT_TRUE(r.weight_multisets_equal);
    }
}

TEST(Tau, SameConstructionReturnsInput)
{
    for (const auto& lam : enumerate_p_gt(4)) EXPECT_EQ(detail::negated_complement(4, tau(4, lam)), lam);
}

TEST(Rho, WorkedExample)
{
    const SignedDistinctSet lam(5, {-4, -2, -1, 0, 2, 4, 5});
    const B3Element img = rho(5, lam);
    EXPECT_EQ(img.t, 1);
    EXPECT_EQ(img.mu(), SignedDistinctSet(5, {-5, -4, -3, -2, -1, 0, 1}));
    EXPECT_EQ(img.nu, Partition({4, 4, 3, 2, 2, 2, 1}));
    EXPECT_EQ(img.weight(), lam.weight());
    EXPECT_EQ(rho_inverse(5, img), lam);
}

TEST(Rho, MinimalElement)
{
    const B3Element img = rho(1, SignedDistinctSet(1, {-1, 0}));
    EXPECT_EQ(img.t, 0);
    EXPECT_TRUE(img.nu.empty());
}

TEST(Rho, Exhaustive)
{
    for (int n = 0; n <= 5; ++n) {
        const BijectionReport r = check_bijection("rho", {{"n", n}});
        EXPECT_TRUE(r.passed()) << n;
        EXPECT_EQ(r.domain_size, std::size_t{1} << (2 * n));
    }
}

TEST(DurfeeSplit, Examples)
{
    const OEElement a = durfee_split(Partition{3});
    EXPECT_EQ(a.k, 1);
    EXPECT_TRUE(a.nu.empty());
    const OEElement b = durfee_split(Partition{3, 1, 1});
    EXPECT_EQ(b.mu(), 3);
    EXPECT_EQ(b.nu, Partition({1, 1}));
    EXPECT_EQ(durfee_join(b), Partition({3, 1, 1}));
    EXPECT_THROW(durfee_split(Partition{3, 1}), DomainViolation);
    EXPECT_THROW(durfee_join(OEElement{0, Partition{3, 3}}), DomainViolation);
}

TEST(DurfeeSplit, Exhaustive)
{
    const BijectionReport all = check_bijection("durfee_split", {}, 25);
    EXPECT_TRUE(all.passed()) << all.witness.value_or("");
    EXPECT_GT(all.domain_size, 0u);
    for (int k = 0; k <= 6; ++k) EXPECT_TRUE(check_bijection("durfee_split", {{"k", k}}, 25).passed()) << k;
    EXPECT_THROW(check_bijection("durfee_split", {}), MissingParam);
}

TEST(Nu3, HandTrace)
{
    const Nu3Trace tr = nu3_trace(1, 1, OElement{1, Partition{3}});
    EXPECT_EQ(tr.nu_star, Partition({2, 2, 1}));
    EXPECT_EQ(tr.mu, 2);
    EXPECT_EQ(tr.nu_prime, Partition({2, 1}));
    EXPECT_EQ(tr.image.nu, DistinctPartition({3}));
    EXPECT_EQ(tr.image.weight(), 5);
}

TEST(Nu3, DegenerateRectangle)
{
    const DOElement img = nu3_forward(0, 1, OElement{0, Partition{1}});
    EXPECT_EQ(img.mu, 1);
    EXPECT_TRUE(img.nu.empty());
    EXPECT_EQ(nu3_inverse(0, 1, img), (OElement{0, Partition{1}}));
}

TEST(Nu3, IntermediateObservations)
{
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; n + k <= 5; ++k)
            for (const auto& e : enumerate_o(n, k, 30)) {
                const Nu3Trace tr = nu3_trace(n, k, e);
                EXPECT_EQ(tr.mu, n + k);
                EXPECT_TRUE(is_self_conjugate(tr.nu_prime));
                EXPECT_EQ(durfee_size(tr.nu_prime), n);
                EXPECT_LE(tr.nu_prime.largest(), n + k);
                EXPECT_EQ(tr.nu_star.weight(), e.weight());
            }
}

TEST(Nu3, Exhaustive)
{
    const BijectionReport small = check_bijection("nu3", {{"max_nk", 4}}, 25);
    EXPECT_TRUE(small.passed());
    const BijectionReport r = check_bijection("nu3", {{"max_nk", 5}}, 30);
    EXPECT_TRUE(r.passed()) << r.witness.value_or("");
    EXPECT_GT(r.domain_size, 0u);
    EXPECT_TRUE(check_bijection("nu3", {{"n", 2}, {"k", 3}}, 30).passed());
}

TEST(Nu3, RejectsOutsideDomain)
{
    EXPECT_THROW(nu3_forward(1, 1, OElement{1, Partition{5}}), DomainViolation);
    EXPECT_THROW(nu3_forward(1, 2, OElement{1, Partition{3}}), DomainViolation);
    EXPECT_THROW(nu3_inverse(1, 1, DOElement{2, DistinctPartition({5})}), DomainViolation);
}

TEST(Report, Merge)
{
    BijectionReport a;
    a.domain_size = 3;
    a.codomain_size = 3;
    BijectionReport b;
    b.domain_size = 2;
    b.codomain_size = 2;
    b.roundtrip_failures = 1;
    b.witness = "x";
    a.merge(b);
    EXPECT_EQ(a.domain_size, 5u);
    EXPECT_FALSE(a.passed());
    EXPECT_EQ(a.witness, "x");
}

TEST(Report, UnknownName)
{
    EXPECT_THROW(check_bijection("sigma", {}), UnknownBijection);
    EXPECT_EQ(bijection_names().size(), 6u);
}
