#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qpart/series.hpp"

using namespace qpart;

namespace {

QSeries poly(std::initializer_list<int> coeffs, int trunc = kExact)
{
    std::vector<BigInt> v(coeffs.begin(), coeffs.end());
    return QSeries::from_dense(std::move(v), 0, trunc);
}

QMonomial qpow(int e, BigInt c = 1, Mono m = {}) { return {std::move(c), m, e}; }

MultiSeries random_multi(std::mt19937& rng, int trunc, bool unit)
{
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> zexp(0, 2);
    MultiSeries s = MultiSeries::zero(trunc);
    for (int e = 0; e < trunc; ++e) {
        if (rng() % 3 == 0) continue;
        s = s + MultiSeries::term({coeff(rng), Mono::of(Aux::z, e == 0 ? 0 : zexp(rng)), e}, trunc);
    }
    if (unit) s = s - MultiSeries::constant(s.coeff(Mono{}, 0)) + MultiSeries::constant(1);
    return s;
}

// Equal on every exponent both operands know.
::testing::AssertionResult agree(const MultiSeries& x, const MultiSeries& y)
{
    const int t = std::min(x.trunc(), y.trunc());
    if (x.truncated(t) == y.truncated(t)) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << x << "\n  vs\n" << y;
}

} // namespace

TEST(Series, AdditionCancels)
{
    EXPECT_EQ(poly({1, -1}) + poly({0, 1}), QSeries::constant(1));
    EXPECT_TRUE((poly({1, -1}) - poly({1, -1})).is_zero());
}

TEST(Series, ZeroIsAdditiveIdentity)
{
    const QSeries s = poly({3, 0, -2, 7}, 9);
    EXPECT_EQ(QSeries() + s, s);
    EXPECT_EQ(s + QSeries(), s);
}

TEST(Series, AdditionTakesSmallerTrunc)
{
    const QSeries sum = poly({1, -1}, 10) + QSeries::monomial(1, 2, 5);
    EXPECT_EQ(sum, poly({1, -1, 1}, 5));
    EXPECT_EQ(sum.trunc(), 5);
}

TEST(Series, AdditionDropsTermsAboveTrunc)
{
    const QSeries sum = poly({1, 0, 0, 0, 0, 0, 4}) + poly({1}, 3);
    EXPECT_EQ(sum, poly({2}, 3));
}

TEST(Series, ProductExamples)
{
    EXPECT_EQ(poly({1, -1}) * poly({1, 1}), poly({1, 0, -1}));
    EXPECT_EQ(poly({1, -1}) * poly({1, 0, -1}), poly({1, -1, -1, 1}));
    const MultiSeries z = MultiSeries::variable(Aux::z);
    const MultiSeries a = z * MultiSeries(poly({1, -1}));
    const MultiSeries b = z * MultiSeries(poly({1, 1}));
    EXPECT_EQ(a * b, MultiSeries::term({1, Mono::of(Aux::z, 2), 0}) - MultiSeries::term({1, Mono::of(Aux::z, 2), 2}));
}

TEST(Series, ProductTruncRule)
{
    // (q^2 + O(q^6)) * (1 + q + O(q^4)) is known through q^5 only.
    const QSeries a = QSeries::monomial(1, 2, 6);
    const QSeries b = poly({1, 1}, 4);
    const QSeries p = a * b;
    EXPECT_EQ(p.trunc(), 6);
    EXPECT_EQ(p, poly({0, 0, 1, 1}, 6));
}

TEST(Series, LaurentProduct)
{
    const QSeries a = QSeries::monomial(1, -3) + QSeries::constant(2);
    const QSeries b = QSeries::monomial(1, 3) - QSeries::constant(1);
    EXPECT_EQ(a * b, QSeries::constant(1) - QSeries::monomial(1, -3) + QSeries::monomial(2, 3) - QSeries::constant(2));
}

TEST(Series, InvertGeometric)
{
    const QSeries inv = invert_unit(poly({1, -1}), 12);
    EXPECT_EQ(inv.trunc(), 12);
    for (int e = 0; e < 12; ++e) EXPECT_EQ(inv.coeff(e), 1) << e;
    EXPECT_EQ(invert_unit(QSeries::constant(1), 8), QSeries::constant(1, 8));
    const MultiSeries inv_m = invert_unit(MultiSeries(poly({1, -1})), 12);
    EXPECT_EQ(inv_m, MultiSeries(inv));
}

TEST(Series, InvertSelfCheck)
{
    const MultiSeries p1 = poch_finite(qpow(1), 2, 1);
    EXPECT_EQ(invert_unit(p1, 50), invert_unit(MultiSeries(poly({1, -1})), 50));
    const MultiSeries p2 = poch_finite(qpow(1), 2, 2);
    EXPECT_EQ(p2 * invert_unit(p2, 50), MultiSeries::constant(1, 50));
}

TEST(Series, InvertRejectsNonUnit)
{
    EXPECT_THROW(invert_unit(poly({2, 1}), 5), NonUnitConstantTerm);
    EXPECT_THROW(invert_unit(poly({0, 1}), 5), NonUnitConstantTerm);
    EXPECT_THROW(invert_unit(MultiSeries(poly({3})), 5), NonUnitConstantTerm);
    // 1 - z with no q factor never converges in q
    EXPECT_THROW(invert_unit(MultiSeries::constant(1) - MultiSeries::variable(Aux::z), 5), NonConvergent);
}

TEST(Series, InvertInBivariateMatchesGeometric)
{
    // 1 / (1 - z q^2) = sum z^j q^{2j}
    const MultiSeries f = poch_finite(QMonomial{1, Mono::of(Aux::z), 2}, 1, 1);
    const auto got = oracle::from_multi(invert_unit(f, 21), Aux::z);
    EXPECT_EQ(got, oracle::geometric(1, 1, 2, 21));
}

TEST(Series, PochFiniteExamples)
{
    EXPECT_EQ(poch_finite(qpow(1), 1, 0), MultiSeries::constant(1));
    EXPECT_EQ(poch_finite(qpow(1), 1, 2), MultiSeries(poly({1, -1, -1, 1})));
    EXPECT_EQ(poch_finite(qpow(1, -1), 1, 1), MultiSeries(poly({1, 1})));
}

TEST(Series, PochFiniteMatchesOracle)
{
    for (int step : {1, 2, 4})
        for (int n = 0; n <= 7; ++n)
            for (int c : {1, -1, 3}) {
                const auto got = oracle::from_multi(poch_finite(QMonomial{c, Mono::of(Aux::z, 2), 1}, step, n), Aux::z);
                EXPECT_EQ(got, oracle::poch(c, 2, 1, step, n, kExact)) << step << " " << n << " " << c;
            }
}

TEST(Series, PochFiniteRecurrence)
{
    for (int step : {1, 2, 4})
        for (int n = 0; n < 10; ++n) {
            const QMonomial a{-2, Mono::of(Aux::x), 3};
            const MultiSeries next = poch_finite(a, step, n + 1);
            const MultiSeries factor = MultiSeries::constant(1) - MultiSeries::term(a.shifted(step * n));
            EXPECT_EQ(next, poch_finite(a, step, n) * factor);
        }
}

TEST(Series, PochFiniteCapped)
{
    const MultiSeries full = poch_finite(qpow(1), 1, 12);
    EXPECT_EQ(poch_finite(qpow(1), 1, 12, 20), full.truncated(20));
}

TEST(Series, PochInfiniteExamples)
{
    EXPECT_EQ(poch_infinite(qpow(7), 1, 7), MultiSeries::constant(1, 7));
    EXPECT_EQ(poch_infinite(qpow(1), 1, 4), MultiSeries(poly({1, -1, -1}, 4)));
}

TEST(Series, PentagonalNumberTheorem)
{
    const int T = 120;
    const MultiSeries e = poch_infinite(qpow(1), 1, T);
    std::map<int, BigInt> expect;
    for (int k = -10; k <= 10; ++k) {
        const int g = k * (3 * k - 1) / 2;
        if (g < T) expect[g] += (k % 2 == 0) ? 1 : -1;
    }
    EXPECT_EQ(e, MultiSeries(QSeries::from_map(expect, T)));
}

TEST(Series, PochInfiniteSelfCheck)
{
    const int T = 40;
    const MultiSeries p = poch_infinite(QMonomial{1, Mono::of(Aux::z), 2}, 2, T);
    EXPECT_EQ(p * invert_unit(p, T), MultiSeries::constant(1, T));
    const auto oracle_p = oracle::poch(1, 1, 2, 2, T, T);
    EXPECT_EQ(oracle::from_multi(p, Aux::z), oracle_p);
}

TEST(Series, PochInfiniteRejectsNonPositiveDegree)
{
    EXPECT_THROW(poch_infinite(qpow(0), 1, 10), NonConvergent);
    EXPECT_THROW(poch_infinite(QMonomial{1, Mono::of(Aux::z), -1}, 2, 10), NonConvergent);
}

TEST(Series, DividePochMatchesOracle)
{
    const int T = 30;
    const QMonomial a{-1, Mono::of(Aux::z), 1};
    const MultiSeries got = divide_poch(MultiSeries::constant(1), a, 2, 5, T);
    EXPECT_EQ(oracle::from_multi(got, Aux::z), oracle::inv_poch(-1, 1, 1, 2, 5, T));
}

TEST(Series, QBinomExamples)
{
    EXPECT_EQ(qbinom(2, 1), poly({1, 1}));
    EXPECT_EQ(qbinom(5, 0), poly({1}));
    EXPECT_EQ(qbinom(3, 1), poly({1, 1, 1}));
    EXPECT_TRUE(qbinom(3, -1).is_zero());
    EXPECT_TRUE(qbinom(3, 4).is_zero());
}

TEST(Series, QBinomMatchesSubsetCount)
{
    for (int m = 0; m <= 13; ++m)
        for (int k = 0; k <= m; ++k) {
            const QSeries g = qbinom(m, k);
            EXPECT_EQ(oracle::dense(g, k * (m - k) + 1), oracle::qbinom_by_subsets(m, k)) << m << "," << k;
            EXPECT_EQ(g.max_exponent().value(), k * (m - k));
        }
}

TEST(Series, QBinomSymmetryAndClassicalLimit)
{
    for (int m = 0; m <= 20; ++m)
        for (int k = 0; k <= m; ++k) {
            const QSeries g = qbinom(m, k);
            EXPECT_EQ(g, qbinom(m, m - k));
            EXPECT_EQ(g.at_one(), binomial(m, k));
            for (const auto& [e, c] : g.terms()) EXPECT_GT(c, 0);
        }
}

TEST(Series, QBinomialTheorem)
{
    for (int N = 0; N <= 12; ++N) {
        MultiSeries rhs;
        for (int t = 0; t <= N; ++t) {
            const BigInt sign = t % 2 ? -1 : 1;
            rhs = rhs + MultiSeries(qbinom(N, t)).times({sign, Mono::of(Aux::z, t), t * (t - 1) / 2});
        }
        EXPECT_EQ(poch_finite(QMonomial{1, Mono::of(Aux::z), 0}, 1, N), rhs) << N;
    }
}

TEST(Series, ExactDivision)
{
    const QSeries num = poly({1, -1, -1, 1});
    EXPECT_EQ(exact_divide(num, poly({1, -1})), poly({1, 0, -1}));
    EXPECT_THROW(exact_divide(poly({1, 0, 1}), poly({1, -1})), DivisionInexact);
}

TEST(Series, RingLawsRandom)
{
    std::mt19937 rng(20240611);
    for (int round = 0; round < 40; ++round) {
        const int T = 6 + static_cast<int>(rng() % 20);
        const MultiSeries a = random_multi(rng, T, false);
        const MultiSeries b = random_multi(rng, T, false);
        const MultiSeries c = random_multi(rng, T, false);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE(agree((a * b) * c, a * (b * c)));
        EXPECT_TRUE(agree(a * (b + c), a * b + a * c));
        EXPECT_GE((a * b).trunc(), T);
        EXPECT_EQ(a - a, MultiSeries::zero(T));
    }
}

TEST(Series, ProductMatchesOracleRandom)
{
    std::mt19937 rng(7);
    for (int round = 0; round < 30; ++round) {
        const int T = 5 + static_cast<int>(rng() % 25);
        const MultiSeries a = random_multi(rng, T, false);
        const MultiSeries b = random_multi(rng, T, false);
        const auto expect = oracle::mul(oracle::from_multi(a, Aux::z), oracle::from_multi(b, Aux::z), T);
        const MultiSeries ab = a * b;
        EXPECT_GE(ab.trunc(), T);
        EXPECT_EQ(oracle::from_multi(ab.truncated(T), Aux::z), expect);
    }
}

TEST(Series, InverseLawRandom)
{
    std::mt19937 rng(99);
    for (int round = 0; round < 30; ++round) {
        const int T = 4 + static_cast<int>(rng() % 30);
        const MultiSeries a = random_multi(rng, T, true);
        EXPECT_EQ(a * invert_unit(a, T), MultiSeries::constant(1, T));
    }
}

TEST(Series, NegativeAuxExponents)
{
    const MultiSeries zinv = MultiSeries::term({1, Mono::of(Aux::z, -1), 1});
    EXPECT_TRUE(zinv.has_negative_aux());
    const MultiSeries prod = zinv * MultiSeries::term({1, Mono::of(Aux::z, 1), 0});
    EXPECT_EQ(prod, MultiSeries::q(1));
    EXPECT_FALSE(prod.has_negative_aux());
}

TEST(Series, Substitute)
{
    // z -> -y applied to 1 - z q
    const MultiSeries s = MultiSeries::constant(1) - MultiSeries::term({1, Mono::of(Aux::z), 1});
    const MultiSeries t = s.substitute(Aux::z, -1, Mono::of(Aux::y));
    EXPECT_EQ(t, MultiSeries::constant(1) + MultiSeries::term({1, Mono::of(Aux::y), 1}));
}

TEST(Series, FirstMismatchLocatesLowestExponent)
{
    const MultiSeries a = MultiSeries(poly({1, 2, 3, 4}, 10));
    MultiSeries b = a + MultiSeries::term({5, Mono::of(Aux::z), 3}) + MultiSeries::term({1, {}, 2});
    auto m = first_mismatch(a, b);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->exponent, 2);
    EXPECT_TRUE(m->mono.is_one());
    EXPECT_EQ(m->lhs, 3);
    EXPECT_EQ(m->rhs, 4);
    EXPECT_FALSE(first_mismatch(a, a));
}

TEST(Series, StrFormat)
{
    EXPECT_EQ(poly({1, -1, -1}).str(), "1 - q - q^2");
    EXPECT_EQ(QSeries::zero(3).str(), "O(q^3)");
}
