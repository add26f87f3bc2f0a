#include <gtest/gtest.h>

#include "qpart/dsl.hpp"
#include "qpart/identities.hpp"

using namespace qpart;
using dsl::Expr;

namespace {

MultiSeries poly(std::initializer_list<int> c, int trunc)
{
    std::vector<BigInt> v(c.begin(), c.end());
    return MultiSeries(QSeries::from_dense(std::move(v), 0, trunc));
}

ParseError parse_error(const std::string& text)
{
    try {
        dsl::parse(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no parse error for " << text;
    return ParseError(0, 0, "", "");
}

} // namespace

TEST(Parse, CallNode)
{
    const auto e = dsl::parse("qbinom(n+s, s)");
    EXPECT_EQ(e->kind, Expr::Kind::Call);
    EXPECT_EQ(e->name, "qbinom");
    ASSERT_EQ(e->args.size(), 2u);
    EXPECT_EQ(e->args[0]->kind, Expr::Kind::Add);
    EXPECT_EQ(e->args[1]->kind, Expr::Kind::Name);
}

TEST(Parse, SumShape)
{
    const auto e = dsl::parse("sum(s, 0, n, q^s * poch(-q^(s+1), 1, n-s) * qbinom(n+s, s))");
    ASSERT_EQ(e->kind, Expr::Kind::Call);
    ASSERT_EQ(e->args.size(), 4u);
    const Expr& body = *e->args[3];
    ASSERT_EQ(body.kind, Expr::Kind::Mul);
    EXPECT_EQ(body.args[0]->kind, Expr::Kind::Mul); // left-associative
    EXPECT_EQ(body.args[1]->name, "qbinom");
    const Expr& poch = *body.args[0]->args[1];
    EXPECT_EQ(poch.name, "poch");
    EXPECT_EQ(poch.args[0]->kind, Expr::Kind::Neg);
    EXPECT_EQ(poch.args[0]->args[0]->kind, Expr::Kind::Pow);
}

TEST(Parse, Associativity)
{
    const auto sub = dsl::parse("a - b - c");
    EXPECT_EQ(sub->args[0]->kind, Expr::Kind::Sub);
    const auto pw = dsl::parse("2^3^2");
    EXPECT_EQ(pw->args[1]->kind, Expr::Kind::Pow);
    EXPECT_EQ(dsl::Evaluator({}, 10).integer(*pw), 512);
    // unary minus binds looser than ^
    const auto neg = dsl::parse("-q^2");
    EXPECT_EQ(neg->kind, Expr::Kind::Neg);
}

TEST(Parse, DanglingComma)
{
    const ParseError e = parse_error("poch(q,1,");
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 9);
    EXPECT_NE(std::string(e.what()).find("1:9"), std::string::npos);
}

TEST(Parse, ErrorPositions)
{
    EXPECT_EQ(parse_error("qbinom(2,1").column(), 10);
    EXPECT_EQ(parse_error("1 + * 2").column(), 5);
    EXPECT_EQ(parse_error("q $ 2").column(), 3);
    const ParseError multi = parse_error("1 +\n  )");
    EXPECT_EQ(multi.line(), 2);
    EXPECT_EQ(multi.column(), 3);
    EXPECT_EQ(parse_error("(q").expected(), "')'");
    EXPECT_EQ(parse_error("q q").column(), 3);
    EXPECT_EQ(parse_error("").column(), 1);
}

TEST(Parse, RoundTrip)
{
    const std::vector<std::string> corpus{
        "1-q^2",
        "(1-q)^2",
        "-q^2",
        "(-q)^2",
        "a - (b - c)",
        "a - b - c",
        "2^3^2",
        "(2^3)^2",
        "-(-x)",
        "q^(-1)",
        "poch(z*q^(2*n+2), 2, inf)^(-1)",
        "sum(t, 0, N, qbinom(N, t) * (-1)^t * z^t * q^binom(t, 2))",
        "x * (y + z) * q",
        "-1 - -1",
    };
    std::vector<std::string> all = corpus;
    for (const auto& id : identity_ids()) {
        all.push_back(find_identity(id).lhs_text);
        all.push_back(find_identity(id).rhs_text);
    }
    for (const auto& s : all) {
        const auto a = dsl::parse(s);
        const std::string printed = dsl::to_source(*a);
        const auto b = dsl::parse(printed);
        EXPECT_TRUE(dsl::same_ast(*a, *b)) << s << " -> " << printed;
        EXPECT_EQ(dsl::to_source(*b), printed);
    }
}

TEST(Eval, Basics)
{
    EXPECT_EQ(dsl::eval("poch(q,1,2)", {}, 50), poly({1, -1, -1, 1}, 50));
    EXPECT_EQ(dsl::eval("qbinom(5,0)", {}, 10), MultiSeries::constant(1, 10));
    EXPECT_EQ(dsl::eval("1-q^2", {}, 10), poly({1, 0, -1}, 10));
    EXPECT_EQ(dsl::eval("(1-q)^2", {}, 10), poly({1, -2, 1}, 10));
    EXPECT_EQ(dsl::eval("binom(5,2) + 2^3", {}, 5), MultiSeries::constant(18, 5));
    EXPECT_EQ(dsl::eval("(1-q)^(-1)", {}, 4), poly({1, 1, 1, 1}, 4));
    EXPECT_EQ(dsl::eval("q^(-2) * q^3", {}, 5), MultiSeries::q(1).truncated(5));
}

TEST(Eval, MatchesSeriesBuilders)
{
    EXPECT_EQ(dsl::eval("poch(q, 1, inf)", {}, 30), poch_infinite(QMonomial{1, {}, 1}, 1, 30));
    EXPECT_EQ(dsl::eval("poch(z*q^2, 2, inf)", {}, 30), poch_infinite(QMonomial{1, Mono::of(Aux::z), 2}, 2, 30));
    EXPECT_EQ(dsl::eval("poch(q+q^2, 1, 3)", {}, 30),
              poch_finite(MultiSeries::q(1) + MultiSeries::q(2), 1, 3).truncated(30));
    EXPECT_EQ(dsl::eval("qbinom(7, 3)", {}, 30), MultiSeries(qbinom(7, 3)).truncated(30));
}

TEST(Eval, Bindings)
{
    EXPECT_EQ(dsl::eval("poch(q, 1, n)", {{"n", 3}}, 20), poch_finite(QMonomial{1, {}, 1}, 1, 3).truncated(20));
    EXPECT_EQ(dsl::eval("sum(k, 1, n, k)", {{"n", 4}}, 5), MultiSeries::constant(10, 5));
    // sum indices shadow parameters
    EXPECT_EQ(dsl::eval("sum(n, 0, 2, q^n)", {{"n", 7}}, 10), poly({1, 1, 1}, 10));
}

TEST(Eval, Errors)
{
    EXPECT_THROW(dsl::eval("poch(q, 1, m)", {}, 10), UnboundVariable);
    EXPECT_THROW(dsl::eval("q^q", {}, 10), NonIntegerExponent);
    EXPECT_THROW(dsl::eval("binom(q, 1)", {}, 10), NonIntegerExponent);
    EXPECT_THROW(dsl::eval("poch(1, 1, inf)", {}, 10), NonConvergent);
    EXPECT_THROW(dsl::eval("inf", {}, 10), EvalError);
    EXPECT_THROW(dsl::eval("foo(1)", {}, 10), EvalError);
    EXPECT_THROW(dsl::eval("(2+q)^(-1)", {}, 10), NonUnitConstantTerm);
    EXPECT_THROW(dsl::eval("poch(q, 0, 2)", {}, 10), EvalError);
    EXPECT_THROW(dsl::eval("qbinom(3)", {}, 10), EvalError);
}

TEST(Eval, RegistryTextsMatchBuilders)
{
    const int T = 60;
    for (const auto& id : identity_ids()) {
        const IdentityCase& c = find_identity(id);
        for (int v = 0; v <= (c.param_names.empty() ? 0 : 4); ++v) {
            Params p;
            for (const auto& name : c.param_names) p[name] = v;
            Params b = p;
            b["T"] = T;
            EXPECT_EQ(dsl::eval(c.lhs_text, b, T), build_side(id, Side::lhs, p, T)) << id << " lhs " << v;
            EXPECT_EQ(dsl::eval(c.rhs_text, b, T), build_side(id, Side::rhs, p, T)) << id << " rhs " << v;
        }
    }
}

TEST(Eval, Thm21TextAtN3)
{
    const std::string text = "sum(s, 0, n, q^s * poch(-q^(s+1), 1, n-s) * qbinom(n+s, s))";
    EXPECT_EQ(dsl::eval(text, {{"n", 3}}, 100), build_side("thm21", Side::lhs, {{"n", 3}}, 100));
}

TEST(Eval, MutationDetected)
{
    const MultiSeries base = dsl::eval("poch(-q, 1, 4)^2", {}, 60);
    const MultiSeries mutated = dsl::eval("poch(-q, 1, 4)^2 + 3*q^5", {}, 60);
    const auto m = first_mismatch(base, mutated);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->exponent, 5);
    EXPECT_EQ(m->rhs - m->lhs, 3);
}
