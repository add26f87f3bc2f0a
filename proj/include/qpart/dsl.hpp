#pragma once

// A small expression language for q-series.
//
//   expr   := term (("+" | "-") term)*
//   term   := unary ("*" unary)*
//   unary  := "-" unary | factor
//   factor := atom ("^" factor)?
//   atom   := INT | NAME | "(" expr ")" | NAME "(" expr ("," expr)* ")"
//
// Names: q, the aux variables z x y, sum indices and bound integer parameters.
// Calls: poch(a, step, count | inf), qbinom(m, k), binom(m, k), sum(var, lo, hi, body).
// Exponents, poch counts, binom/qbinom arguments and sum bounds are integer
// expressions; a negative exponent inverts a unit series.

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qpart/error.hpp"
#include "qpart/params.hpp"
#include "qpart/series.hpp"

namespace qpart::dsl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Int, Name, Neg, Add, Sub, Mul, Pow, Call };

    Kind kind = Kind::Int;
    BigInt value;              // Int
    std::string name;          // Name, Call
    std::vector<ExprPtr> args; // operands or call arguments
    int line = 1;
    int column = 1;
};

/// Structural equality, ignoring source positions.
inline bool same_ast(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_ast(*a.args[i], *b.args[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    enum class Kind { Int, Name, Plus, Minus, Star, Caret, LParen, RParen, Comma, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int column = 1;
};

inline std::string describe(const Token& t)
{
    if (t.kind == Token::Kind::End) return "end of input";
    return "'" + t.text + "'";
}

inline std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto single = [](char c) -> std::optional<Token::Kind> {
        switch (c) {
        case '+': return Token::Kind::Plus;
        case '-': return Token::Kind::Minus;
        case '*': return Token::Kind::Star;
        case '^': return Token::Kind::Caret;
        case '(': return Token::Kind::LParen;
        case ')': return Token::Kind::RParen;
        case ',': return Token::Kind::Comma;
        default: return std::nullopt;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Token::Kind::Int;
            t.text = std::string(src.substr(i, j - i));
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Token::Kind::Name;
            t.text = std::string(src.substr(i, j - i));
        } else if (auto k = single(c)) {
            t.kind = *k;
            t.text = std::string(1, c);
        } else {
            throw ParseError(line, col, "unexpected character '" + std::string(1, c) + "'", "");
        }
        col += static_cast<int>(t.text.size());
        i += t.text.size();
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    ExprPtr parse()
    {
        ExprPtr e = expr();
        if (peek().kind != Token::Kind::End) fail("unexpected " + describe(peek()), "operator or end of input");
        return e;
    }

private:
    using K = Token::Kind;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    bool accept(K k)
    {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }

    // Errors at end of input point at the last real token, where the text stops short.
    [[noreturn]] void fail(const std::string& msg, const std::string& expected) const
    {
        const Token& at = (peek().kind == K::End && pos_ > 0) ? toks_[pos_ - 1] : peek();
        const std::string m = peek().kind == K::End && pos_ > 0 ? "unexpected end of input after '" + at.text + "'" : msg;
        throw ParseError(at.line, at.column, m, expected);
    }

    void expect(K k, const std::string& what)
    {
        if (!accept(k)) fail("unexpected " + describe(peek()), what);
    }

    static ExprPtr node(Expr::Kind kind, const Token& at, std::vector<ExprPtr> args)
    {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->args = std::move(args);
        e->line = at.line;
        e->column = at.column;
        return e;
    }

    ExprPtr expr()
    {
        ExprPtr lhs = term();
        while (peek().kind == K::Plus || peek().kind == K::Minus) {
            const Token& op = next();
            ExprPtr rhs = term();
            lhs = node(op.kind == K::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op, {lhs, rhs});
        }
        return lhs;
    }

    ExprPtr term()
    {
        ExprPtr lhs = unary();
        while (peek().kind == K::Star) {
            const Token& op = next();
            ExprPtr rhs = unary();
            lhs = node(Expr::Kind::Mul, op, {lhs, rhs});
        }
        return lhs;
    }

    ExprPtr unary()
    {
        if (peek().kind == K::Minus) {
            const Token& op = next();
            return node(Expr::Kind::Neg, op, {unary()});
        }
        return factor();
    }

    ExprPtr factor()
    {
        ExprPtr base = atom();
        if (peek().kind == K::Caret) {
            const Token& op = next();
            return node(Expr::Kind::Pow, op, {base, factor()});
        }
        return base;
    }

    ExprPtr atom()
    {
        const Token& t = peek();
        if (t.kind == K::Int) {
            next();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Int;
            e->value = BigInt(t.text);
            e->line = t.line;
            e->column = t.column;
            return e;
        }
        if (t.kind == K::Name) {
            next();
            auto e = std::make_shared<Expr>();
            e->name = t.text;
            e->line = t.line;
            e->column = t.column;
            if (accept(K::LParen)) {
                e->kind = Expr::Kind::Call;
                e->args.push_back(expr());
                while (accept(K::Comma)) e->args.push_back(expr());
                expect(K::RParen, "',' or ')'");
            } else {
                e->kind = Expr::Kind::Name;
            }
            return e;
        }
        if (accept(K::LParen)) {
            ExprPtr inner = expr();
            expect(K::RParen, "')'");
            return inner;
        }
        fail("unexpected " + describe(t), "integer, name or '('");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline ExprPtr parse(std::string_view text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

inline int precedence(Expr::Kind k)
{
    switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
    }
}

inline std::string print(const Expr& e, int ctx)
{
    std::string s;
    switch (e.kind) {
    case Expr::Kind::Int: s = e.value < 0 ? "(" + e.value.str() + ")" : e.value.str(); break;
    case Expr::Kind::Name: s = e.name; break;
    case Expr::Kind::Call:
        s = e.name + "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + print(*e.args[i], 0);
        s += ")";
        break;
    case Expr::Kind::Neg: s = "-" + print(*e.args[0], 3); break;
    case Expr::Kind::Add: s = print(*e.args[0], 1) + " + " + print(*e.args[1], 2); break;
    case Expr::Kind::Sub: s = print(*e.args[0], 1) + " - " + print(*e.args[1], 2); break;
    case Expr::Kind::Mul: s = print(*e.args[0], 2) + "*" + print(*e.args[1], 3); break;
    case Expr::Kind::Pow: s = print(*e.args[0], 5) + "^" + print(*e.args[1], 4); break;
    }
    return precedence(e.kind) < ctx ? "(" + s + ")" : s;
}

} // namespace detail

/// Source text that parses back to the same tree.
inline std::string to_source(const Expr& e) { return detail::print(e, 0); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

class Evaluator {
public:
    Evaluator(const Params& bindings, int trunc) : bindings_(bindings), trunc_(trunc) {}

    /// Series value, computed precisely enough to be exact below `target` when no
    /// negative q-powers intervene.
    MultiSeries series(const Expr& e, int target)
    {
        switch (e.kind) {
        case Expr::Kind::Int: return MultiSeries::constant(e.value);
        case Expr::Kind::Name: return name_series(e);
        case Expr::Kind::Neg: return -series(*e.args[0], target);
        case Expr::Kind::Add: return (series(*e.args[0], target) + series(*e.args[1], target)).truncated(target);
        case Expr::Kind::Sub: return (series(*e.args[0], target) - series(*e.args[1], target)).truncated(target);
        case Expr::Kind::Mul: {
            MultiSeries a = series(*e.args[0], target);
            const int v = a.valuation();
            const int sub = v == kExact ? target : clamp_target(static_cast<long long>(target) - v);
            if (sub <= 0 && target != kExact) return MultiSeries::zero(target);
            MultiSeries b = series(*e.args[1], sub);
            return MultiSeries::multiply(a, b, target);
        }
        case Expr::Kind::Pow: return power(e, target);
        case Expr::Kind::Call: return call_series(e, target);
        }
        throw EvalError("bad expression node");
    }

    BigInt integer(const Expr& e)
    {
        switch (e.kind) {
        case Expr::Kind::Int: return e.value;
        case Expr::Kind::Name: return lookup(e);
        case Expr::Kind::Neg: return -integer(*e.args[0]);
        case Expr::Kind::Add: return integer(*e.args[0]) + integer(*e.args[1]);
        case Expr::Kind::Sub: return integer(*e.args[0]) - integer(*e.args[1]);
        case Expr::Kind::Mul: return integer(*e.args[0]) * integer(*e.args[1]);
        case Expr::Kind::Pow: {
            const BigInt base = integer(*e.args[0]);
            const int k = small(*e.args[1], integer(*e.args[1]));
            if (k < 0) throw NonIntegerExponent(where(e) + "negative exponent in an integer expression");
            return boost::multiprecision::pow(base, static_cast<unsigned>(k));
        }
        case Expr::Kind::Call: {
            if (e.name == "binom") {
                arity(e, 2);
                return binomial(small(*e.args[0], integer(*e.args[0])), small(*e.args[1], integer(*e.args[1])));
            }
            if (e.name == "sum") {
                BigInt total = 0;
                for_each_index(e, [&](const Expr& body) { total += integer(body); });
                return total;
            }
            if (e.name == "poch" || e.name == "qbinom")
                throw NonIntegerExponent(where(e) + e.name + "(...) is a series, not an integer");
            throw EvalError(where(e) + "unknown function '" + e.name + "'");
        }
        }
        throw EvalError("bad expression node");
    }

private:
    static bool is_series_name(const std::string& n) { return n == "q" || aux_from_name(n).has_value(); }

    static std::string where(const Expr& e)
    {
        return std::to_string(e.line) + ":" + std::to_string(e.column) + ": ";
    }

    static int clamp_target(long long t)
    {
        constexpr long long lim = 1LL << 30;
        return static_cast<int>(std::clamp(t, -lim, lim));
    }

    static int small(const Expr& at, const BigInt& v)
    {
        if (v > 1000000 || v < -1000000) throw NonIntegerExponent(where(at) + "integer " + v.str() + " out of range");
        return static_cast<int>(v);
    }

    static void arity(const Expr& e, std::size_t n)
    {
        if (e.args.size() != n)
            throw EvalError(where(e) + e.name + " takes " + std::to_string(n) + " arguments, got " +
                            std::to_string(e.args.size()));
    }

    BigInt lookup(const Expr& e) const
    {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
            if (it->first == e.name) return it->second;
        if (is_series_name(e.name)) throw NonIntegerExponent(where(e) + "'" + e.name + "' used in an integer expression");
        if (e.name == "inf") throw EvalError(where(e) + "'inf' is only allowed as a poch count");
        auto p = get_param(bindings_, e.name);
        if (!p) throw UnboundVariable(where(e) + "unbound variable '" + e.name + "'");
        return *p;
    }

    MultiSeries name_series(const Expr& e) const
    {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
            if (it->first == e.name) return MultiSeries::constant(it->second);
        if (e.name == "q") return MultiSeries::q();
        if (auto v = aux_from_name(e.name)) return MultiSeries::variable(*v);
        return MultiSeries::constant(lookup(e));
    }

    template <class F>
    void for_each_index(const Expr& e, F&& f)
    {
        arity(e, 4);
        const Expr& var = *e.args[0];
        if (var.kind != Expr::Kind::Name || is_series_name(var.name) || var.name == "inf")
            throw EvalError(where(var) + "sum index must be a plain name");
        const int lo = small(*e.args[1], integer(*e.args[1]));
        const int hi = small(*e.args[2], integer(*e.args[2]));
        for (int i = lo; i <= hi; ++i) {
            scopes_.emplace_back(var.name, i);
            f(*e.args[3]);
            scopes_.pop_back();
        }
    }

    static std::optional<QMonomial> as_monomial(const MultiSeries& s)
    {
        if (s.entries().size() != 1) return std::nullopt;
        const auto& [m, qs] = *s.entries().begin();
        if (qs.terms().size() != 1) return std::nullopt;
        return QMonomial{qs.terms().front().second, m, qs.terms().front().first};
    }

    static MultiSeries pow_capped(MultiSeries base, int k, int cap)
    {
        MultiSeries r = MultiSeries::constant(1);
        while (k > 0) {
            if (k & 1) r = MultiSeries::multiply(r, base, cap);
            k >>= 1;
            if (k) base = MultiSeries::multiply(base, base, cap);
        }
        return r.truncated(cap);
    }

    MultiSeries power(const Expr& e, int target)
    {
        const int k = small(*e.args[1], integer(*e.args[1]));
        MultiSeries base = series(*e.args[0], target);
        if (k >= 0) {
            if (auto m = as_monomial(base); m && base.is_exact()) {
                // exact monomial powers, including negative q-exponents
                return MultiSeries::term({boost::multiprecision::pow(m->coeff, static_cast<unsigned>(k)), m->mono.pow(k),
                                          m->qexp * k});
            }
            return pow_capped(base, k, target);
        }
        if (auto m = as_monomial(base); m && base.is_exact() && (m->coeff == 1 || m->coeff == -1)) {
            const BigInt c = (k % 2 != 0) ? m->coeff : BigInt(1);
            return MultiSeries::term({c, m->mono.pow(k), m->qexp * k});
        }
        if (target == kExact) throw EvalError(where(e) + "inverse needs a finite truncation order");
        return pow_capped(invert_unit(base, target), -k, target);
    }

    MultiSeries call_series(const Expr& e, int target)
    {
        if (e.name == "poch") {
            arity(e, 3);
            const int step = small(*e.args[1], integer(*e.args[1]));
            if (step < 1) throw EvalError(where(e) + "poch step must be positive");
            const MultiSeries a = series(*e.args[0], target);
            const Expr& count = *e.args[2];
            const auto mono = a.is_exact() ? as_monomial(a) : std::nullopt;
            if (count.kind == Expr::Kind::Name && count.name == "inf") {
                if (target == kExact) throw EvalError(where(e) + "infinite product needs a finite truncation order");
                return mono ? poch_infinite(*mono, step, target) : poch_infinite(a, step, target);
            }
            const int n = small(count, integer(count));
            if (n < 0) throw EvalError(where(e) + "poch count must be nonnegative");
            return mono ? poch_finite(*mono, step, n, target) : poch_finite(a, step, n, target);
        }
        if (e.name == "qbinom") {
            arity(e, 2);
            return MultiSeries(qbinom(small(*e.args[0], integer(*e.args[0])), small(*e.args[1], integer(*e.args[1]))));
        }
        if (e.name == "binom") return MultiSeries::constant(integer(e));
        if (e.name == "sum") {
            MultiSeries total;
            for_each_index(e, [&](const Expr& body) { total = (total + series(body, target)).truncated(target); });
            return total;
        }
        throw EvalError(where(e) + "unknown function '" + e.name + "'");
    }

    const Params& bindings_;
    int trunc_;
    std::vector<std::pair<std::string, BigInt>> scopes_;
};

/// Expansion of `e` below `trunc` under the given integer bindings.
inline MultiSeries eval(const Expr& e, const Params& bindings, int trunc)
{
    return Evaluator(bindings, trunc).series(e, trunc).truncated(trunc);
}

inline MultiSeries eval(std::string_view text, const Params& bindings, int trunc)
{
    return eval(*parse(text), bindings, trunc);
}

} // namespace qpart::dsl
