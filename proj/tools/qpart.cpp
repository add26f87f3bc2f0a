// qpart: command-line front end.
//
// Exit codes: 0 success, 1 a check came out false, 2 usage or parse error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpart/qpart.hpp"

using json = nlohmann::ordered_json;
using namespace qpart;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::optional<long> n, N, k, i, max_nk;
    std::vector<std::string> params;
    int trunc = 200;
    long cap = kDefaultWeightCap;
    std::string format = "text";
};

Params collect(const Common& c)
{
    Params p;
    if (c.n) p["n"] = *c.n;
    if (c.N) p["N"] = *c.N;
    if (c.k) p["k"] = *c.k;
    if (c.i) p["i"] = *c.i;
    if (c.max_nk) p["max_nk"] = *c.max_nk;
    for (const auto& kv : c.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("expected name=value, got '" + kv + "'");
        try {
            std::size_t used = 0;
            const std::string val = kv.substr(eq + 1);
            const long v = std::stol(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            p[kv.substr(0, eq)] = v;
        } catch (const std::logic_error&) {
            throw UsageError("bad integer in '" + kv + "'");
        }
    }
    return p;
}

json params_json(const Params& p)
{
    json j = json::object();
    for (const auto& [k, v] : p) j[k] = v;
    return j;
}

std::string dump_coeffs(const MultiSeries& s)
{
    std::ostringstream os;
    for (const auto& [m, qs] : s.entries()) {
        os << "[" << m.str() << "]";
        for (const auto& [e, c] : qs.terms()) os << " " << e << ":" << c;
        os << "\n";
    }
    if (s.entries().empty()) os << "0\n";
    if (!s.is_exact()) os << "O(q^" << s.trunc() << ")\n";
    return os.str();
}

json mismatch_json(const std::optional<Mismatch>& m)
{
    if (!m) return nullptr;
    return {{"monomial", m->mono.str()}, {"exponent", m->exponent}, {"lhs", m->lhs.str()}, {"rhs", m->rhs.str()}};
}

std::string mismatch_text(const Mismatch& m)
{
    std::ostringstream os;
    os << "first mismatch at " << m.mono.str() << "*q^" << m.exponent << ": lhs " << m.lhs << ", rhs " << m.rhs;
    return os.str();
}

// ---------------------------------------------------------------------------

int cmd_list(const Common& c)
{
    if (c.format == "json") {
        json ids = json::array();
        for (const auto& id : identity_ids()) {
            const IdentityCase& ic = find_identity(id);
            ids.push_back({{"id", id}, {"params", ic.param_names}, {"summary", ic.summary}});
        }
        std::cout << json{{"identities", ids}, {"bijections", bijection_names()}, {"domains", domain_names()}}.dump(2)
                  << "\n";
        return kOk;
    }
    std::cout << "identities:\n";
    for (const auto& id : identity_ids()) {
        const IdentityCase& ic = find_identity(id);
        std::string ps;
        for (const auto& p : ic.param_names) ps += " --" + p;
        std::cout << "  " << id << ps << "\n      " << ic.summary << "\n";
    }
    std::cout << "bijections:\n";
    for (const auto& b : bijection_names()) std::cout << "  " << b << "\n";
    std::cout << "domains:\n";
    for (const auto& d : domain_names()) std::cout << "  " << d << "\n";
    return kOk;
}

int cmd_verify(const std::string& id, const Common& c)
{
    const Params p = collect(c);
    const VerifyReport r = verify(id, p, c.trunc, c.cap);
    if (c.format == "json") {
        std::cout << json{{"id", r.id},
                          {"params", params_json(r.params)},
                          {"trunc", r.trunc},
                          {"equal", r.equal},
                          {"first_mismatch", mismatch_json(r.first_mismatch)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << id << " " << params_str(p) << " trunc " << c.trunc << ": " << (r.equal ? "equal" : "NOT equal");
        if (r.combinatorial) std::cout << " (combinatorial side checked)";
        std::cout << "\n";
        if (r.first_mismatch) std::cout << "  " << r.compared << ": " << mismatch_text(*r.first_mismatch) << "\n";
    }
    return r.equal ? kOk : kFalse;
}

// --- bijection demos ---------------------------------------------------------

std::pair<std::string, std::string> split_pair(const std::string& s)
{
    const auto bar = s.find('|');
    if (bar == std::string::npos) throw UsageError("expected 'first|second', got '" + s + "'");
    return {s.substr(0, bar), s.substr(bar + 1)};
}

void ferrers(std::ostream& os, const Partition& p)
{
    for (int part : p.parts()) os << "    " << std::string(static_cast<std::size_t>(part), '#') << "\n";
}

int require_int(const std::optional<long>& v, const char* flag)
{
    if (!v) throw UsageError(std::string("missing ") + flag);
    return static_cast<int>(*v);
}

int demo(const std::string& name, const Common& c, const std::string& input)
{
    std::ostream& os = std::cout;
    if (name == "phi") {
        const int n = require_int(c.n, "--n");
        const auto [l, pi] = split_pair(input);
        const B1Element in{DistinctPartition(parse_partition(l)), parse_partition(pi)};
        const PhiTrace tr = phi_trace(n, in);
        os << "lambda = " << in.lambda.str() << ", pi = " << in.pi.str() << ", n = " << n << "\n"
           << "l(lambda) = " << tr.ell << "\n"
           << "mu = " << tr.mu.str() << "\n"
           << "lambda* = " << Partition(tr.lambda_star).str() << "\n"
           << "nu = " << tr.image.nu.str() << "\n"
           << "weight " << in.weight() << " -> " << tr.image.weight() << "\n";
        const bool back = phi_inverse(n, tr.image) == in;
        os << "inverse " << (back ? "recovers the input" : "FAILS") << "\n";
        return back ? kOk : kFalse;
    }
    if (name == "psi") {
        const int n = require_int(c.n, "--n");
        const SignedDistinctSet mu = parse_signed_set(n, input);
        const DistinctPartition img = psi(n, mu);
        os << "mu = " << mu.str() << "\npsi(mu) = " << img.str() << "\n"
           << "weight " << mu.weight() << " = -" << n * (n + 1) / 2 << " + " << img.weight() << "\n";
        return psi_inverse(n, img) == mu ? kOk : kFalse;
    }
    if (name == "tau") {
        const int n = require_int(c.n, "--n");
        const SignedDistinctSet lam = parse_signed_set(n, input);
        const SignedDistinctSet img = tau(n, lam);
        os << "lambda = " << lam.str() << "\ntau(lambda) = " << img.str() << "\nweight " << lam.weight() << " -> "
           << img.weight() << "\n";
        return tau_inverse(n, img) == lam ? kOk : kFalse;
    }
    if (name == "rho") {
        const int n = require_int(c.n, "--n");
        const SignedDistinctSet lam = parse_signed_set(n, input);
        const B3Element img = rho(n, lam);
        std::string asc = "{";
        for (auto it = img.nu.parts().rbegin(); it != img.nu.parts().rend(); ++it)
            asc += (asc.size() > 1 ? "," : "") + std::to_string(*it);
        os << "lambda = " << lam.str() << ", n = " << n << "\n"
           << "t = " << img.t << "\n"
           << "mu = " << img.mu().str() << "\n"
           << "nu = " << img.nu.str() << " (increasing: " << asc << "})\n"
           << "weight " << lam.weight() << " -> " << img.mu_weight() << " + " << img.nu.weight() << "\n";
        return rho_inverse(n, img) == lam ? kOk : kFalse;
    }
    if (name == "durfee_split") {
        const Partition lam = parse_partition(input);
        const OEElement img = durfee_split(lam);
        os << "lambda = " << lam.str() << " (Durfee size " << durfee_size(lam) << ")\n";
        ferrers(os, lam);
        os << "mu = (" << img.mu() << "), nu = " << img.nu.str() << "\n";
        return durfee_join(img) == lam ? kOk : kFalse;
    }
    if (name == "nu3") {
        const int n = require_int(c.n, "--n");
        const Partition pi = parse_partition(input);
        const int k = static_cast<int>(pi.length());
        const OElement in{n, pi};
        const Nu3Trace tr = nu3_trace(n, k, in);
        os << "lambda = " << rectangle(n).str() << ", pi = " << pi.str() << " (n = " << n << ", k = " << k << ")\n"
           << "nu* = " << tr.nu_star.str() << "\n";
        ferrers(os, tr.nu_star);
        os << "mu = (" << tr.mu << ")\n"
           << "nu' = " << tr.nu_prime.str() << " (self-conjugate, Durfee size " << durfee_size(tr.nu_prime) << ")\n"
           << "nu = " << tr.image.nu.str() << "\n"
           << "weight " << in.weight() << " -> " << tr.image.weight() << "\n";
        return nu3_inverse(n, k, tr.image) == in ? kOk : kFalse;
    }
    throw UnknownBijection("unknown bijection '" + name + "'");
}

int cmd_bijection(const std::string& name, const Common& c, const std::optional<std::string>& demo_input)
{
    if (demo_input) return demo(name, c, *demo_input);
    const BijectionReport r = check_bijection(name, collect(c), c.cap);
    if (c.format == "json") {
        std::cout << json{{"name", r.name},
                          {"domain_size", r.domain_size},
                          {"codomain_size", r.codomain_size},
                          {"roundtrip_failures", r.roundtrip_failures},
                          {"weight_violations", r.weight_violations},
                          {"validation_failures", r.validation_failures},
                          {"coverage_failures", r.coverage_failures},
                          {"weight_multisets_equal", r.weight_multisets_equal},
                          {"witness", r.witness ? json(*r.witness) : json(nullptr)},
                          {"passed", r.passed()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << name << ": " << (r.passed() ? "passed" : "FAILED") << "\n"
                  << "  domain " << r.domain_size << ", codomain " << r.codomain_size << "\n"
                  << "  roundtrip failures " << r.roundtrip_failures << ", weight violations " << r.weight_violations
                  << ", validation failures " << r.validation_failures << ", coverage failures "
                  << r.coverage_failures << "\n";
        if (r.witness) std::cout << "  witness " << *r.witness << "\n";
    }
    return r.passed() ? kOk : kFalse;
}

int cmd_eval(const std::vector<std::string>& exprs, const Common& c)
{
    Params b = collect(c);
    b.try_emplace("T", c.trunc);
    std::vector<MultiSeries> values;
    for (const auto& text : exprs) values.push_back(dsl::eval(*dsl::parse(text), b, c.trunc));
    if (values.size() == 1) {
        if (c.format == "json") {
            json j = json::object();
            for (const auto& [m, qs] : values[0].entries()) {
                json terms = json::object();
                for (const auto& [e, coeff] : qs.terms()) terms[std::to_string(e)] = coeff.str();
                j[m.str()] = terms;
            }
            std::cout << json{{"trunc", c.trunc}, {"series", j}}.dump(2) << "\n";
        } else {
            std::cout << values[0].str() << "\n" << dump_coeffs(values[0]);
        }
        return kOk;
    }
    const auto m = first_mismatch(values[0], values[1]);
    if (c.format == "json") {
        std::cout << json{{"trunc", c.trunc}, {"equal", !m}, {"first_mismatch", mismatch_json(m)}}.dump(2) << "\n";
    } else if (m) {
        std::cout << "NOT equal: " << mismatch_text(*m) << "\n";
    } else {
        std::cout << "equal below q^" << std::min(values[0].trunc(), values[1].trunc()) << "\n";
    }
    return m ? kFalse : kOk;
}

int cmd_table(long max_n)
{
    if (max_n < 1) throw UsageError("--max-n must be at least 1");
    const int T = static_cast<int>(max_n) + 1;
    const MultiSeries a1 = build_side("ay1", Side::lhs, {}, T).substitute(Aux::z, 1, Mono{});
    const MultiSeries a2 = build_side("ay2", Side::lhs, {}, T).substitute(Aux::z, 1, Mono{});
    bool all = true;
    std::cout << "N\tp_omega\tp_nu\tp_nu0\tay1[z=1]\tay2[z=1]\n";
    for (long N = 1; N <= max_n; ++N) {
        const auto po = p_omega(N);
        const auto pn = p_nu(N);
        const auto pn0 = p_nu_zero(N);
        const BigInt c1 = a1.coeff(Mono{}, static_cast<int>(N));
        const BigInt c2 = a2.coeff(Mono{}, static_cast<int>(N));
        const bool ok = c1 == po && c2 == pn0;
        all = all && ok;
        std::cout << N << "\t" << po << "\t" << pn << "\t" << pn0 << "\t" << c1 << "\t" << c2 << (ok ? "" : "\tMISMATCH") << "\n";
    }
    return all ? kOk : kFalse;
}

int cmd_enumerate(const std::string& domain, const Common& c, bool cap_given)
{
    const Params p = collect(c);
    const auto elems = enumerate_domain(domain, p, cap_given || detail::infinite_domain(domain) ? std::optional<long>(c.cap) : std::nullopt);
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& e : elems) arr.push_back({{"element", to_string(e)}, {"weight", weight(e)}});
        std::cout << json{{"domain", domain}, {"params", params_json(p)}, {"count", elems.size()}, {"elements", arr}}.dump(2)
                  << "\n";
    } else {
        for (const auto& e : elems) std::cout << to_string(e) << "\t" << weight(e) << "\n";
        std::cout << elems.size() << " elements\n";
    }
    return kOk;
}

void add_param_flags(CLI::App* sub, Common& c)
{
    sub->add_option("--n", c.n, "parameter n");
    sub->add_option("--N", c.N, "parameter N");
    sub->add_option("--k", c.k, "parameter k");
    sub->add_option("--param", c.params, "extra parameter as name=value");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact q-series identities and partition bijections"};
    app.require_subcommand(1);
    Common c;
    auto format_opt = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto* list = app.add_subcommand("list", "list identities, bijections and domains");
    format_opt(list);

    std::string id;
    auto* ver = app.add_subcommand("verify", "verify an identity coefficient-exactly");
    ver->add_option("id", id, "identity id")->required();
    add_param_flags(ver, c);
    ver->add_option("--trunc", c.trunc, "truncation order")->check(CLI::PositiveNumber);
    ver->add_option("--cap", c.cap, "weight cap for enumerated sides")->check(CLI::NonNegativeNumber);
    format_opt(ver);

    std::string bij;
    std::optional<std::string> demo_input;
    auto* bi = app.add_subcommand("bijection", "check a bijection exhaustively, or trace one input");
    bi->add_option("name", bij, "bijection name")->required();
    add_param_flags(bi, c);
    bi->add_option("--max-nk", c.max_nk, "nu3: sweep all n + k up to this value");
    bi->add_option("--cap", c.cap, "weight cap for infinite families")->check(CLI::NonNegativeNumber);
    bi->add_option("--demo", demo_input, "trace one input, e.g. \"(5,3)|(2,2,2,1,1)\" or \"{-4,-2,0}\"");
    format_opt(bi);

    std::vector<std::string> exprs;
    auto* ev = app.add_subcommand("eval", "expand an expression, or compare two");
    ev->add_option("expr", exprs, "one or two expressions")->required()->expected(1, 2);
    ev->add_option("--bind", c.params, "integer binding name=value");
    ev->add_option("--trunc", c.trunc, "truncation order")->check(CLI::PositiveNumber);
    format_opt(ev);

    long max_n = 0;
    auto* tab = app.add_subcommand("table", "p_omega and p_nu against series coefficients");
    tab->add_option("--max-n", max_n, "largest N")->required();

    std::string domain;
    auto* en = app.add_subcommand("enumerate", "list the elements of a domain");
    en->add_option("domain", domain, "domain name")->required();
    add_param_flags(en, c);
    auto* cap_opt = en->add_option("--cap", c.cap, "weight cap")->check(CLI::NonNegativeNumber);
    format_opt(en);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (list->parsed()) return cmd_list(c);
        if (ver->parsed()) return cmd_verify(id, c);
        if (bi->parsed()) return cmd_bijection(bij, c, demo_input);
        if (ev->parsed()) return cmd_eval(exprs, c);
        if (tab->parsed()) return cmd_table(max_n);
        if (en->parsed()) return cmd_enumerate(domain, c, cap_opt->count() > 0);
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kFalse;
    }
    return kUsage;
}
