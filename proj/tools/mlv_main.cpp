#include "mlv/io.hpp"
#include "mlv/okutsu.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mlv;

namespace {

struct options {
    std::string input, fixture;
    bool pretty = false, strict = false;
    int max_refinements = 25;
    long t_pr = 16, p_pr = 16;
    long budget = -1;
    unsigned parallel = 1;
    int stop_at_depth = -1;
    long fixture_p = 2;
};

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sec32_g(long p)
{
    auto s = std::to_string(p);
    return "((x^" + s + " - q)^" + s + " - t^" + s + "*r)^" + s + " + t^" + std::to_string(p * p * p * p) + "*x - t^" +
           std::to_string(p * p * p) + "*s";
}

json fixture(std::string const& name, long p)
{
    if (name == "sec32") {
        auto s = std::to_string(p);
        std::string phi1 = "x^" + s + " - q";
        std::string phi2 = "(x^" + s + " - q)^" + s + " - t^" + s + "*r";
        return {{"field", {{"kind", "Fp_rft"}, {"p", p}, {"vars", {"q", "r", "s"}}}},
                {"g", sec32_g(p)},
                {"valuation", {{"steps", {{{"phi", "x"}, {"gamma", "0"}}, {{"phi", phi1}, {"gamma", "1"}}, {{"phi", phi2}, {"gamma", std::to_string(p * p)}}}}}},
                {"f", sec32_g(p)},
                {"Q", sec32_g(p)}};
    }
    if (name == "sec34") {
        // theta = alpha (eps - 1); eps = theta^3/12 - 1/2 and -alpha eps^2 is a root of x^3 + 2
        std::string eps = "(x^3/12 - 1/2)";
        return {{"field", {{"kind", "Q_padic"}, {"p", 2}}},
                {"g", "x^6 + 108"},
                {"alpha", "x"},
                {"box", {-2, 2}},
                {"oracle", {{"kind", "chain"}}},
                {"families", {{{"degree", 1}, {"elements", {"0"}}, {"max", true}},
                              {{"degree", 3}, {"elements", {"-x*" + eps + "^2/(" + eps + " - 1)"}}, {"max", true}},
                              {{"degree", 6}, {"elements", {"x"}}}}},
                {"challengers", {{{"element", "1"}, {"degree", 1}}, {{"element", "2"}, {"degree", 1}}, {{"element", "x^3/6"}, {"degree", 2}}}}};
    }
    if (name == "sec4") {
        return {{"field", {{"kind", "Qt_rank2"}, {"p", 5}}},
                {"g", "x^4 - 2*t*x^2 + (t+2)^2"},
                {"oracle", {{"kind", "series"}, {"p", 5}}},
                {"families", {{{"degree", 1}, {"generator", {{"template", "a_{n}+1"}, {"first", 1}, {"samples", 4}}}, {"unbounded", "level:0"}},
                              {{"degree", 2}, {"generator", {{"template", "i+b_{n}"}, {"first", 1}, {"samples", 4}}}, {"unbounded", "all"}},
                              {{"degree", 4}, {"elements", {"theta"}}}}},
                {"challengers", {{{"element", "0"}, {"degree", 1}}, {{"element", "3"}, {"degree", 1}}, {{"element", "1/2"}, {"degree", 1}},
                                 {{"element", "2+t"}, {"degree", 1}}, {{"element", "i"}, {"degree", 2}}, {{"element", "i+1+t"}, {"degree", 2}},
                                 {{"element", "i+1+t/2"}, {"degree", 2}}}},
                {"elements", {"a_1+1", "a_2+1", "a_3+1", "a_4+1", "i+1", "i+b_1", "i+b_2", "i+b_3", "i+b_4", "theta"}}};
    }
    throw input_error("unknown fixture " + name);
}

json load_problem(options const& o)
{
    if (!o.fixture.empty() && !o.input.empty()) throw input_error("--input and --fixture are exclusive");
    if (!o.fixture.empty()) return fixture(o.fixture, o.fixture_p);
    if (o.input.empty()) throw input_error("one of --input or --fixture is required");
    std::ifstream in(o.input);
    if (!in) throw input_error("cannot open " + o.input);
    return json::parse(in);
}

json const& need(json const& j, char const* key)
{
    if (!j.contains(key)) throw input_error(std::string("problem file lacks \"") + key + "\"");
    return j.at(key);
}

chain_bounds bounds_of(options const& o)
{
    chain_bounds b;
    b.max_refinements = o.max_refinements;
    b.policy = o.strict ? branch_policy::strict : branch_policy::follow_first;
    return b;
}

json cmd_eval(json const& P)
{
    return with_field(need(P, "field"), [&](auto K) -> json {
        auto v = valuation_from_steps(K, need(need(P, "valuation"), "steps"));
        auto f = parse_polynomial(*K, need(P, "f"));
        return {{"valuation", chain_doc(v)}, {"f", polynomial_json(*K, f)}, {"value", v.evaluate(f).str()}};
    });
}

json cmd_residual(json const& P)
{
    return with_field(need(P, "field"), [&](auto K) -> json {
        auto v = valuation_from_steps(K, need(need(P, "valuation"), "steps"));
        auto g = parse_polynomial(*K, need(P, "g"));
        int top = v.top();
        json levels = json::array();
        for (int L = 0; L <= top; ++L) {
            auto pre = v.prefix(L);
            auto rd = pre.residual(g);
            json fac = json::array();
            if (rd.R.degree() > 0)
                for (auto const& [psi, m] : pre.tower().factor(rd.R, L)) fac.push_back({{"factor", pre.kstr(psi, L)}, {"multiplicity", m}});
            levels.push_back({{"level", L}, {"phi", v.str(v.at(L).phi)}, {"gamma", v.at(L).gamma.str()}, {"u", v.str(v.at(L).u)},
                              {"value", rd.value.str()}, {"S", rd.S}, {"l0", rd.l0}, {"l", rd.l}, {"d", rd.d}, {"e", rd.e},
                              {"R", pre.kstr(rd.R, L)}, {"factors", fac}});
        }
        return {{"valuation", chain_doc(v)}, {"g", polynomial_json(*K, g)}, {"residue_tower", v.tower().describe()}, {"levels", levels}};
    });
}

json cmd_iskey(json const& P)
{
    return with_field(need(P, "field"), [&](auto K) -> json {
        auto v = valuation_from_steps(K, need(need(P, "valuation"), "steps"));
        auto Q = parse_polynomial(*K, need(P, "Q"));
        auto kc = v.is_key(Q);
        json out = {{"valuation", chain_doc(v)}, {"Q", polynomial_json(*K, Q)}, {"key", kc.key}, {"certificate", kc.kind}};
        if (kc.R.degree() >= 0 && !kc.R.is_zero()) out["R"] = v.kstr(kc.R, v.top());
        if (kc.key) out["relative_residue_degree"] = v.relative_residue_degree(Q);
        return out;
    });
}

json cmd_chain(json const& P, options const& o, bool depth_only)
{
    return with_field(need(P, "field"), [&](auto K) -> json {
        auto g = parse_polynomial(*K, need(P, "g"));
        auto c = compute_mlv_chain(K, g, bounds_of(o));
        if (depth_only) {
            auto ci = get_chain_invariants(c);
            return {{"depth", c.depth}, {"e", ci.e}, {"f", ci.f}};
        }
        return chain_report(c);
    });
}

json cmd_branches(json const& P, options const& o, bool& unresolved)
{
    return with_field(need(P, "field"), [&](auto K) -> json {
        auto g = parse_polynomial(*K, need(P, "g"));
        auto br = factor_certificate(K, g, bounds_of(o));
        json arr = json::array();
        long sum = 0;
        for (auto const& b : br) {
            arr.push_back({{"prefix", b.prefix}, {"e", b.e}, {"f", b.f}, {"resolved", b.resolved}, {"note", b.note}});
            if (b.resolved) sum += b.e * b.f;
            else unresolved = true;
        }
        return {{"field", field_json(*K)}, {"g", polynomial_json(*K, g)}, {"branches", arr}, {"sum_ef", sum}, {"degree", g.degree()}};
    });
}

json cmd_cert(json const& P, options const& o)
{
    return with_field(need(P, "field"), [&](auto K) -> json {
        auto g = parse_polynomial(*K, need(P, "g"));
        auto a = parse_polynomial(*K, need(P, "alpha"));
        auto c = compute_mlv_chain(K, g, bounds_of(o));
        auto r = depth_one_certificate(c, a);
        json out = {{"chain", chain_report(c)}, {"alpha", polynomial_json(*K, a)}, {"generates", r.ok}, {"status", r.status},
                    {"value", r.value.str()}, {"order", r.order}, {"e", r.e}, {"f", r.f}};
        if (!r.residue.empty()) {
            out["residue"] = r.residue;
            out["residue_degree"] = r.residue_degree;
        }
        return out;
    });
}

json cmd_search(json const& P, options const& o)
{
    return with_field(need(P, "field"), [&](auto K) -> json {
        auto g = parse_polynomial(*K, need(P, "g"));
        long lo = -2, hi = 2;
        if (P.contains("box")) {
            lo = P.at("box").at(0).get<long>();
            hi = P.at("box").at(1).get<long>();
        }
        search_budget b;
        b.max_candidates = o.budget;
        b.threads = o.parallel;
        b.stop_at_depth = o.stop_at_depth;
        if (P.contains("stop_at_depth")) b.stop_at_depth = P.at("stop_at_depth").get<int>();
        auto res = generator_search(K, g, lo, hi, b, bounds_of(o));
        json table = json::array();
        std::map<int, long> hist;
        long generators = 0;
        for (auto const& e : res.table) {
            if (e.status == "not a generator") continue;
            ++generators;
            if (e.depth >= 0) ++hist[e.depth];
            table.push_back({{"coeffs", e.coeffs}, {"minpoly", e.minpoly}, {"depth", e.depth}, {"status", e.status}});
        }
        json h = json::object();
        for (auto const& [d, n] : hist) h[std::to_string(d)] = n;
        return {{"field", field_json(*K)}, {"g", polynomial_json(*K, g)}, {"box", {lo, hi}},
                {"min_depth_upper_bound", res.min_depth}, {"witness_coeffs", res.witness},
                {"examined", res.examined}, {"total", res.total}, {"generators", generators},
                {"depth_histogram", h}, {"budget_exhausted", res.budget_exhausted}, {"stopped_early", res.stopped_early}, {"table", table}};
    });
}

okutsu_sequence sequence_of(json const& P)
{
    okutsu_sequence seq;
    for (auto const& f : need(P, "families")) {
        okutsu_family fam;
        fam.degree = f.at("degree").get<int>();
        if (f.contains("elements")) fam.elements = f.at("elements").get<std::vector<std::string>>();
        if (f.contains("generator")) {
            auto const& g = f.at("generator");
            fam.generator = g.at("template").get<std::string>();
            fam.first = g.value("first", 1L);
            fam.samples = g.at("samples").get<long>();
        }
        fam.max_declared = f.value("max", false);
        seq.families.push_back(fam);
    }
    return seq;
}

json okutsu_json(okutsu_report const& rep, okutsu_sequence const& seq, json const& P, int rank)
{
    json checks = json::array();
    for (auto const& c : rep.checks) checks.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    json sampled = json::array();
    json cuts = json::array();
    auto const& fams = need(P, "families");
    for (size_t l = 0; l < rep.sampled.size(); ++l) {
        json s = json::array();
        distance_set d;
        d.rank = rank;
        for (auto const& [el, v] : rep.sampled[l]) {
            s.push_back({{"element", el}, {"distance", v.str()}});
            if (v.is_finite()) d.finite_values.push_back(v);
        }
        sampled.push_back(s);
        std::string unb = fams[l].value("unbounded", "");
        if (unb == "all") d.unbounded = distance_set::marker::unbounded;
        else if (unb.rfind("level:", 0) == 0) {
            d.unbounded = distance_set::marker::level_unbounded;
            d.level = parse_rational(unb.substr(6));
        } else if (!unb.empty()) throw input_error("unknown unboundedness marker " + unb);
        bool own = l + 1 == rep.sampled.size();
        cuts.push_back(distance_cut(d, own).str());
    }
    auto od = okutsu_depth_and_kinds(seq);
    return {{"pass", rep.pass}, {"scope", rep.scope}, {"checks", checks}, {"sampled", sampled}, {"distance_cuts", cuts},
            {"r", od.r}, {"kinds", od.kinds}};
}

std::vector<okutsu_challenger> challengers_of(json const& P)
{
    std::vector<okutsu_challenger> out;
    if (P.contains("challengers"))
        for (auto const& c : P.at("challengers")) out.push_back({c.at("element").get<std::string>(), c.at("degree").get<int>()});
    return out;
}

json cmd_okutsu(json const& P, options const& o, bool& failed)
{
    auto const& orc = need(P, "oracle");
    auto seq = sequence_of(P);
    auto ch = challengers_of(P);
    std::string kind = orc.at("kind").get<std::string>();
    if (kind == "series") {
        series_oracle O((unsigned)orc.value("p", 5L), o.t_pr, o.p_pr);
        distance_fn df = [&O](std::string const& s) { return O.distance(s); };
        auto rep = verify_okutsu_sequence(df, seq, ch);
        failed = !rep.pass;
        json out = okutsu_json(rep, seq, P, 2);
        out["oracle"] = {{"kind", "series"}, {"p", O.p()}, {"t_precision", O.t_precision()}, {"p_precision", O.p_precision()}};
        return out;
    }
    if (kind != "chain") throw input_error("unknown oracle kind " + kind);
    return with_field(need(P, "field"), [&](auto K) -> json {
        auto g = parse_polynomial(*K, need(P, "g"));
        auto c = compute_mlv_chain(K, g, bounds_of(o));
        chain_oracle O(c);
        distance_fn df = [&O](std::string const& s) { return O.distance(s); };
        auto rep = verify_okutsu_sequence(df, seq, ch);
        json out = okutsu_json(rep, seq, P, K->rank());
        auto od = okutsu_depth_and_kinds(seq);
        bool agree = od.r == c.depth;
        for (auto const& k : od.kinds) agree = agree && k == "ordinary";
        out["oracle"] = {{"kind", "chain"}, {"chain_depth", c.depth}, {"depth_agrees", agree}};
        failed = !rep.pass || !agree;
        return out;
    });
}

json cmd_series(json const& P, options const& o)
{
    long p = P.contains("oracle") ? P.at("oracle").value("p", 5L) : P.value("p", 5L);
    series_oracle O((unsigned)p, o.t_pr, o.p_pr);
    json vals = json::array();
    for (auto const& e : need(P, "elements")) {
        auto s = e.get<std::string>();
        vals.push_back({{"element", s}, {"distance", O.distance(s).str()}, {"value", O.value(O.parse(s)).str()}, {"certified", true}});
    }
    json digits = O.root().digits;
    return {{"p", p}, {"t_precision", o.t_pr}, {"p_precision", o.p_pr}, {"i_digits", digits}, {"values", vals}};
}

std::string summary(std::string const& cmd, json const& r)
{
    std::ostringstream s;
    if (cmd == "chain" || cmd == "depth") s << "depth " << r.value("depth", -1) << ", e " << r.value("e", 0L) << ", f " << r.value("f", 0L);
    else if (cmd == "cert-depth-one") s << "status " << r.value("status", "");
    else if (cmd == "search-generators") s << "least depth found " << r.value("min_depth_upper_bound", -1) << " (an upper bound)";
    else if (cmd == "okutsu-verify") s << (r.value("pass", false) ? "sequence verified" : "verification failed") << ", r = " << r.value("r", 0);
    else if (cmd == "iskey") s << (r.value("key", false) ? "key polynomial" : "not a key polynomial");
    else s << cmd << " done";
    return s.str();
}

}

int main(int argc, char** argv)
{
    CLI::App app{"MacLane-Vaquie chains, depth and Okutsu sequences"};
    app.require_subcommand(1, 1);
    options o;
    auto add_common = [&o](CLI::App* sc) {
        sc->add_option("--input", o.input, "problem file (JSON)");
        sc->add_option("--fixture", o.fixture, "built-in example")->check(CLI::IsMember({"sec32", "sec34", "sec4"}));
        sc->add_option("--fixture-p", o.fixture_p, "prime for the sec32 fixture")->check(CLI::IsMember({2, 3, 5}));
        sc->add_flag("--pretty", o.pretty, "indented output with a summary line");
        sc->add_option("--max-refinements", o.max_refinements, "refinements without degree growth before giving up");
        sc->add_flag("--strict", o.strict, "fail with Branched instead of following the first candidate");
        sc->add_option("--t-pr", o.t_pr, "t-adic precision of the series oracle");
        sc->add_option("--p-pr", o.p_pr, "p-adic precision of the series oracle");
        sc->add_option("--budget", o.budget, "maximum number of candidates in search-generators");
        sc->add_option("--parallel", o.parallel, "worker threads for search-generators");
        sc->add_option("--stop-at-depth", o.stop_at_depth, "search-generators stops at the first generator of at most this depth");
    };
    std::vector<std::pair<std::string, std::string>> names = {
        {"eval", "value of f under an inductive valuation"},
        {"residual", "residual polynomial of g at every level"},
        {"iskey", "decide whether Q is a key polynomial"},
        {"chain", "MacLane-Vaquie chain of a monic g"},
        {"branches", "branch certificate: every resolved branch with e and f"},
        {"depth", "depth, e and f of g"},
        {"cert-depth-one", "test whether alpha has depth one"},
        {"search-generators", "least depth over a box of generators"},
        {"okutsu-verify", "check an Okutsu sequence against a distance oracle"},
        {"series-value", "certified values of series elements"}};
    for (auto const& [n, d] : names) add_common(app.add_subcommand(n, d));
    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    std::string cmd = app.get_subcommands().front()->get_name();

    json report;
    int rc = 0;
    try {
        json P = load_problem(o);
        bool flag = false;
        if (cmd == "eval") report = cmd_eval(P);
        else if (cmd == "residual") report = cmd_residual(P);
        else if (cmd == "iskey") report = cmd_iskey(P);
        else if (cmd == "chain") report = cmd_chain(P, o, false);
        else if (cmd == "depth") report = cmd_chain(P, o, true);
        else if (cmd == "branches") report = cmd_branches(P, o, flag);
        else if (cmd == "cert-depth-one") report = cmd_cert(P, o);
        else if (cmd == "search-generators") report = cmd_search(P, o);
        else if (cmd == "okutsu-verify") report = cmd_okutsu(P, o, flag);
        else report = cmd_series(P, o);
        if (flag) rc = 3;
    } catch (math_error const& e) {
        report = {{"error", error_kind_name(e.kind())}, {"message", e.what()}};
        rc = e.kind() == error_kind::parse ? 2 : e.kind() == error_kind::precision_exhausted ? 4 : 3;
    } catch (input_error const& e) {
        report = {{"error", "InputError"}, {"message", e.what()}};
        rc = 2;
    } catch (json::exception const& e) {
        report = {{"error", "InputError"}, {"message", e.what()}};
        rc = 2;
    }
    if (o.pretty) {
        if (!report.contains("error")) report["summary"] = summary(cmd, report);
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << report.dump() << "\n";
    }
    if (rc != 0) std::cerr << report.value("message", "failure") << "\n";
    return rc;
}
