#ifndef MLV_IO_HPP
#define MLV_IO_HPP

#include "mlv/expr.hpp"
#include "mlv/mlv.hpp"

#include <json.hpp>

namespace mlv {

using json = nlohmann::ordered_json;

template <class B>
bool is_zero_elem(B const& K, typename B::elem const& a) { return K.val(a).is_infinite(); }

/* polynomial in x over K from either {"coeffs": [...], "var": "x"} (constant
 * term first) or an expression string such as "x^6 + 108" */
template <class B>
polynomial<typename B::elem> parse_polynomial(B const& K, json const& j)
{
    using epoly = polynomial<typename B::elem>;
    auto one = K.from_int(1);
    if (j.is_object()) {
        std::vector<typename B::elem> c;
        for (auto const& s : j.at("coeffs")) c.push_back(K.parse(s.is_string() ? s.get<std::string>() : s.dump()));
        return epoly(c);
    }
    if (!j.is_string()) fail(error_kind::parse, "polynomial must be an object or a string");
    std::string var = "x";
    expr_ops<epoly> ops;
    ops.number = [&K](bigint const& n) { return epoly::constant(K.parse(n.get_str())); };
    ops.variable = [&K, &var, one](std::string const& name) {
        if (name == var) return epoly::monomial(one, 1);
        return epoly::constant(K.parse(name));
    };
    ops.divide = [&K](epoly const& a, epoly const& b) {
        if (b.degree() != 0 || is_zero_elem(K, b.lc())) fail(error_kind::parse, "only division by nonzero constants");
        return a.scaled(b.lc() / b.lc() / b.lc());
    };
    ops.power = [one](epoly const& a, rat const& e) {
        if (!is_integer(e) || e < 0) fail(error_kind::parse, "polynomial exponents must be nonnegative integers");
        long k = e.get_num().get_si();
        epoly r = epoly::constant(one);
        for (long i = 0; i < k; ++i) r = r * a;
        return r;
    };
    return parse_expr(j.get<std::string>(), ops);
}

template <class B>
json polynomial_json(B const& K, polynomial<typename B::elem> const& f)
{
    json c = json::array();
    for (auto const& a : f.coeffs()) c.push_back(K.str(a));
    auto fmt = std::function<std::string(typename B::elem const&)>([&K](auto const& a) { return K.str(a); });
    return json{{"coeffs", c}, {"var", "x"}, {"text", poly_to_string(f, fmt, "x")}};
}

inline json field_json(qpadic_field const& K) { return {{"kind", K.kind()}, {"p", K.p}}; }
inline json field_json(fp_rft_field const& K) { return {{"kind", K.kind()}, {"p", K.p}, {"vars", K.names}}; }
inline json field_json(qt_rank2_field const& K) { return {{"kind", K.kind()}, {"p", K.p}}; }

/* calls f with a shared_ptr to the backend named by the descriptor */
template <class F>
decltype(auto) with_field(json const& d, F&& f)
{
    std::string kind = d.at("kind").get<std::string>();
    long p = d.at("p").get<long>();
    if (p < 2 || !is_prime((unsigned long)p)) fail(error_kind::parse, "p must be prime");
    if (kind == "Q_padic") return f(std::make_shared<const qpadic_field>(qpadic_field{(unsigned long)p}));
    if (kind == "Qt_rank2") return f(std::make_shared<const qt_rank2_field>(qt_rank2_field{(unsigned long)p}));
    if (kind == "Fp_rft") {
        std::vector<std::string> vars;
        if (d.contains("vars")) vars = d.at("vars").get<std::vector<std::string>>();
        for (auto const& v : vars)
            if (v == "t") fail(error_kind::parse, "t is the valuation variable and is implicit");
        return f(std::make_shared<const fp_rft_field>(fp_rft_field{(unsigned long)p, vars}));
    }
    fail(error_kind::parse, "unknown field kind " + kind);
}

/* {"steps": [{"phi": poly, "gamma": value}, ...]}; the first phi is x - a */
template <class B>
inductive_valuation<B> valuation_from_steps(std::shared_ptr<const B> K, json const& steps)
{
    if (!steps.is_array() || steps.empty()) fail(error_kind::parse, "a valuation needs at least one step");
    auto gam = [&K](json const& s) { return group_value::parse(s.at("gamma").get<std::string>(), K->rank()); };
    auto phi0 = parse_polynomial(*K, steps[0].at("phi"));
    if (phi0.degree() != 1 || !(phi0.lc() == K->from_int(1))) fail(error_kind::parse, "first key polynomial must be monic of degree one");
    auto v = inductive_valuation<B>::depth_zero(K, K->from_int(0) - phi0.coeff(0), gam(steps[0]));
    for (size_t k = 1; k < steps.size(); ++k) v = v.augment(parse_polynomial(*K, steps[k].at("phi")), gam(steps[k]));
    return v;
}

template <class B>
json chain_doc(inductive_valuation<B> const& v)
{
    json steps = json::array();
    for (int L = 0; L <= v.top(); ++L)
        steps.push_back({{"phi", polynomial_json(v.field(), v.at(L).phi)}, {"gamma", v.at(L).gamma.str()}});
    return {{"field", field_json(v.field())}, {"steps", steps}};
}

template <class B>
json chain_report(mlv_chain<B> const& c)
{
    json doc = chain_doc(c.v);
    auto ci = get_chain_invariants(c);
    doc["depth"] = c.depth;
    doc["e"] = ci.e;
    doc["f"] = ci.f;
    doc["defect_assumed_one"] = ci.defect_assumed_one;
    json steps = json::array();
    for (auto const& s : c.steps)
        steps.push_back({{"phi_deg", s.phi_deg}, {"phi", s.phi}, {"gamma", s.gamma.str()}, {"kind", s.kind}, {"e_i", s.e_i}, {"f_i", s.f_i}});
    doc["normalized_steps"] = steps;
    json raw = json::array();
    for (auto const& r : c.v.raw_steps())
        raw.push_back({{"phi", c.v.str(r.phi)}, {"gamma", r.gamma.str()}, {"refinement", r.refinement}});
    doc["raw_steps"] = raw;
    json prov = json::array();
    for (auto const& e : c.provenance)
        prov.push_back({{"level", e.level}, {"phi", e.phi}, {"gamma", e.gamma}, {"residual", e.residual},
                        {"factors", e.factors}, {"steeper_sides", e.sides}, {"action", e.action}});
    doc["provenance"] = prov;
    doc["residue_tower"] = c.v.tower().describe();
    doc["followed_first_branch"] = c.followed_branch;
    return doc;
}

}

#endif
