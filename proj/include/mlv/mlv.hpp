#ifndef MLV_MLV_HPP
#define MLV_MLV_HPP

#include "mlv/indval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <thread>
#include <tuple>

namespace mlv {

enum class branch_policy { follow_first, strict };

struct chain_bounds {
    int max_refinements = 25;
    branch_policy policy = branch_policy::follow_first;
};

/* One pass of the lifting loop: what was seen at a level and what was done. */
struct chain_event {
    int level = 0;
    std::string phi, gamma, residual;
    std::vector<std::string> factors;
    std::vector<std::string> sides;     // slopes of g w.r.t. phi steeper than gamma
    std::string action;
};

struct chain_step {
    int phi_deg = 0;
    std::string phi;
    group_value gamma;
    std::string kind = "ordinary";
    long e_i = 1;
    long f_i = 1;
};

struct chain_invariants {
    long e = 1, f = 1;
    bool defect_assumed_one = true;
};

template <class B>
struct mlv_chain {
    inductive_valuation<B> v;
    std::vector<chain_event> provenance;
    std::vector<chain_step> steps;
    int depth = 0;
    bool followed_branch = false;   // some step had several candidates
};

template <class B>
std::vector<chain_step> normalized_steps(inductive_valuation<B> const& v)
{
    std::vector<chain_step> out;
    int T = v.top();
    for (int L = 0; L <= T; ++L) {
        auto const& l = v.at(L);
        chain_step s;
        s.phi_deg = l.phi.degree();
        s.phi = v.str(l.phi);
        s.gamma = l.gamma;
        if (L < T) {
            s.e_i = l.e;
            s.f_i = v.at(L + 1).phi.degree() / (l.e * l.phi.degree());
        }
        out.push_back(s);
    }
    return out;
}

template <class B>
int depth(mlv_chain<B> const& c) { return c.depth; }

template <class B>
chain_invariants invariants_of(inductive_valuation<B> const& v)
{
    chain_invariants ci;
    for (auto const& s : normalized_steps(v)) {
        ci.e *= s.e_i;
        ci.f *= s.f_i;
    }
    return ci;
}

template <class B>
chain_invariants get_chain_invariants(mlv_chain<B> const& c) { return invariants_of(c.v); }

namespace detail {

template <class B>
std::vector<std::string> side_strings(std::vector<polygon_side> const& sides)
{
    std::vector<std::string> out;
    for (auto const& s : sides) out.push_back(s.slope.str() + " [" + std::to_string(s.start) + "," + std::to_string(s.end) + "]");
    return out;
}

template <class E>
bool divides_exactly(polynomial<E> const& Q, polynomial<E> const& g)
{
    return divrem_monic(g, Q).second.is_zero();
}

}

template <class B>
mlv_chain<B> compute_mlv_chain(std::shared_ptr<const B> K, polynomial<typename B::elem> const& g, chain_bounds const& bounds = {})
{
    using IV = inductive_valuation<B>;
    if (g.degree() < 1 || !(g.lc() == K->from_int(1))) fail(error_kind::non_monic, "input polynomial must be monic of positive degree");
    for (auto const& c : g.coeffs())
        if (auto v = K->val(c); v.is_finite() && v < group_value::zero(K->rank()))
            fail(error_kind::negative_value, "coefficients must lie in the valuation ring");

    IV mu = IV::depth_zero(K, typename B::elem{}, group_value::zero(K->rank()));
    std::vector<chain_event> prov;
    bool followed = false;
    int refinements = 0;
    while (true) {
        int L = mu.top();
        chain_event ev;
        ev.level = L;
        ev.phi = mu.str(mu.key());
        ev.gamma = mu.at(L).gamma.str();

        auto kc = mu.is_key(g);
        ev.residual = mu.kstr(kc.R, L);
        if (kc.key) {
            ev.action = "terminal (" + kc.kind + ")";
            prov.push_back(ev);
            mu = mu.augment(g, group_value::infinity(K->rank()));
            break;
        }
        auto rd = mu.residual(g);
        ev.residual = mu.kstr(rd.R, L);
        auto fac = rd.R.degree() > 0 ? mu.tower().factor(rd.R, L) : decltype(mu.tower().factor(rd.R, L)){};
        for (auto const& [psi, m] : fac) ev.factors.push_back("(" + mu.kstr(psi, L) + ")^" + std::to_string(m));
        auto np = mu.polygon(mu.key(), g);
        auto steep = np.steeper_than(mu.at(L).gamma);
        ev.sides = detail::side_strings<B>(steep);

        size_t nbranch = fac.size() + steep.size();
        if (nbranch == 0) fail(error_kind::precondition_violated, "no continuation at level " + std::to_string(L));
        if (nbranch > 1) {
            if (bounds.policy == branch_policy::strict) {
                std::string list;
                for (auto const& s : ev.factors) list += " " + s;
                for (auto const& s : ev.sides) list += " side " + s;
                fail(error_kind::branched, "several continuations at level " + std::to_string(L) + ":" + list);
            }
            followed = true;
        }

        int before = mu.key().degree();
        if (!fac.empty()) {
            auto Q = mu.lift_key(fac[0].first);
            if (Q.degree() < g.degree() && detail::divides_exactly(Q, g))
                fail(error_kind::precondition_violated, "input has the proper factor " + mu.str(Q));
            auto npq = mu.polygon(Q, g);
            auto sq = npq.steeper_than(mu.evaluate(Q));
            if (sq.empty()) fail(error_kind::precondition_violated, "lifted key " + mu.str(Q) + " has no steeper side");
            if (sq.size() > 1) {
                if (bounds.policy == branch_policy::strict)
                    fail(error_kind::branched, "several slopes for " + mu.str(Q));
                followed = true;
            }
            auto gam = -sq[0].slope;
            ev.action = "augment " + mu.str(Q) + " with " + gam.str();
            mu = mu.augment(Q, gam);
        } else {
            auto gam = -steep[0].slope;
            ev.action = "refine to " + gam.str();
            mu = mu.augment(mu.key(), gam);
        }
        prov.push_back(ev);
        if (mu.key().degree() == before) {
            if (++refinements > bounds.max_refinements)
                fail(error_kind::limit_situation, std::to_string(bounds.max_refinements) + " refinements without degree growth at degree " + std::to_string(before));
        } else {
            refinements = 0;
        }
    }
    mlv_chain<B> out{mu, prov, normalized_steps(mu), mu.top(), followed};
    return out;
}

struct branch_record {
    std::vector<std::string> prefix;    // "(phi, gamma)" pairs
    long e = 1, f = 1;
    bool resolved = false;
    std::string note;
};

template <class B>
std::vector<branch_record> factor_certificate(std::shared_ptr<const B> K, polynomial<typename B::elem> const& g, chain_bounds const& bounds = {})
{
    using IV = inductive_valuation<B>;
    using epoly = polynomial<typename B::elem>;
    if (g.degree() < 1 || !(g.lc() == K->from_int(1))) fail(error_kind::non_monic, "input polynomial must be monic of positive degree");
    std::vector<branch_record> out;

    auto prefix_of = [](IV const& mu) {
        std::vector<std::string> p;
        for (int L = 0; L <= mu.top(); ++L) p.push_back("(" + mu.str(mu.at(L).phi) + ", " + mu.at(L).gamma.str() + ")");
        return p;
    };
    // e and f of a factor whose last key is a lift of a residual factor of degree fdeg at the top of mu
    auto ef_of = [](IV const& mu, long fdeg) {
        long e = 1, f = fdeg;
        for (int L = 0; L <= mu.top(); ++L) {
            e *= mu.at(L).e;
            if (L < mu.top()) f *= mu.at(L + 1).phi.degree() / (mu.at(L).e * mu.at(L).phi.degree());
        }
        return std::pair<long, long>(e, f);
    };

    std::function<void(IV const&, int)> explore = [&](IV const& mu, int refinements) {
        int L = mu.top();
        auto rd = mu.residual(g);
        if (rd.R.degree() == 0) return;
        auto fac = mu.tower().factor(rd.R, L);
        for (auto const& [psi, m] : fac) {
            auto [e, f] = ef_of(mu, psi.degree());
            if (m == 1) {
                branch_record b{prefix_of(mu), e, f, true, "residual factor " + mu.kstr(psi, L)};
                out.push_back(b);
                continue;
            }
            epoly Q = mu.lift_key(psi);
            bool same = Q.degree() == mu.key().degree();
            if (same && refinements >= bounds.max_refinements) {
                branch_record b{prefix_of(mu), e, f, false, "refinement bound reached at " + mu.str(Q)};
                out.push_back(b);
                continue;
            }
            auto c = phi_expansion(g, Q, K->from_int(1));
            if (c[0].is_zero()) {
                auto p = prefix_of(mu);
                p.push_back("(" + mu.str(Q) + ", inf)");
                out.push_back({p, e, f, true, "exact factor"});
            }
            auto sides = mu.polygon(Q, g).steeper_than(mu.evaluate(Q));
            for (auto const& s : sides) explore(mu.augment(Q, -s.slope), same ? refinements + 1 : 0);
        }
    };

    IV gauss = IV::depth_zero(K, typename B::elem{}, group_value::zero(K->rank()));
    if (K->val(g.coeff(0)).is_infinite()) out.push_back({{"(x, inf)"}, 1, 1, true, "exact factor"});
    explore(gauss, 0);
    for (auto const& s : gauss.polygon(gauss.key(), g).steeper_than(group_value::zero(K->rank())))
        explore(IV::depth_zero(K, typename B::elem{}, -s.slope), 1);
    return out;
}

struct depth_one_report {
    bool ok = false;
    std::string status;     // "ok" | "ValueNotGenerating" | "ResidueNotGenerating"
    group_value value;
    long order = 1;         // order of value modulo vK
    long e = 1, f = 1;
    std::string residue;
    int residue_degree = 1;
};

template <class B>
depth_one_report depth_one_certificate(mlv_chain<B> const& chain, polynomial<typename B::elem> const& alpha)
{
    auto const& v = chain.v;
    if (!v.terminal()) fail(error_kind::precondition_violated, "chain is not complete");
    auto const& K = v.field();
    auto one = K.from_int(1);
    auto g = v.key();
    auto a = divrem_monic(alpha, g).second;
    if (a.is_zero()) fail(error_kind::precondition_violated, "element is zero in K[x]/(g)");
    depth_one_report r;
    auto ci = invariants_of(v);
    r.e = ci.e;
    r.f = ci.f;
    r.value = v.evaluate(a);
    r.order = rational_lattice::standard(K.rank()).order_of(r.value.coords());
    if (r.order != r.e) {
        r.status = "ValueNotGenerating";
        return r;
    }
    auto u = K.section(r.value * r.e);
    auto b = polynomial<typename B::elem>::constant(one);
    for (long i = 0; i < r.e; ++i) b = divrem_monic(b * a, g).second;
    b = b.scaled(one / u);
    auto [val, res] = v.unit_residue(b);
    if (!(val == group_value::zero(K.rank()))) fail(error_kind::precondition_violated, "normalized power is not a unit");
    r.residue = v.kstr(res, v.top());
    r.residue_degree = v.tower().element_degree(res, v.top());
    r.ok = r.residue_degree == r.f;
    r.status = r.ok ? "ok" : "ResidueNotGenerating";
    return r;
}

struct generator_entry {
    std::vector<long> coeffs;   // h = sum coeffs[i] x^i
    std::string minpoly;
    int depth = -1;
    std::string status;         // "ok", "not a generator", or an error kind
};

struct generator_search_result {
    int min_depth = -1;         // an upper bound for the depth of the extension
    std::vector<long> witness;
    std::vector<generator_entry> table;
    long examined = 0, total = 0;
    bool budget_exhausted = false;
    bool stopped_early = false;
};

struct search_budget {
    long max_candidates = -1;
    double max_seconds = -1;
    unsigned threads = 1;
    int stop_at_depth = -1;     // stop at the first generator of at most this depth
};

/* box candidates ordered by max-norm, then l1-norm, then degree, so small
 * elements such as x, x+1, x^2 come first; falls back to plain order for
 * boxes too big to sort */
inline std::vector<std::vector<long>> search_order(int n, long lo, long hi, long total)
{
    long width = hi - lo + 1;
    auto decode = [&](long idx) {
        std::vector<long> c(n);
        for (int i = 0; i < n; ++i) {
            c[i] = lo + idx % width;
            idx /= width;
        }
        return c;
    };
    std::vector<std::vector<long>> out;
    out.reserve(total);
    for (long idx = 0; idx < total; ++idx) out.push_back(decode(idx));
    if (total > (1L << 22)) return out;
    auto key = [](std::vector<long> const& c) {
        long mx = 0, l1 = 0;
        int deg = -1;
        std::vector<long> tail;
        for (size_t i = 0; i < c.size(); ++i) {
            mx = std::max(mx, std::labs(c[i]));
            l1 += std::labs(c[i]);
            if (c[i] != 0) deg = (int)i;
        }
        for (size_t i = c.size(); i-- > 0;) tail.push_back(2 * std::labs(c[i]) + (c[i] < 0));
        return std::make_tuple(mx, l1, deg, tail);
    };
    std::stable_sort(out.begin(), out.end(), [&](auto const& a, auto const& b) { return key(a) < key(b); });
    return out;
}

template <class B>
generator_search_result generator_search(std::shared_ptr<const B> K, polynomial<typename B::elem> const& g, long lo, long hi,
                                         search_budget const& budget = {}, chain_bounds const& bounds = {})
{
    using epoly = polynomial<typename B::elem>;
    int n = g.degree();
    if (n < 1) fail(error_kind::precondition_violated, "degree must be positive");
    generator_search_result res;
    if (n == 1) {
        auto c = compute_mlv_chain(K, g, bounds);
        res.min_depth = c.depth;
        res.witness = {0, 1};
        res.table.push_back({res.witness, c.v.str(g), c.depth, "ok"});
        res.examined = res.total = 1;
        return res;
    }
    if (hi < lo) fail(error_kind::precondition_violated, "empty coefficient box");
    long width = hi - lo + 1;
    long total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > (1L << 40) / width) fail(error_kind::budget_exhausted, "coefficient box too large");
        total *= width;
    }
    res.total = total;
    long limit = budget.max_candidates >= 0 ? std::min(total, budget.max_candidates) : total;
    if (limit > (1L << 26)) fail(error_kind::budget_exhausted, "coefficient box too large; set a candidate budget");
    auto order = search_order(n, lo, hi, total);

    std::vector<std::optional<generator_entry>> slots(limit);
    std::atomic<long> next{0};
    std::atomic<long> stop_idx{limit};
    std::atomic<bool> timed_out{false};
    auto t0 = std::chrono::steady_clock::now();
    auto one = K->from_int(1);

    auto work = [&]() {
        while (true) {
            long idx = next++;
            if (idx >= limit || idx > stop_idx) return;
            if (budget.max_seconds >= 0) {
                std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
                if (el.count() > budget.max_seconds) {
                    timed_out = true;
                    return;
                }
            }
            generator_entry ent;
            ent.coeffs = order[idx];
            std::vector<typename B::elem> hc;
            for (long c : ent.coeffs) hc.push_back(K->from_int(c));
            try {
                auto m = minimal_polynomial_in_quotient(g, epoly(hc), one);
                if (m.degree() != n) {
                    ent.status = "not a generator";
                } else {
                    auto c = compute_mlv_chain(K, m, bounds);
                    ent.minpoly = c.v.str(m);
                    ent.depth = c.depth;
                    ent.status = "ok";
                }
            } catch (math_error const& e) {
                ent.status = error_kind_name(e.kind());
            }
            if (budget.stop_at_depth >= 0 && ent.depth >= 0 && ent.depth <= budget.stop_at_depth) {
                long cur = stop_idx;
                while (idx < cur && !stop_idx.compare_exchange_weak(cur, idx)) {}
            }
            slots[idx] = std::move(ent);
        }
    };
    unsigned nt = std::max(1u, budget.threads);
    if (nt == 1) {
        work();
    } else {
        std::vector<std::thread> th;
        for (unsigned i = 0; i < nt; ++i) th.emplace_back(work);
        for (auto& t : th) t.join();
    }
    // indices beyond the first early-stop hit are dropped so threading does not change the result
    long keep = std::min<long>(limit, stop_idx + 1);
    bool stopped = keep < limit;
    for (long idx = 0; idx < keep; ++idx) {
        auto& s = slots[idx];
        if (!s) continue;
        ++res.examined;
        if (s->depth >= 0 && (res.min_depth < 0 || s->depth < res.min_depth)) {
            res.min_depth = s->depth;
            res.witness = s->coeffs;
        }
        res.table.push_back(std::move(*s));
    }
    res.stopped_early = stopped;
    res.budget_exhausted = timed_out || (!stopped && res.examined < total);
    return res;
}

}

#endif
