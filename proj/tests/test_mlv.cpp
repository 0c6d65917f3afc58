#include "support.hpp"

#include <doctest.h>

#include <fstream>

using namespace mlvtest;

namespace {

template <class B>
void check_chain_certificates(mlv_chain<B> const& c)
{
    auto const& v = c.v;
    for (int L = 0; L <= v.top(); ++L) CHECK(v.evaluate(v.at(L).phi) == v.at(L).gamma);
    for (int L = 1; L <= v.top(); ++L) {
        auto cert = v.prefix(L - 1).is_key(v.at(L).phi);
        CHECK(cert.key);
    }
}

// evaluate(v_theta, f) * deg g == val(Res(g, f)) when g is unibranched; the
// norm is taken as a determinant, independently of the library resultant
template <class B>
void norm_oracle(std::shared_ptr<const B> K, mlv_chain<B> const& c, int samples, rng& R)
{
    auto const& g = c.v.key();
    int n = g.degree();
    auto zero = K->from_int(0), one = K->from_int(1);
    int done = 0;
    while (done < samples) {
        auto f = R.poly(K, n - 1);
        if (f.is_zero()) continue;
        ++done;
        auto N = norm_by_det(g, f, zero, one);
        if constexpr (std::is_same_v<B, qpadic_field>) CHECK(N == resultant(g, f));
        CHECK(c.v.evaluate(f) * (long)n == K->val(N));
    }
}

std::vector<std::pair<unsigned long, std::string>> corpus()
{
    std::ifstream in(MLV_DATA_DIR "/ore_corpus.json");
    auto j = json::parse(in);
    std::vector<std::pair<unsigned long, std::string>> out;
    for (auto const& e : j.at("entries")) out.push_back({e.at("field").at("p").get<unsigned long>(), e.at("g").get<std::string>()});
    return out;
}

}

TEST_CASE("chain of the char-2 example")
{
    auto K = fp(2);
    auto c = compute_mlv_chain(K, P(K, sec32_g(2)));
    REQUIRE(c.v.top() == 3);
    CHECK(c.v.at(0).phi == P(K, "x"));
    CHECK(c.v.at(0).gamma == gv("0"));
    CHECK(c.v.at(1).phi == P(K, "x^2 - q"));
    CHECK(c.v.at(1).gamma == gv("1"));
    CHECK(c.v.at(2).phi == P(K, "(x^2 - q)^2 - t^2*r"));
    CHECK(c.v.at(2).gamma == gv("4"));
    CHECK(c.v.at(3).phi == P(K, sec32_g(2)));
    CHECK(c.v.at(3).gamma.is_infinite());
    CHECK(c.depth == 3);
    auto ci = get_chain_invariants(c);
    CHECK(ci.e == 1);
    CHECK(ci.f == 8);
    check_chain_certificates(c);
}

TEST_CASE("chain of x^6 + 108 over ord_2")
{
    auto K = qp(2);
    auto c = compute_mlv_chain(K, P(K, "x^6 + 108"));
    CHECK(c.depth == 2);
    auto ci = get_chain_invariants(c);
    CHECK(ci.e == 3);
    CHECK(ci.f == 2);
    REQUIRE(c.steps.size() == 3);
    CHECK(c.steps[0].gamma == gv("1/3"));
    CHECK(c.steps[0].e_i == 3);
    CHECK(c.steps[1].phi_deg == 3);
    CHECK(c.steps[1].f_i == 2);
    check_chain_certificates(c);
}

TEST_CASE("limit situation and strict branching on x^2 + 1 over ord_5")
{
    auto K = qp(5);
    try {
        compute_mlv_chain(K, P(K, "x^2 + 1"));
        FAIL("expected LimitSituation");
    } catch (math_error const& e) {
        CHECK(e.kind() == error_kind::limit_situation);
    }
    chain_bounds strict;
    strict.policy = branch_policy::strict;
    try {
        compute_mlv_chain(K, P(K, "x^2 + 1"), strict);
        FAIL("expected Branched");
    } catch (math_error const& e) {
        CHECK(e.kind() == error_kind::branched);
    }
    chain_bounds tight;
    tight.max_refinements = 3;
    CHECK_THROWS_AS(compute_mlv_chain(K, P(K, "x^2 + 1"), tight), math_error);
}

TEST_CASE("chain input must be monic")
{
    auto K = qp(2);
    CHECK_THROWS_AS(compute_mlv_chain(K, P(K, "2*x^2 + 1")), math_error);
}

TEST_CASE("factor certificates")
{
    auto K5 = qp(5);
    auto b5 = factor_certificate(K5, P(K5, "x^2 + 1"));
    REQUIRE(b5.size() == 2);
    for (auto const& b : b5) {
        CHECK(b.resolved);
        CHECK(b.e == 1);
        CHECK(b.f == 1);
    }
    auto K2 = qp(2);
    auto b2 = factor_certificate(K2, P(K2, "x^2 + 1"));
    REQUIRE(b2.size() == 1);
    CHECK(b2[0].e == 2);
    CHECK(b2[0].f == 1);
    auto b3 = factor_certificate(K2, P(K2, "x^2 + x + 1"));
    REQUIRE(b3.size() == 1);
    CHECK(b3[0].e == 1);
    CHECK(b3[0].f == 2);
    auto b4 = factor_certificate(qt(5), P(qt(5), sec4_g()));
    CHECK(b4.size() == 4);
}

TEST_CASE("resolved branches account for the whole degree")
{
    rng R(41);
    int resolved_inputs = 0;
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto K = qp(p);
        for (int it = 0; it < 40; ++it) {
            int n = (int)R.range(2, 6);
            std::vector<rat> c;
            for (int i = 0; i < n; ++i) c.push_back(rat(R.range(-12, 12)));
            c.push_back(1);
            qpoly g(c);
            if (poly_gcd(g, g.derivative()).degree() > 0) continue;
            std::vector<branch_record> br;
            try {
                br = factor_certificate(K, g);
            } catch (math_error const&) {
                continue;
            }
            bool all = true;
            long sum = 0;
            for (auto const& b : br) {
                all = all && b.resolved;
                sum += b.e * b.f;
            }
            if (!all) continue;
            ++resolved_inputs;
            CHECK(sum == n);
        }
    }
    CHECK(resolved_inputs > 30);
}

TEST_CASE("depths and invariants")
{
    auto K = qp(2);
    auto c1 = compute_mlv_chain(K, P(K, "x - 5"));
    CHECK(c1.depth == 0);
    auto c2 = compute_mlv_chain(K, P(K, "x^3 - 2"));
    CHECK(c2.depth == 1);
    CHECK(get_chain_invariants(c2).e == 3);
    auto c3 = compute_mlv_chain(K, P(K, "x^2 + x + 1"));
    CHECK(c3.depth == 1);
    CHECK(get_chain_invariants(c3).f == 2);
}

TEST_CASE("depth-one certificates")
{
    auto K = qp(2);
    auto x = P(K, "x");
    auto r1 = depth_one_certificate(compute_mlv_chain(K, P(K, "x^3 - 2")), x);
    CHECK(r1.ok);
    auto r2 = depth_one_certificate(compute_mlv_chain(K, P(K, "x^6 + 108")), x);
    CHECK_FALSE(r2.ok);
    CHECK(r2.status == "ResidueNotGenerating");
    CHECK(r2.value == gv("1/3"));
    CHECK(r2.order == 3);
    auto r3 = depth_one_certificate(compute_mlv_chain(K, P(K, "x^2 + x + 1")), x);
    CHECK(r3.ok);
    // the value of 2 does not generate vL/vK for a ramified extension
    auto r4 = depth_one_certificate(compute_mlv_chain(K, P(K, "x^3 - 2")), P(K, "2"));
    CHECK_FALSE(r4.ok);
    CHECK(r4.status == "ValueNotGenerating");
}

TEST_CASE("generator search on small cases")
{
    auto K = qp(2);
    auto r1 = generator_search(K, P(K, "x^3 - 2"), -1, 1);
    CHECK(r1.min_depth == 1);
    CHECK(r1.witness == std::vector<long>{0, 1, 0});
    CHECK(r1.examined == 27);
    CHECK_FALSE(r1.budget_exhausted);
    auto r0 = generator_search(K, P(K, "x + 3"), -2, 2);
    CHECK(r0.min_depth == 0);

    search_budget b;
    b.max_candidates = 5;
    auto r2 = generator_search(K, P(K, "x^3 - 2"), -1, 1, b);
    CHECK(r2.examined == 5);
    CHECK(r2.budget_exhausted);
}

TEST_CASE("generator search is deterministic under threading and early stop")
{
    auto K = qp(2);
    auto g = P(K, "x^4 + 2*x^2 + 2*x + 2");
    search_budget one, many;
    many.threads = 3;
    auto a = generator_search(K, g, -1, 1, one);
    auto b = generator_search(K, g, -1, 1, many);
    REQUIRE(a.table.size() == b.table.size());
    for (size_t i = 0; i < a.table.size(); ++i) {
        CHECK(a.table[i].coeffs == b.table[i].coeffs);
        CHECK(a.table[i].depth == b.table[i].depth);
        CHECK(a.table[i].status == b.table[i].status);
    }
    search_budget stop1 = one, stop3 = many;
    stop1.stop_at_depth = stop3.stop_at_depth = 2;
    auto c = generator_search(K, g, -1, 1, stop1);
    auto d = generator_search(K, g, -1, 1, stop3);
    CHECK(c.stopped_early);
    CHECK(c.witness == d.witness);
    CHECK(c.examined == d.examined);
    CHECK(c.min_depth <= 2);
}

TEST_CASE("chain certificates and the norm oracle on every unibranched chain")
{
    for (auto const& [p, gs] : corpus()) {
        auto K = qp(p);
        INFO(gs << " over ord_" << p);
        auto c = compute_mlv_chain(K, P(K, gs));
        check_chain_certificates(c);
        auto ci = get_chain_invariants(c);
        CHECK(ci.e * ci.f == c.v.key().degree());
        rng R(p * 1000 + c.v.key().degree());
        norm_oracle(K, c, 20, R);
    }
    {
        auto F = fp(2);
        auto c32 = compute_mlv_chain(F, P(F, sec32_g(2)));
        rng R(77);
        R.fp_denominators = false;
        norm_oracle(F, c32, 20, R);
    }
    // near the key polynomials the values are large; Res(g, f) is taken as the
    // norm of g modulo f, which keeps the degree-27 case small
    for (long p : {2L, 3L}) {
        auto F = fp(p);
        auto c = compute_mlv_chain(F, P(F, sec32_g(p)));
        long n = c.v.key().degree();
        rng R(78 + p);
        int positive = 0;
        for (int it = 0; it < 20; ++it) {
            auto f = P(F, near_key(R, p));
            INFO(c.v.str(f));
            auto N = norm_by_det(f, c.v.key(), F->from_int(0), F->from_int(1));
            auto v = c.v.evaluate(f);
            CHECK(v * n == F->val(N));
            if (v > gv("0")) ++positive;
        }
        CHECK(positive >= 5);
    }
}

TEST_CASE("depth is invariant under translation by integral constants")
{
    rng R(42);
    for (auto const& [p, gs] : corpus()) {
        auto K = qp(p);
        auto g = P(K, gs);
        if (g.degree() > 6) continue;
        auto d = compute_mlv_chain(K, g).depth;
        rat c(R.range(-3, 3));
        // g(x - c) is the minimal polynomial of theta + c
        qpoly shifted, xc = P(K, "x") - qpoly::constant(c);
        for (int k = g.degree(); k >= 0; --k) shifted = shifted * xc + qpoly::constant(g.coeff(k));
        CHECK(compute_mlv_chain(K, shifted).depth == d);
    }
}
