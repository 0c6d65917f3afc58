#include "support.hpp"

#include <doctest.h>

using namespace mlvtest;

namespace {

// binomial(1/2, m) from the product formula
rat binom_half(long m)
{
    rat r = 1;
    for (long k = 0; k < m; ++k) r *= (rat(1, 2) - k) / rat(k + 1);
    return r;
}

long ord(rat const& a, long p)
{
    long n = 0;
    bigint num = a.get_num(), den = a.get_den();
    while (num % p == 0) {
        num /= p;
        ++n;
    }
    while (den % p == 0) {
        den /= p;
        --n;
    }
    return n;
}

// base-5 digits of the root of x^2 + 1 that is 2 mod 5, by brute-force
// digit extension: r_{k+1} = r_k + d 5^k with the unique d in 0..4
std::vector<int> sqrt_minus_one_digits(int P)
{
    bigint r = 2, pk = 5;
    std::vector<int> digits{2};
    for (int k = 1; k < P; ++k) {
        bigint mod = pk * 5;
        for (int d = 0; d < 5; ++d) {
            bigint c = r + d * pk;
            bigint v = c * c + 1;
            if (v % mod == 0) {
                r = c;
                digits.push_back(d);
                break;
            }
        }
        pk = mod;
    }
    return digits;
}

okutsu_sequence sec4_sequence()
{
    okutsu_sequence s;
    okutsu_family a;
    a.degree = 1;
    a.generator = "a_{n}+1";
    a.samples = 4;
    okutsu_family b;
    b.degree = 2;
    b.generator = "i+b_{n}";
    b.samples = 4;
    okutsu_family th;
    th.degree = 4;
    th.elements = {"theta"};
    s.families = {a, b, th};
    return s;
}

std::vector<okutsu_challenger> sec4_challengers()
{
    return {{"0", 1}, {"3", 1}, {"1/2", 1}, {"2+t", 1}, {"i", 2}, {"i+1+t", 2}, {"i+1+t/2", 2}};
}

}

TEST_CASE("binomial series of sqrt(1+t)")
{
    auto j = series_sqrt(6);
    CHECK(j[0] == 1);
    CHECK(j[1] == rat(1, 2));
    CHECK(j[2] == rat(-1, 8));
    for (long m = 0; m < 6; ++m) CHECK(j[m] == binom_half(m));
}

TEST_CASE("p-adic square root of -1")
{
    auto r = series_hensel_root(5, 16);
    CHECK(r.value % 5 == 2);
    CHECK(r.value % 25 == 7);
    bigint m = 1;
    for (int k = 0; k < 16; ++k) m *= 5;
    CHECK((r.value * r.value + 1) % m == 0);
    CHECK(r.digits == sqrt_minus_one_digits(16));
    try {
        series_hensel_root(3, 8);
        FAIL("expected NoRoot");
    } catch (math_error const& e) {
        CHECK(e.kind() == error_kind::no_root);
    }
}

TEST_CASE("series distances of the rank-two example")
{
    series_oracle O(5, 16, 16);
    auto digits = sqrt_minus_one_digits(16);
    std::vector<long> nz;
    for (long k = 0; k < (long)digits.size(); ++k)
        if (digits[k] != 0) nz.push_back(k);
    for (int n = 1; n <= 4; ++n) CHECK(O.distance("a_" + std::to_string(n) + "+1") == group_value::rank2(0, nz[n]));
    CHECK(O.distance("i+1") == gv("(1,0)", 2));
    for (int m = 1; m <= 4; ++m)
        CHECK(O.distance("i+b_" + std::to_string(m)) == group_value::rank2(m, ord(binom_half(m), 5)));
    CHECK(O.distance("3") == gv("(0,1)", 2));
    CHECK(O.distance("theta").is_infinite());
}

TEST_CASE("certified series values are stable under doubled precision")
{
    series_oracle lo(5, 16, 16), hi(5, 32, 32);
    for (std::string s : {"a_1+1", "a_2+1", "a_3+1", "a_4+1", "i+1", "i+b_1", "i+b_2", "i+b_3", "i+b_4", "3", "2+t", "i", "i+1+t/2",
                          "alpha - 1 - t/2", "theta^2 - 2*i*alpha"})
        CHECK(lo.distance(s) == hi.distance(s));
}

TEST_CASE("series values behave as a valuation on samples")
{
    series_oracle O(5, 24, 24);
    rng R(51);
    std::vector<std::string> terms{"1", "i", "alpha", "i*alpha", "t", "5", "theta", "a_2", "b_3"};
    auto rnd = [&]() {
        std::string s;
        int k = (int)R.range(1, 3);
        for (int j = 0; j < k; ++j) {
            if (j) s += " + ";
            s += "(" + R.qt_elem(5) + ")*" + terms[R.range(0, terms.size() - 1)];
        }
        return s;
    };
    int tested = 0;
    for (int it = 0; it < 200; ++it) {
        auto x = O.parse(rnd()), y = O.parse(rnd());
        if (x.is_zero() || y.is_zero()) continue;
        try {
            auto vx = O.value(x), vy = O.value(y);
            CHECK(O.value(x * y) == vx + vy);
            if (!(x + y).is_zero()) {
                auto vs = O.value(x + y);
                CHECK(vs >= min(vx, vy));
                if (vx != vy) CHECK(vs == min(vx, vy));
            }
            ++tested;
        } catch (math_error const& e) {
            CHECK(e.kind() == error_kind::precision_exhausted);
        }
    }
    CHECK(tested > 100);
}

TEST_CASE("quartic field arithmetic")
{
    auto i = quartic_elem::i(), a = quartic_elem::alpha();
    CHECK(i * i == quartic_elem::scalar(qt_func(-1)));
    CHECK(a * a == quartic_elem::scalar(qt_func(1) + qt_func::t()));
    auto th = a + i;
    CHECK(th * th.inverse() == quartic_elem::scalar(qt_func(1)));
    // theta is a root of x^4 - 2 t x^2 + (t+2)^2
    auto t = quartic_elem::scalar(qt_func::t());
    auto two = quartic_elem::scalar(qt_func(2));
    auto v = th.pow(4) - two * t * th.pow(2) + (t + two) * (t + two);
    CHECK(v.is_zero());
}

TEST_CASE("distance cuts")
{
    distance_set own;
    own.rank = 2;
    CHECK(distance_cut(own, true) == cut::plus_infinity_minus(2));
    distance_set d1;
    d1.rank = 2;
    d1.finite_values = {gv("(0,1)", 2), gv("(0,2)", 2)};
    d1.unbounded = distance_set::marker::level_unbounded;
    d1.level = 0;
    CHECK(distance_cut(d1, false) == cut::level_plus(0));
    distance_set d2;
    d2.finite_values = {gv("1/3"), gv("0")};
    CHECK(distance_cut(d2, false) == cut::plus(gv("1/3")));
}

TEST_CASE("the rank-two sequence verifies, with two limit steps")
{
    series_oracle O(5, 16, 16);
    distance_fn df = [&O](std::string const& s) { return O.distance(s); };
    auto seq = sec4_sequence();
    auto rep = verify_okutsu_sequence(df, seq, sec4_challengers());
    for (auto const& c : rep.checks) INFO(c.name << ": " << c.detail);
    CHECK(rep.pass);
    CHECK_FALSE(rep.scope.empty());
    auto od = okutsu_depth_and_kinds(seq);
    CHECK(od.r == 2);
    CHECK(od.kinds == std::vector<std::string>{"limit", "limit"});
}

TEST_CASE("broken sequences are rejected")
{
    series_oracle O(5, 16, 16);
    distance_fn df = [&O](std::string const& s) { return O.distance(s); };
    auto seq = sec4_sequence();
    okutsu_sequence no_a1;
    no_a1.families = {seq.families[0], seq.families[2]};
    auto rep = verify_okutsu_sequence(df, no_a1, {{"i+b_1", 2}});
    CHECK_FALSE(rep.pass);
    bool os0_failed = false;
    for (auto const& c : rep.checks)
        if (c.name.rfind("OS0[0]", 0) == 0 && !c.pass) os0_failed = true;
    CHECK(os0_failed);

    okutsu_sequence swapped;
    swapped.families = {seq.families[1], seq.families[0], seq.families[2]};
    swapped.families[0].degree = 1;
    swapped.families[1].degree = 2;
    auto rep2 = verify_okutsu_sequence(df, swapped, {});
    bool os3_failed = false;
    for (auto const& c : rep2.checks)
        if (c.name.rfind("OS3", 0) == 0 && !c.pass) os3_failed = true;
    CHECK(os3_failed);
}

TEST_CASE("chain oracle distances for x^6 + 108")
{
    auto K = qp(2);
    chain_oracle O(compute_mlv_chain(K, P(K, "x^6 + 108")));
    CHECK(O.distance("0") == gv("1/3"));
    CHECK(O.distance("x").is_infinite());
    std::string eps = "(x^3/12 - 1/2)";
    // eps is a primitive cube root of unity and -alpha eps^2 a root of x^3 + 2
    CHECK(O.parse(eps + "^2 + " + eps + " + 1").is_zero());
    auto beta = "-x*" + eps + "^2/(" + eps + " - 1)";
    CHECK(O.parse("(" + beta + ")^3 + 2").is_zero());
    CHECK(O.distance(beta) == gv("4/3"));
    for (long b = -8; b <= 8; ++b) CHECK(O.distance(std::to_string(b)) <= gv("1/3"));
}

TEST_CASE("Okutsu depth agrees with the chain depth on the sextic and the controls")
{
    struct fixture {
        std::string g;
        std::vector<okutsu_family> families;
    };
    std::string eps = "(x^3/12 - 1/2)";
    auto fam = [](int deg, std::string el, bool mx) {
        okutsu_family f;
        f.degree = deg;
        f.elements = {el};
        f.max_declared = mx;
        return f;
    };
    std::vector<fixture> fx{
        {"x^6 + 108", {fam(1, "0", true), fam(3, "-x*" + eps + "^2/(" + eps + " - 1)", true), fam(6, "x", false)}},
        {"x^3 - 2", {fam(1, "0", true), fam(3, "x", false)}},
        {"x^2 + x + 1", {fam(1, "0", true), fam(2, "x", false)}},
    };
    auto K = qp(2);
    for (auto const& f : fx) {
        auto c = compute_mlv_chain(K, P(K, f.g));
        chain_oracle O(c);
        distance_fn df = [&O](std::string const& s) { return O.distance(s); };
        okutsu_sequence seq;
        seq.families = f.families;
        std::vector<okutsu_challenger> ch;
        for (long b = -4; b <= 4; ++b) ch.push_back({std::to_string(b), 1});
        ch.push_back({"x^3/6", 2});
        auto rep = verify_okutsu_sequence(df, seq, ch);
        INFO(f.g);
        CHECK(rep.pass);
        auto od = okutsu_depth_and_kinds(seq);
        CHECK(od.r == c.depth);
        for (auto const& k : od.kinds) CHECK(k == "ordinary");
        for (int l = 0; l + 1 < (int)c.steps.size(); ++l) CHECK(c.steps[l].kind == "ordinary");
    }
    // theta in K: a single family
    okutsu_sequence triv;
    triv.families = {fam(1, "theta", false)};
    CHECK(okutsu_depth_and_kinds(triv).r == 0);
}

TEST_CASE("ball degree witnesses")
{
    series_oracle O(5, 16, 16);
    distance_fn df = [&O](std::string const& s) { return O.distance(s); };
    CHECK(ball_degree_witness(df, gv("(1,0)", 2), "i+1"));
    CHECK(ball_degree_witness(df, gv("(7,3)", 2), "theta"));
    CHECK_FALSE(ball_degree_witness(df, gv("(1,0)", 2), "3"));
}

TEST_CASE("precision exhaustion is reported, not guessed")
{
    series_oracle O(5, 4, 4);
    CHECK_THROWS_AS(O.distance("i+b_6"), math_error);
    try {
        O.distance("a_6+1");
    } catch (math_error const& e) {
        CHECK(e.kind() == error_kind::precision_exhausted);
    }
}
