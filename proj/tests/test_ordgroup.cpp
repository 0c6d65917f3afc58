#include "support.hpp"

#include <doctest.h>

using namespace mlvtest;

namespace {

std::vector<cut> sample_cuts(int rank)
{
    std::vector<cut> out{cut::minus_infinity(rank), cut::plus_infinity_minus(rank)};
    std::vector<rat> params{rat(-1), rat(0), rat(1, 3), rat(1, 2), rat(2)};
    for (auto const& a : params) {
        group_value g = rank == 1 ? group_value::rank1(a) : group_value::rank2(a, a * 3 - 1);
        out.push_back(cut::plus(g));
        out.push_back(cut::minus(g));
        if (rank == 2) {
            out.push_back(cut::level_plus(a));
            out.push_back(cut::level_minus(a));
        }
    }
    return out;
}

// left set membership of a sum, decided by brute force over a fine grid:
// x is in (d+e)^L iff x = a + b with a in d^L and b in e^L
bool sum_left_by_grid(cut const& d, cut const& e, rat const& x)
{
    for (long k = -720; k <= 720; ++k) {
        rat a(k, 120);
        auto ga = group_value::rank1(a), gb = group_value::rank1(x - a);
        if (d.left_contains(ga) && e.left_contains(gb)) return true;
    }
    return false;
}

}

TEST_CASE("group values: order, infinity, divisibility")
{
    CHECK(gv("1/2") < gv("1"));
    CHECK(gv("inf") > gv("1000000"));
    CHECK(gv("3") + gv("inf") == gv("inf"));
    CHECK(gv("1") / 3 == gv("1/3"));
    CHECK(gv("(0,7)", 2) < gv("(1,-100)", 2));
    CHECK(gv("(2,1)", 2).str() == "(2, 1)");
}

TEST_CASE("cut comparison examples")
{
    CHECK(cut_compare(cut::minus(gv("0")), cut::plus(gv("0"))) < 0);
    CHECK(cut_compare(cut::minus_infinity(1), cut::plus(gv("5"))) < 0);
    CHECK(cut_compare(cut::level_plus(0), cut::plus(gv("(0,10)", 2))) > 0);
}

TEST_CASE("cut addition examples")
{
    CHECK(cut_add(cut::plus(gv("1/2")), cut::plus_infinity_minus(1)) == cut::plus_infinity_minus(1));
    CHECK(cut_add(cut::plus(gv("1/2")), cut::plus(gv("1/3"))) == cut::plus(gv("5/6")));
    CHECK(cut_shift(gv("1"), cut::minus(gv("2"))) == cut::minus(gv("3")));
    // the displayed formula, not the remark: the empty left set absorbs
    CHECK(cut_add(cut::minus_infinity(1), cut::plus_infinity_minus(1)) == cut::minus_infinity(1));
}

TEST_CASE("cuts from distance sets")
{
    distance_set d;
    d.finite_values = {gv("1"), gv("2"), gv("3")};
    CHECK(cut_from_set(d, cut_mode::plus) == cut::plus(gv("3")));
    distance_set u;
    u.unbounded = distance_set::marker::unbounded;
    CHECK(cut_from_set(u, cut_mode::plus) == cut::plus_infinity_minus(1));
    distance_set l;
    l.rank = 2;
    l.unbounded = distance_set::marker::level_unbounded;
    l.level = 0;
    l.finite_values = {gv("(0,1)", 2), gv("(0,2)", 2)};
    CHECK(cut_from_set(l, cut_mode::plus) == cut::level_plus(0));
}

TEST_CASE("cut order is total and transitive over all variants")
{
    for (int rank : {1, 2}) {
        auto cs = sample_cuts(rank);
        for (auto const& a : cs) {
            CHECK(cut_compare(a, a) == 0);
            CHECK(cut_compare(a, cut::minus_infinity(rank)) >= 0);
            CHECK(cut_compare(a, cut::plus_infinity_minus(rank)) <= 0);
            for (auto const& b : cs) {
                auto ab = cut_compare(a, b), ba = cut_compare(b, a);
                CHECK((ab < 0) == (ba > 0));
                CHECK((ab == 0) == (a == b));
                for (auto const& c : cs)
                    if (ab <= 0 && cut_compare(b, c) <= 0) CHECK(cut_compare(a, c) <= 0);
            }
        }
        for (auto const& a : cs)
            if (a.kind() == cut_kind::principal_minus) CHECK(cut_compare(a, cut::plus(a.value())) < 0);
    }
}

TEST_CASE("cut addition is commutative and associative over all variants")
{
    for (int rank : {1, 2}) {
        auto cs = sample_cuts(rank);
        for (auto const& a : cs)
            for (auto const& b : cs) {
                CHECK(cut_add(a, b) == cut_add(b, a));
                for (auto const& c : cs) CHECK(cut_add(cut_add(a, b), c) == cut_add(a, cut_add(b, c)));
            }
    }
}

TEST_CASE("rank-one cut addition agrees with set addition on a grid")
{
    auto cs = sample_cuts(1);
    for (auto const& a : cs)
        for (auto const& b : cs) {
            auto s = cut_add(a, b);
            for (long k = -36; k <= 36; ++k) {
                rat x(k, 12);
                INFO(a.str() << " + " << b.str() << " at " << to_string(x));
                CHECK(s.left_contains(group_value::rank1(x)) == sum_left_by_grid(a, b, x));
            }
        }
}

TEST_CASE("finite distance sets give the principal cut of the maximum")
{
    rng R(11);
    for (int it = 0; it < 200; ++it) {
        distance_set d;
        int n = (int)R.range(1, 6);
        group_value mx;
        for (int i = 0; i < n; ++i) {
            auto g = group_value::rank1(rat(R.range(-30, 30), R.range(1, 6)));
            d.finite_values.push_back(g);
            mx = i == 0 ? g : (g > mx ? g : mx);
        }
        CHECK(cut_from_set(d, cut_mode::plus) == cut::plus(mx));
        auto gam = group_value::rank1(rat(R.range(-10, 10), R.range(1, 4)));
        distance_set shifted = d;
        for (auto& x : shifted.finite_values) x = x + gam;
        CHECK(cut_shift(gam, cut_from_set(d, cut_mode::plus)) == cut_from_set(shifted, cut_mode::plus));
    }
}

TEST_CASE("cut and value parsing round trips")
{
    for (int rank : {1, 2})
        for (auto const& c : sample_cuts(rank)) CHECK(cut::parse(c.str(), rank) == c);
    CHECK_THROWS_AS(group_value::parse("1/0"), math_error);
}

TEST_CASE("lattices and orders")
{
    auto L = rational_lattice::standard(1);
    CHECK(L.order_of({rat(1, 3)}) == 3);
    CHECK(L.with({rat(1, 2)}).contains({rat(3, 2)}));
    CHECK_FALSE(L.with({rat(1, 2)}).contains({rat(1, 3)}));
    auto L2 = rational_lattice::standard(2).with({rat(0), rat(1, 2)});
    CHECK(L2.order_of({rat(1, 2), rat(1, 4)}) == 2);
    CHECK(L2.order_of({rat(1, 3), rat(1, 4)}) == 6);
}
