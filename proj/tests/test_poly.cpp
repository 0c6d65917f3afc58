#include "support.hpp"

#include <doctest.h>

using namespace mlvtest;

namespace {

// Q(alpha, eps) with alpha^3 = 2, eps^2 + eps + 1 = 0, as coordinate
// vectors on alpha^a eps^b (a < 3, b < 2): an arithmetic independent of
// the polynomial code under test
using vec6 = std::array<rat, 6>;

vec6 mul6(vec6 const& x, vec6 const& y)
{
    vec6 r{};
    for (int a1 = 0; a1 < 3; ++a1)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int a2 = 0; a2 < 3; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    rat c = x[a1 * 2 + b1] * y[a2 * 2 + b2];
                    if (c == 0) continue;
                    int a = a1 + a2, b = b1 + b2;
                    if (a >= 3) {
                        a -= 3;
                        c *= 2;
                    }
                    if (b == 2) {       // eps^2 = -1 - eps
                        r[a * 2] -= c;
                        r[a * 2 + 1] -= c;
                    } else {
                        r[a * 2 + b] += c;
                    }
                }
    return r;
}

// solve M y = rhs over Q by Gaussian elimination (M square, invertible)
std::vector<rat> solve(std::vector<std::vector<rat>> M, std::vector<rat> rhs)
{
    int n = (int)rhs.size();
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (M[piv][c] == 0) ++piv;
        std::swap(M[piv], M[c]);
        std::swap(rhs[piv], rhs[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            rat f = M[r][c] / M[c][c];
            for (int k = 0; k < n; ++k) M[r][k] -= f * M[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    for (int i = 0; i < n; ++i) rhs[i] /= M[i][i];
    return rhs;
}

}

TEST_CASE("phi-expansions")
{
    auto Q = qp(2);
    auto e = phi_expansion(P(Q, "x^2 + 2*x + 4"), P(Q, "x"), rat(1));
    REQUIRE(e.size() == 3);
    CHECK(e[0] == P(Q, "4"));
    CHECK(e[1] == P(Q, "2"));
    CHECK(e[2] == P(Q, "1"));
    auto e2 = phi_expansion(P(Q, "x^2 + 1"), P(Q, "x + 1"), rat(1));
    CHECK(e2[0] == P(Q, "2"));
    CHECK(e2[1] == P(Q, "-2"));
    CHECK(e2[2] == P(Q, "1"));
}

TEST_CASE("phi-expansion of the char-2 example")
{
    auto F = fp(2);
    auto g = P(F, sec32_g(2));
    auto e = phi_expansion(g, P(F, "x^2 - q"), F->from_int(1));
    REQUIRE(e.size() == 5);
    CHECK(e[0] == P(F, "-t^4*r^2 + t^16*x - t^8*s"));
    CHECK(e[1].is_zero());
    CHECK(e[2].is_zero());
    CHECK(e[3].is_zero());
    CHECK(e[4] == P(F, "1"));
}

TEST_CASE("phi-expansion round trip")
{
    rng R(21);
    auto Q = qp(3);
    for (int it = 0; it < 200; ++it) {
        auto f = R.poly(Q, 9);
        auto phi = R.poly(Q, 3);
        if (phi.degree() < 1) continue;
        phi = make_monic(phi);
        auto e = phi_expansion(f, phi, rat(1));
        for (auto const& a : e) CHECK(a.degree() < phi.degree());
        CHECK(from_phi_expansion(e, phi) == f);
    }
    CHECK_THROWS_AS(phi_expansion(P(Q, "x^3"), P(Q, "2*x + 1"), rat(1)), math_error);
}

TEST_CASE("resultants")
{
    auto Q = qp(2);
    CHECK(resultant(P(Q, "x^2 + 1"), P(Q, "x")) == 1);
    CHECK(resultant(P(Q, "x^2 - 2"), P(Q, "x - 3")) == 7);
    CHECK(resultant(P(Q, "x^6 + 108"), P(Q, "x")) == 108);
}

TEST_CASE("resultant is multiplicative")
{
    rng R(22);
    auto Q = qp(5);
    for (int it = 0; it < 100; ++it) {
        auto f = R.poly(Q, 4), g = R.poly(Q, 3), h = R.poly(Q, 3);
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
    }
    auto F = fp(3, {"q"});
    for (int it = 0; it < 30; ++it) {
        auto f = R.poly(F, 3), g = R.poly(F, 2), h = R.poly(F, 2);
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
    }
}

TEST_CASE("minimal polynomials in quotients")
{
    auto Q = qp(2);
    CHECK(minimal_polynomial_in_quotient(P(Q, "x^2 + 1"), P(Q, "x"), rat(1)) == P(Q, "x^2 + 1"));
    CHECK(minimal_polynomial_in_quotient(P(Q, "x^6 + 108"), P(Q, "x^3"), rat(1)) == P(Q, "x^2 + 108"));
}

TEST_CASE("minimal polynomial of alpha(eps - 1) in the composite sextic field")
{
    // theta = alpha + eps is primitive; write its powers and alpha(eps - 1)
    // on the alpha^a eps^b basis and solve for coordinates
    vec6 th{}, one{};
    th[2] = 1;  // alpha
    th[1] = 1;  // eps
    one[0] = 1;
    std::vector<vec6> pw{one};
    for (int k = 1; k <= 6; ++k) pw.push_back(mul6(pw.back(), th));
    std::vector<std::vector<rat>> M(6, std::vector<rat>(6));
    for (int i = 0; i < 6; ++i)
        for (int k = 0; k < 6; ++k) M[i][k] = pw[k][i];
    std::vector<rat> rhs(6);
    for (int i = 0; i < 6; ++i) rhs[i] = -pw[6][i];
    auto gc = solve(M, rhs);
    gc.push_back(1);
    qpoly g(gc);

    vec6 alpha{}, epsm1{};
    alpha[2] = 1;
    epsm1[0] = -1;
    epsm1[1] = 1;
    auto target = mul6(alpha, epsm1);
    std::vector<rat> t(target.begin(), target.end());
    qpoly h(solve(M, t));

    CHECK(minimal_polynomial_in_quotient(g, h, rat(1)) == P(qp(2), "x^6 + 108"));
}

TEST_CASE("minimal polynomial annihilates its element")
{
    rng R(23);
    auto Q = qp(2);
    auto g = P(Q, "x^4 + 2*x + 2");
    for (int it = 0; it < 40; ++it) {
        auto h = divrem_monic(R.poly(Q, 3), g).second;
        auto m = minimal_polynomial_in_quotient(g, h, rat(1));
        CHECK(m.lc() == 1);
        qpoly acc;
        for (int k = m.degree(); k >= 0; --k) acc = mulmod(acc, h, g) + qpoly::constant(m.coeff(k));
        CHECK(divrem_monic(acc, g).second.is_zero());
    }
}
