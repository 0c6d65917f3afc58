#ifndef MLV_TEST_SUPPORT_HPP
#define MLV_TEST_SUPPORT_HPP

#include "mlv/io.hpp"
#include "mlv/mlv.hpp"
#include "mlv/okutsu.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace mlvtest {

using namespace mlv;

using qpoly = polynomial<rat>;
using fpoly = polynomial<mratfunc>;
using tpoly = polynomial<qt_func>;

inline std::shared_ptr<const qpadic_field> qp(unsigned long p) { return std::make_shared<const qpadic_field>(qpadic_field{p}); }
inline std::shared_ptr<const fp_rft_field> fp(unsigned long p, std::vector<std::string> vars = {"q", "r", "s"})
{
    return std::make_shared<const fp_rft_field>(fp_rft_field{p, std::move(vars)});
}
inline std::shared_ptr<const qt_rank2_field> qt(unsigned long p) { return std::make_shared<const qt_rank2_field>(qt_rank2_field{p}); }

template <class B>
polynomial<typename B::elem> P(std::shared_ptr<const B> const& K, std::string const& s)
{
    return parse_polynomial(*K, json(s));
}

inline group_value gv(std::string const& s, int rank = 0) { return group_value::parse(s, rank); }

inline std::string sec32_g(long p)
{
    auto s = std::to_string(p);
    return "((x^" + s + " - q)^" + s + " - t^" + s + "*r)^" + s + " + t^" + std::to_string(p * p * p * p) + "*x - t^" +
           std::to_string(p * p * p) + "*s";
}

inline std::string sec4_g() { return "x^4 - 2*t*x^2 + (t+2)^2"; }

/* random field elements as expression strings, so that every backend
 * goes through the same parser */
struct rng {
    std::mt19937_64 gen;
    bool fp_denominators = true;
    explicit rng(unsigned long seed) : gen(seed) {}
    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }

    std::string q_elem(unsigned long p)
    {
        long num = range(-20, 20);
        long den = range(1, 9);
        long k = range(0, 3);
        for (long i = 0; i < k; ++i) (range(0, 1) ? num : den) *= (long)p;
        return "(" + std::to_string(num) + ")/" + std::to_string(den);
    }
    std::string fp_elem(std::vector<std::string> const& vars)
    {
        std::string s;
        int terms = (int)range(0, 3);
        for (int i = 0; i < terms; ++i) {
            if (!s.empty()) s += " + ";
            s += std::to_string(range(1, 4));
            if (!vars.empty() && range(0, 1)) s += "*" + vars[range(0, vars.size() - 1)];
            s += "*t^" + std::to_string(range(0, 4));
        }
        if (s.empty()) return "0";
        if (fp_denominators && range(0, 3) == 0) s = "(" + s + ")/(t^" + std::to_string(range(1, 2)) + " + " + (vars.empty() ? std::string("1") : vars[0]) + ")";
        return s;
    }
    std::string qt_elem(unsigned long p)
    {
        std::string s;
        int terms = (int)range(0, 3);
        for (int i = 0; i < terms; ++i) {
            if (!s.empty()) s += " + ";
            long c = range(-6, 6);
            if (c == 0) c = 1;
            if (range(0, 2) == 0) c *= (long)p;
            s += "(" + std::to_string(c) + ")*t^" + std::to_string(range(0, 3));
        }
        if (s.empty()) return "0";
        if (range(0, 3) == 0) s = "(" + s + ")/(t + " + std::to_string(range(1, 4)) + ")";
        return s;
    }

    template <class B>
    std::string elem(B const& K)
    {
        if constexpr (std::is_same_v<B, qpadic_field>) return q_elem(K.p);
        else if constexpr (std::is_same_v<B, fp_rft_field>) return fp_elem(K.names);
        else return qt_elem(K.p);
    }

    template <class B>
    polynomial<typename B::elem> poly(std::shared_ptr<const B> const& K, int max_deg)
    {
        int d = (int)range(0, max_deg);
        std::vector<typename B::elem> c;
        for (int i = 0; i <= d; ++i) c.push_back(K->parse(elem(*K)));
        return polynomial<typename B::elem>(c);
    }
};

/* division-free determinant (Berkowitz), so it also works where
 * quotients grow without cancellation */
template <class R>
R berkowitz_det(std::vector<std::vector<R>> const& A, R const& zero, R const& one)
{
    int n = (int)A.size();
    std::vector<R> v{one};
    for (int r = 0; r < n; ++r) {
        std::vector<R> t(r + 2, zero);
        t[0] = one;
        t[1] = zero - A[r][r];
        std::vector<R> col(r);
        for (int i = 0; i < r; ++i) col[i] = A[i][r];
        for (int k = 2; k <= r + 1; ++k) {
            R s = zero;
            for (int i = 0; i < r; ++i) s = s + A[r][i] * col[i];
            t[k] = zero - s;
            std::vector<R> next(r, zero);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) next[i] = next[i] + A[i][j] * col[j];
            col = next;
        }
        std::vector<R> nv(r + 2, zero);
        for (int i = 0; i <= r + 1; ++i)
            for (int j = 0; j <= std::min(i, r); ++j) nv[i] = nv[i] + t[i - j] * v[j];
        v = nv;
    }
    return n % 2 ? zero - v[n] : v[n];
}

/* N(f) = det of multiplication by f on K[x]/(g) = Res(g, f) for monic g */
template <class R>
R norm_by_det(polynomial<R> const& g, polynomial<R> const& f, R const& zero, R const& one)
{
    int n = g.degree();
    std::vector<std::vector<R>> M(n, std::vector<R>(n, zero));
    auto col = divrem_monic(f, g).second;
    auto x = polynomial<R>::monomial(one, 1);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) M[i][j] = col.coeff(i);
        col = divrem_monic(col * x, g).second;
    }
    return berkowitz_det(M, zero, one);
}

/* a sparse monic polynomial over F_p(q,r,s)(t) near x or one of the first two
   key polynomials of the char-p chain, of degree at most p^2 + 2; its norm is
   a det of that size with polynomial entries, so it stays cheap for p = 3 */
inline std::string near_key(rng& R, long p)
{
    auto s = std::to_string(p);
    std::vector<std::string> bases{"x", "x^" + s + " - q", "(x^" + s + " - q)^" + s + " - t^" + s + "*r", "x^2", "x^" + std::to_string(p * p)};
    std::vector<long> degs{1, p, p * p, 2, p * p};
    std::vector<std::string> mons{"1", "q", "r", "s", "q*r", "s^2"};
    long b = R.range(0, bases.size() - 1);
    std::string f = bases[b];
    for (long k = R.range(1, 3); k > 0; --k)
        f += " + " + std::to_string(R.range(1, p - 1)) + "*t^" + std::to_string(R.range(0, 12)) + "*" + mons[R.range(0, mons.size() - 1)] + "*x^" +
             std::to_string(R.range(0, std::min(2L, degs[b] - 1)));
    return f;
}

}

#endif
