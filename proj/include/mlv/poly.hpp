#ifndef MLV_POLY_HPP
#define MLV_POLY_HPP

#include "mlv/error.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mlv {

/* Dense univariate polynomial, lowest degree first, never with trailing
 * zeros. R must be default-constructible to its zero, comparable with ==,
 * and closed under + - * (and / where the algorithm divides). */
template <class R>
class polynomial {
    std::vector<R> c_;
    void normalize()
    {
        while (!c_.empty() && c_.back() == R{}) c_.pop_back();
    }
public:
    polynomial() = default;
    explicit polynomial(std::vector<R> c) : c_(std::move(c)) { normalize(); }
    polynomial(std::initializer_list<R> c) : c_(c) { normalize(); }
    static polynomial constant(R a) { return polynomial(std::vector<R>{std::move(a)}); }
    static polynomial monomial(R a, int deg)
    {
        std::vector<R> c(deg + 1);
        c[deg] = std::move(a);
        return polynomial(std::move(c));
    }

    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    std::vector<R> const& coeffs() const { return c_; }
    R coeff(int i) const { return (i >= 0 && i < (int)c_.size()) ? c_[i] : R{}; }
    R const& lc() const
    {
        if (c_.empty()) fail(error_kind::precondition_violated, "leading coefficient of zero polynomial");
        return c_.back();
    }

    polynomial operator+(polynomial const& o) const
    {
        std::vector<R> r(std::max(c_.size(), o.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size() && i < o.c_.size()) r[i] = c_[i] + o.c_[i];
            else if (i < c_.size()) r[i] = c_[i];
            else r[i] = o.c_[i];
        }
        return polynomial(std::move(r));
    }
    polynomial operator-() const
    {
        std::vector<R> r;
        for (auto const& x : c_) r.push_back(R{} - x);
        return polynomial(std::move(r));
    }
    polynomial operator-(polynomial const& o) const { return *this + (-o); }
    polynomial operator*(polynomial const& o) const
    {
        if (c_.empty() || o.c_.empty()) return {};
        std::vector<R> r(c_.size() + o.c_.size() - 1);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == R{}) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j] == R{}) continue;
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
            }
        }
        return polynomial(std::move(r));
    }
    polynomial scaled(R const& a) const
    {
        std::vector<R> r;
        for (auto const& x : c_) r.push_back(x * a);
        return polynomial(std::move(r));
    }
    polynomial shifted(int k) const   // multiply by x^k
    {
        if (c_.empty()) return {};
        std::vector<R> r(k);
        r.insert(r.end(), c_.begin(), c_.end());
        return polynomial(std::move(r));
    }
    polynomial& operator+=(polynomial const& o) { return *this = *this + o; }
    polynomial& operator-=(polynomial const& o) { return *this = *this - o; }
    polynomial& operator*=(polynomial const& o) { return *this = *this * o; }
    bool operator==(polynomial const& o) const { return c_ == o.c_; }

    template <class X>
    X eval(X const& x, X const& one) const
    {
        X acc = one - one;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + one * c_[i];
        return acc;
    }
    R eval(R const& x) const
    {
        R acc{};
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }
    polynomial derivative() const
    {
        std::vector<R> r;
        for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * (long)i);
        return polynomial(std::move(r));
    }
    template <class F>
    auto map(F&& f) const
    {
        using S = decltype(f(std::declval<R const&>()));
        std::vector<S> r;
        for (auto const& x : c_) r.push_back(f(x));
        return polynomial<S>(std::move(r));
    }
    polynomial pow(unsigned k) const
    {
        polynomial r = constant(c_.empty() ? R{} : c_.back() / c_.back()), b = *this;
        if (c_.empty()) return k == 0 ? r : polynomial{};
        bool first = true;
        while (k) {
            if (k & 1) r = first ? b : r * b, first = false;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }
};

template <class R>
bool is_monic(polynomial<R> const& f, R const& one)
{
    return !f.is_zero() && f.lc() == one;
}

/* Division with remainder; the divisor's leading coefficient must be invertible. */
template <class R>
std::pair<polynomial<R>, polynomial<R>> divrem(polynomial<R> const& a, polynomial<R> const& b)
{
    if (b.is_zero()) fail(error_kind::precondition_violated, "division by zero polynomial");
    int db = b.degree();
    std::vector<R> r = a.coeffs();
    if ((int)r.size() <= db) return {polynomial<R>{}, a};
    std::vector<R> q(r.size() - db);
    R const& lb = b.lc();
    R inv_lb = lb / lb / lb;
    bool unit = (lb / lb) == lb;
    for (int i = (int)r.size() - 1; i >= db; --i) {
        if (r[i] == R{}) continue;
        R c = unit ? r[i] : r[i] * inv_lb;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j)
            if (!(b.coeffs()[j] == R{})) r[i - db + j] = r[i - db + j] - c * b.coeffs()[j];
        r[i] = R{};
    }
    return {polynomial<R>(std::move(q)), polynomial<R>(std::move(r))};
}

/* Division by a monic polynomial, using only ring operations. */
template <class R>
std::pair<polynomial<R>, polynomial<R>> divrem_monic(polynomial<R> const& a, polynomial<R> const& b)
{
    if (b.is_zero()) fail(error_kind::precondition_violated, "division by zero polynomial");
    int db = b.degree();
    std::vector<R> r = a.coeffs();
    if ((int)r.size() <= db) return {polynomial<R>{}, a};
    std::vector<R> q(r.size() - db);
    for (int i = (int)r.size() - 1; i >= db; --i) {
        if (r[i] == R{}) continue;
        R c = r[i];
        q[i - db] = c;
        for (int j = 0; j < db; ++j)
            if (!(b.coeffs()[j] == R{})) r[i - db + j] = r[i - db + j] - c * b.coeffs()[j];
        r[i] = R{};
    }
    return {polynomial<R>(std::move(q)), polynomial<R>(std::move(r))};
}

template <class R>
polynomial<R> make_monic(polynomial<R> const& f)
{
    if (f.is_zero()) return f;
    R inv = f.lc() / f.lc() / f.lc();
    return f.scaled(inv);
}

template <class R>
polynomial<R> poly_gcd(polynomial<R> a, polynomial<R> b)
{
    while (!b.is_zero()) {
        auto r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

/* Returns (g, s) with s*a = g mod b, g monic gcd. */
template <class R>
std::pair<polynomial<R>, polynomial<R>> poly_half_xgcd(polynomial<R> a, polynomial<R> b)
{
    polynomial<R> s0 = polynomial<R>::constant(a.is_zero() ? R{} : a.lc() / a.lc()), s1;
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        auto s2 = s0 - q * s1;
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (a.is_zero()) return {a, s0};
    R inv = a.lc() / a.lc() / a.lc();
    return {a.scaled(inv), s0.scaled(inv)};
}

/* Unique a_n with deg a_n < deg phi and sum a_n phi^n = f. */
template <class R>
std::vector<polynomial<R>> phi_expansion(polynomial<R> f, polynomial<R> const& phi, R const& one)
{
    if (phi.degree() < 1) fail(error_kind::non_monic, "expansion base must have positive degree");
    if (!(phi.lc() == one)) fail(error_kind::non_monic, "expansion base must be monic");
    std::vector<polynomial<R>> out;
    while (!f.is_zero()) {
        auto [q, r] = divrem_monic(f, phi);
        out.push_back(std::move(r));
        f = std::move(q);
    }
    return out;
}

template <class R>
polynomial<R> from_phi_expansion(std::vector<polynomial<R>> const& a, polynomial<R> const& phi)
{
    polynomial<R> acc;
    for (size_t i = a.size(); i-- > 0;) acc = acc * phi + a[i];
    return acc;
}

/* Res(f, g) = lc(f)^deg g * prod g(roots of f), over a field. */
template <class R>
R resultant(polynomial<R> f, polynomial<R> g)
{
    if (f.is_zero() || g.is_zero()) fail(error_kind::precondition_violated, "resultant of zero polynomial");
    R one = f.lc() / f.lc();
    R acc = one;
    for (;;) {
        int m = f.degree(), n = g.degree();
        if (n == 0) {
            R p = one;
            for (int i = 0; i < m; ++i) p = p * g.lc();
            return acc * p;
        }
        if (m == 0) {
            R p = one;
            for (int i = 0; i < n; ++i) p = p * f.lc();
            return acc * p;
        }
        auto r = divrem(f, g).second;
        if (r.is_zero()) return R{};
        if ((m * n) % 2) acc = R{} - acc;
        for (int i = 0; i < m - r.degree(); ++i) acc = acc * g.lc();
        f = std::move(g);
        g = std::move(r);
    }
}

/* Characteristic polynomial of a square matrix over a field (Hessenberg). */
template <class R>
polynomial<R> characteristic_polynomial(std::vector<std::vector<R>> a, R const& one)
{
    int n = (int)a.size();
    for (int m = 1; m < n - 1; ++m) {
        int piv = -1;
        for (int i = m; i < n; ++i)
            if (!(a[i][m - 1] == R{})) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != m) {
            std::swap(a[piv], a[m]);
            for (int i = 0; i < n; ++i) std::swap(a[i][piv], a[i][m]);
        }
        R inv = one / a[m][m - 1];
        for (int i = m + 1; i < n; ++i) {
            if (a[i][m - 1] == R{}) continue;
            R u = a[i][m - 1] * inv;
            for (int j = 0; j < n; ++j) a[i][j] = a[i][j] - u * a[m][j];
            for (int j = 0; j < n; ++j) a[j][m] = a[j][m] + u * a[j][i];
        }
    }
    std::vector<polynomial<R>> p(n + 1);
    p[0] = polynomial<R>::constant(one);
    polynomial<R> x = polynomial<R>::monomial(one, 1);
    for (int k = 1; k <= n; ++k) {
        p[k] = (x - polynomial<R>::constant(a[k - 1][k - 1])) * p[k - 1];
        R prod = one;
        for (int i = k - 1; i >= 1; --i) {
            prod = prod * a[i][i - 1];
            p[k] = p[k] - p[i - 1].scaled(prod * a[i - 1][k - 1]);
        }
    }
    return p[n];
}

template <class R>
polynomial<R> mulmod(polynomial<R> const& a, polynomial<R> const& b, polynomial<R> const& m)
{
    return divrem(a * b, m).second;
}

/* Minimal polynomial over the coefficient field of the class of h in
 * K[x]/(g), g irreducible: squarefree part of the characteristic polynomial
 * of multiplication by h. Characteristic zero. */
template <class R>
polynomial<R> minimal_polynomial_in_quotient(polynomial<R> const& g, polynomial<R> const& h0, R const& one)
{
    if (g.degree() < 1 || !(g.lc() == one)) fail(error_kind::non_monic, "modulus must be monic of positive degree");
    int n = g.degree();
    auto h = divrem(h0, g).second;
    std::vector<std::vector<R>> m(n, std::vector<R>(n));
    polynomial<R> col = h;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) m[i][j] = col.coeff(i);
        col = divrem(col.shifted(1), g).second;
    }
    auto c = characteristic_polynomial(m, one);
    auto d = poly_gcd(c, c.derivative());
    return make_monic(divrem(c, d).first);
}

template <class R>
std::string poly_to_string(polynomial<R> const& f, std::function<std::string(R const&)> const& fmt, std::string const& var = "x")
{
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        R const& c = f.coeffs()[i];
        if (c == R{}) continue;
        std::string cs = fmt(c);
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string term;
        if (i == 0) term = cs;
        else if (cs == "1") term = mono;
        else if (cs == "-1") term = "-" + mono;
        else {
            bool simple = cs.find_first_of("+-*/", 1) == std::string::npos;
            term = (simple ? cs : "(" + cs + ")") + "*" + mono;
        }
        if (s.empty()) s = term;
        else if (term[0] == '-') s += " - " + term.substr(1);
        else s += " + " + term;
    }
    return s;
}

}

#endif
