#include "mlv/basefield.hpp"

#include <algorithm>
#include <numeric>

namespace mlv {

finite_tower::finite_tower(unsigned p) : p_(p)
{
    auto lv = std::make_shared<level>();
    lv->F = finite_field::prime(p);
    lv_.push_back(lv);
}

ff_elem finite_tower::embed(ff_elem const& a, int from, int to) const
{
    ff_elem r = a;
    for (int L = from + 1; L <= to; ++L) {
        auto const& lv = *lv_.at(L);
        if (lv.F == lv_[L - 1]->F) continue;
        r = ff_embed(r, lv.w_img, lv.F);
    }
    return r;
}

polynomial<ff_elem> finite_tower::embed(polynomial<ff_elem> const& f, int from, int to) const
{
    return f.map([&](ff_elem const& c) { return embed(c, from, to); });
}

finite_tower finite_tower::extended(polynomial<ff_elem> const& psi0) const
{
    auto F = lv_.back()->F;
    auto psi = ff_monic(psi0);
    int f = psi.degree();
    if (f < 1) fail(error_kind::precondition_violated, "tower extension by a constant");
    auto lv = std::make_shared<level>();
    lv->f = f;
    lv->psi = psi;
    if (f == 1) {
        lv->F = F;
        lv->w_img = ff_elem::generator(F);
        lv->z = -psi.coeff(0);
        if (lv->z.is_zero()) lv->z = ff_elem::from_int(F, 0);
    } else {
        int n = F->degree(), N = n * f;
        auto F2 = finite_field::make(p_, N);
        std::vector<ff_elem> mc;
        for (auto c : F->modulus()) mc.push_back(ff_elem::from_int(F2, c));
        auto w_roots = ff_roots(F2, ff_poly(mc));
        if (w_roots.empty()) fail(error_kind::precondition_violated, "field embedding not found");
        lv->F = F2;
        lv->w_img = w_roots.front();
        auto psi2 = psi.map([&](ff_elem const& c) { return ff_embed(c, lv->w_img, F2); });
        auto z_roots = ff_roots(F2, psi2);
        if (z_roots.empty()) fail(error_kind::precondition_violated, "residual factor has no root in its extension");
        lv->z = z_roots.front();
        std::vector<std::vector<uint32_t>> m(N, std::vector<uint32_t>(N, 0));
        ff_elem zb = ff_elem::from_int(F2, 1);
        for (int b = 0; b < f; ++b) {
            ff_elem col = zb;
            for (int a = 0; a < n; ++a) {
                auto c = col.coords();
                for (int r = 0; r < N; ++r) m[r][a + n * b] = c[r];
                col = col * lv->w_img;
            }
            zb = zb * lv->z;
        }
        lv->dec = ff_matrix_inverse(m, p_);
    }
    finite_tower t = *this;
    t.lv_.push_back(lv);
    return t;
}

std::vector<ff_elem> finite_tower::decompose(ff_elem const& a, int L) const
{
    auto const& lv = *lv_.at(L);
    auto Fprev = lv_.at(L - 1)->F;
    if (lv.f == 1) return {a.is_zero() ? ff_elem::from_int(Fprev, 0) : a};
    int n = Fprev->degree(), N = lv.F->degree();
    auto c = a.is_zero() ? std::vector<uint32_t>(N, 0) : a.coords();
    std::vector<uint64_t> v(N, 0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) v[i] = (v[i] + (uint64_t)lv.dec[i][j] * c[j]) % p_;
    std::vector<ff_elem> out;
    for (int b = 0; b < lv.f; ++b) {
        std::vector<uint32_t> w(n);
        for (int a2 = 0; a2 < n; ++a2) w[a2] = (uint32_t)v[a2 + n * b];
        out.push_back(ff_elem(Fprev, w));
    }
    return out;
}

std::vector<std::pair<polynomial<ff_elem>, int>> finite_tower::factor(polynomial<ff_elem> const& f, int L) const
{
    return ff_factor(field(L), f);
}

std::string finite_tower::str(ff_elem const& a, int L) const
{
    if (L == 0) return std::to_string(a.coord(0));
    auto w = decompose(a, L);
    if (w.size() == 1) return str(w[0], L - 1);
    std::string s, var = "xi" + std::to_string(L - 1);
    for (int b = (int)w.size() - 1; b >= 0; --b) {
        if (w[b].is_zero()) continue;
        std::string c = str(w[b], L - 1);
        std::string mono = b == 0 ? "" : (b == 1 ? var : var + "^" + std::to_string(b));
        std::string term;
        if (b == 0) term = c;
        else if (c == "1") term = mono;
        else term = (c.find(' ') != std::string::npos ? "(" + c + ")" : c) + "*" + mono;
        s += (s.empty() ? "" : " + ") + term;
    }
    return s.empty() ? "0" : s;
}

std::string finite_tower::describe() const
{
    std::string s = "F_" + std::to_string(p_);
    for (int L = 1; L < (int)lv_.size(); ++L) {
        auto const& lv = *lv_[L];
        auto fmt = std::function<std::string(ff_elem const&)>([&](ff_elem const& c) { return str(c, L - 1); });
        s += "[xi" + std::to_string(L - 1) + " : " + poly_to_string(lv.psi, fmt, "y") + "]";
    }
    return s;
}

bool finite_tower::same_as(finite_tower const& o) const
{
    if (p_ != o.p_ || lv_.size() != o.lv_.size()) return false;
    for (size_t i = 1; i < lv_.size(); ++i) {
        auto const &a = *lv_[i], &b = *o.lv_[i];
        if (a.F->modulus() != b.F->modulus() || !(a.z == b.z) || !(a.w_img == b.w_img)) return false;
    }
    return true;
}

namespace {

std::vector<rat> to_rat(expvec const& e)
{
    std::vector<rat> r;
    for (auto const& x : e) r.push_back(rat(x.numerator(), x.denominator()));
    return r;
}

uint32_t inv_mod(uint32_t a, unsigned p)
{
    uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return (uint32_t)r;
}

}

function_tower::function_tower(unsigned p, std::vector<std::string> names) : p_(p), names_(std::move(names))
{
    auto lv = std::make_shared<level>();
    lv->lattice = rational_lattice::standard(nvars());
    lv_.push_back(lv);
}

function_tower function_tower::extended(polynomial<mratfunc> const& psi0) const
{
    int L = height();
    auto psi = psi0.scaled(psi0.lc().inverse());
    int f = psi.degree();
    if (f < 1) fail(error_kind::precondition_violated, "tower extension by a constant");
    auto lv = std::make_shared<level>();
    lv->psi = psi;
    lv->f = f;
    lv->lattice = lv_.back()->lattice;
    if (f == 1) {
        lv->z = -psi.coeff(0);
    } else {
        bool binomial = f == (int)p_;
        for (int i = 1; i < f; ++i) binomial = binomial && psi.coeff(i).is_zero();
        mratfunc c = -psi.coeff(0);
        if (!binomial || !c.is_monomial())
            fail(error_kind::unsupported_factorization, "function-field extension other than a p-th root of a monomial");
        if (is_pth_power(c, L)) fail(error_kind::precondition_violated, "extension polynomial is reducible");
        auto [e, coef] = c.num().leading_term();
        for (auto& x : e) x /= (long)p_;
        lv->zexp = e;
        lv->zcoef = coef;       // a^(1/p) = a in F_p
        lv->z = mratfunc(mpoly::monomial(p_, e, coef));
        lv->lattice = lv->lattice.with(to_rat(e));
    }
    function_tower t = *this;
    t.lv_.push_back(lv);
    return t;
}

std::vector<mratfunc> function_tower::decompose(mratfunc const& a, int L) const
{
    auto const& lv = *lv_.at(L);
    if (lv.f == 1) return {a};
    auto const& lat = lv_.at(L - 1)->lattice;
    mpoly B = a.is_polynomial() ? mpoly::constant(p_, nvars(), 1) : a.den();
    mpoly N = a.num() * B.pow(p_ - 1);
    mpoly D = B.pow(p_);
    std::vector<mpoly> bucket(p_, mpoly(p_, nvars()));
    uint32_t ainv = inv_mod(lv.zcoef, p_);
    for (auto const& [e, c] : N.terms()) {
        bool placed = false;
        for (unsigned k = 0; k < p_ && !placed; ++k) {
            expvec r = e;
            for (size_t i = 0; i < r.size(); ++i) r[i] -= lv.zexp[i] * (long)k;
            if (!lat.contains(to_rat(r))) continue;
            uint64_t cc = c;
            for (unsigned j = 0; j < k; ++j) cc = cc * ainv % p_;
            bucket[k] = bucket[k] + mpoly::monomial(p_, r, (long)cc);
            placed = true;
        }
        if (!placed) fail(error_kind::precondition_violated, "element outside the residue tower");
    }
    std::vector<mratfunc> out;
    for (auto& b : bucket) out.push_back(b.is_zero() ? from_int(0, 0) : mratfunc(b, D));
    return out;
}

bool function_tower::is_pth_power(mratfunc const& c, int L, mratfunc* root) const
{
    if (c.is_zero()) {
        if (root) *root = from_int(0, 0);
        return true;
    }
    auto const& lat = lv_.at(L)->lattice;
    mpoly B = c.is_polynomial() ? mpoly::constant(p_, nvars(), 1) : c.den();
    mpoly N = c.num() * B.pow(p_ - 1);
    mpoly R(p_, nvars());
    for (auto const& [e, k] : N.terms()) {
        expvec r = e;
        for (auto& x : r) x /= (long)p_;
        if (!lat.contains(to_rat(r))) return false;
        R = R + mpoly::monomial(p_, r, k);
    }
    if (root) *root = c.is_polynomial() ? mratfunc(R) : mratfunc(R, B);
    return true;
}

void function_tower::factor_rec(polynomial<mratfunc> const& f, int mult, int L,
                                std::vector<std::pair<polynomial<mratfunc>, int>>& out) const
{
    int n = f.degree();
    if (n < 1) return;
    if (n == 1) {
        out.push_back({f, mult});
        return;
    }
    if (f.derivative().is_zero()) {
        std::vector<mratfunc> roots;
        bool all = true;
        for (int i = 0; i <= n; i += p_) {
            mratfunc r;
            if (!is_pth_power(f.coeff(i), L, &r)) {
                all = false;
                break;
            }
            roots.push_back(r);
        }
        if (all) {
            factor_rec(polynomial<mratfunc>(roots), mult * (int)p_, L, out);
            return;
        }
        if (n == (int)p_) {
            // y^p - c with c not a p-th power is irreducible in characteristic p
            out.push_back({f, mult});
            return;
        }
        fail(error_kind::unsupported_factorization, "inseparable polynomial beyond the binomial pattern");
    }
    if (n % (int)p_ != 0) {
        mratfunc a = f.coeff(n - 1) / from_int(n, L);
        polynomial<mratfunc> lin({a, one(L)});
        if (lin.pow(n) == f) {
            out.push_back({lin, mult * n});
            return;
        }
    }
    fail(error_kind::unsupported_factorization, "function-field polynomial outside the supported patterns");
}

std::vector<std::pair<polynomial<mratfunc>, int>> function_tower::factor(polynomial<mratfunc> const& f, int L) const
{
    if (f.is_zero()) fail(error_kind::precondition_violated, "factorization of zero");
    std::vector<std::pair<polynomial<mratfunc>, int>> out;
    factor_rec(f.scaled(f.lc().inverse()), 1, L, out);
    return out;
}

std::string function_tower::describe() const
{
    std::string s = "F_" + std::to_string(p_) + "(";
    for (size_t i = 0; i < names_.size(); ++i) s += (i ? "," : "") + names_[i];
    s += ")";
    for (int L = 1; L < (int)lv_.size(); ++L)
        if (lv_[L]->f > 1) s += "(" + lv_[L]->z.str(names_) + ")";
    return s;
}

bool function_tower::same_as(function_tower const& o) const
{
    if (p_ != o.p_ || lv_.size() != o.lv_.size()) return false;
    for (size_t i = 1; i < lv_.size(); ++i)
        if (!(lv_[i]->z == o.lv_[i]->z)) return false;
    return true;
}

int function_tower::element_degree(mratfunc const& a, int) const
{
    long d = 1;
    auto scan = [&d](mpoly const& m) {
        for (auto const& [e, c] : m.terms())
            for (auto const& x : e) d = std::lcm(d, x.denominator());
    };
    scan(a.num());
    if (!a.is_polynomial()) scan(a.den());
    return (int)d;
}

}
