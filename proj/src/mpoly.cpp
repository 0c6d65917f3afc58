#include "mlv/mpoly.hpp"
#include "mlv/error.hpp"

#include <algorithm>

namespace mlv {

namespace {

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

std::string expo_str(expo const& e)
{
    if (e.denominator() == 1) return std::to_string(e.numerator());
    return "(" + std::to_string(e.numerator()) + "/" + std::to_string(e.denominator()) + ")";
}

}

void mpoly::adopt(mpoly const& o)
{
    if (!p_) {
        p_ = o.p_;
        nv_ = o.nv_;
    }
}

mpoly mpoly::constant(unsigned p, int nv, long c)
{
    mpoly r(p, nv);
    long v = ((c % (long)p) + p) % p;
    if (v) r.t_[expvec(nv, expo(0))] = (uint32_t)v;
    return r;
}

mpoly mpoly::monomial(unsigned p, expvec e, long c)
{
    mpoly r(p, (int)e.size());
    long v = ((c % (long)p) + p) % p;
    if (v) r.t_[std::move(e)] = (uint32_t)v;
    return r;
}

mpoly mpoly::variable(unsigned p, int nv, int i)
{
    expvec e(nv, expo(0));
    e[i] = 1;
    return monomial(p, e);
}

bool mpoly::is_constant() const
{
    if (t_.empty()) return true;
    if (t_.size() != 1) return false;
    for (auto const& x : t_.begin()->first)
        if (x != expo(0)) return false;
    return true;
}

uint32_t mpoly::constant_term() const
{
    auto it = t_.find(expvec(nv_, expo(0)));
    return it == t_.end() ? 0 : it->second;
}

std::pair<expvec, uint32_t> mpoly::leading_term() const
{
    if (t_.empty()) fail(error_kind::precondition_violated, "leading term of zero");
    return *t_.rbegin();
}

expvec mpoly::min_exponents() const
{
    expvec m(nv_, expo(0));
    bool first = true;
    for (auto const& [e, c] : t_) {
        for (int i = 0; i < nv_; ++i)
            if (first || e[i] < m[i]) m[i] = e[i];
        first = false;
    }
    return m;
}

expo mpoly::min_degree(int var) const
{
    if (t_.empty()) fail(error_kind::precondition_violated, "degree of zero");
    expo m = t_.begin()->first[var];
    for (auto const& [e, c] : t_) m = std::min(m, e[var]);
    return m;
}

mpoly mpoly::operator+(mpoly const& o) const
{
    mpoly r = *this;
    r.adopt(o);
    for (auto const& [e, c] : o.t_) {
        auto& slot = r.t_[e];
        slot = (uint32_t)((slot + (uint64_t)c) % r.p_);
        if (!slot) r.t_.erase(e);
    }
    return r;
}

mpoly mpoly::operator-() const
{
    mpoly r = *this;
    for (auto& [e, c] : r.t_) c = p_ - c;
    return r;
}

mpoly mpoly::operator-(mpoly const& o) const { return *this + (-o); }

mpoly mpoly::operator*(mpoly const& o) const
{
    mpoly r(p_ ? p_ : o.p_, p_ ? nv_ : o.nv_);
    for (auto const& [e1, c1] : t_)
        for (auto const& [e2, c2] : o.t_) {
            expvec e(e1);
            for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
            auto& slot = r.t_[e];
            slot = (uint32_t)((slot + (uint64_t)c1 * c2) % r.p_);
            if (!slot) r.t_.erase(e);
        }
    return r;
}

mpoly mpoly::operator*(long k) const
{
    if (!p_) return *this;
    long v = ((k % (long)p_) + p_) % p_;
    mpoly r(p_, nv_);
    if (!v) return r;
    for (auto const& [e, c] : t_) r.t_[e] = (uint32_t)((uint64_t)c * v % p_);
    return r;
}

mpoly mpoly::shifted(expvec const& s) const
{
    mpoly r(p_, nv_);
    for (auto const& [e, c] : t_) {
        expvec f(e);
        for (size_t i = 0; i < f.size(); ++i) f[i] += s[i];
        r.t_[f] = c;
    }
    return r;
}

mpoly mpoly::pow(unsigned long k) const
{
    mpoly r = constant(p_, nv_, 1), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

bool mpoly::operator==(mpoly const& o) const { return t_ == o.t_; }
bool mpoly::operator<(mpoly const& o) const { return t_ < o.t_; }

mpoly mpoly::lowest_part(int var, expo& order) const
{
    order = min_degree(var);
    mpoly r(p_, nv_ - 1);
    for (auto const& [e, c] : t_) {
        if (e[var] != order) continue;
        expvec f(e);
        f.erase(f.begin() + var);
        r.t_[f] = c;
    }
    return r;
}

mpoly mpoly::drop_var(int var) const
{
    mpoly r(p_, nv_ - 1);
    for (auto const& [e, c] : t_) {
        if (e[var] != expo(0)) fail(error_kind::precondition_violated, "variable still present");
        expvec f(e);
        f.erase(f.begin() + var);
        r.t_[f] = c;
    }
    return r;
}

mpoly mpoly::add_var() const
{
    mpoly r(p_, nv_ + 1);
    for (auto const& [e, c] : t_) {
        expvec f(e);
        f.push_back(expo(0));
        r.t_[f] = c;
    }
    return r;
}

std::string mpoly::str(std::vector<std::string> const& names) const
{
    if (t_.empty()) return "0";
    std::string s;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        auto const& [e, c] = *it;
        long cv = c > p_ / 2 && p_ > 2 ? (long)c - (long)p_ : (long)c;
        std::string mono;
        for (int i = 0; i < nv_; ++i) {
            if (e[i] == expo(0)) continue;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (e[i] != expo(1)) mono += "^" + expo_str(e[i]);
        }
        bool neg = cv < 0;
        long a = neg ? -cv : cv;
        std::string term = mono.empty() ? std::to_string(a) : (a == 1 ? mono : std::to_string(a) + "*" + mono);
        if (s.empty()) s = (neg ? "-" : "") + term;
        else s += (neg ? " - " : " + ") + term;
    }
    return s;
}

mratfunc::mratfunc(mpoly n) : num_(std::move(n)) {}

mratfunc::mratfunc(mpoly n, mpoly d) : num_(std::move(n)), den_(std::move(d))
{
    if (den_.is_zero()) fail(error_kind::precondition_violated, "division by zero rational function");
    normalize();
}

void mratfunc::normalize()
{
    if (num_.is_zero()) {
        den_ = mpoly();
        return;
    }
    if (den_.is_zero()) return;
    auto m = den_.min_exponents();
    for (auto& x : m) x = -x;
    den_ = den_.shifted(m);
    num_ = num_.shifted(m);
    auto [le, lc] = den_.leading_term();
    unsigned p = den_.p();
    long inv = inv_mod(lc, p);
    den_ = den_ * inv;
    num_ = num_ * inv;
    if (den_.is_constant()) den_ = mpoly();
    else if (num_ == den_) {
        num_ = mpoly::constant(p, num_.nvars(), 1);
        den_ = mpoly();
    }
}

bool mratfunc::is_one() const
{
    return is_polynomial() && num_.is_constant() && num_.constant_term() == 1;
}

mratfunc mratfunc::operator+(mratfunc const& o) const
{
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    if (den_.is_zero() && o.den_.is_zero()) return mratfunc(num_ + o.num_);
    if (den_ == o.den_) return mratfunc(num_ + o.num_, den_);
    mpoly d1 = den_.is_zero() ? mpoly::constant(p(), nvars(), 1) : den_;
    mpoly d2 = o.den_.is_zero() ? mpoly::constant(p(), nvars(), 1) : o.den_;
    return mratfunc(num_ * d2 + o.num_ * d1, d1 * d2);
}

mratfunc mratfunc::operator-() const
{
    mratfunc r = *this;
    r.num_ = -r.num_;
    return r;
}

mratfunc mratfunc::operator-(mratfunc const& o) const { return *this + (-o); }

mratfunc mratfunc::operator*(mratfunc const& o) const
{
    if (is_zero() || o.is_zero()) {
        mratfunc z;
        z.num_ = mpoly(p() ? p() : o.p(), p() ? nvars() : o.nvars());
        return z;
    }
    if (den_.is_zero() && o.den_.is_zero()) return mratfunc(num_ * o.num_);
    mpoly d1 = den_.is_zero() ? mpoly::constant(p(), nvars(), 1) : den_;
    mpoly d2 = o.den_.is_zero() ? mpoly::constant(p(), nvars(), 1) : o.den_;
    // cancel a shared denominator factor cheaply when the numerators match it
    if (num_ == d2) return mratfunc(o.num_, d1);
    if (o.num_ == d1) return mratfunc(num_, d2);
    return mratfunc(num_ * o.num_, d1 * d2);
}

mratfunc mratfunc::operator*(long k) const
{
    mratfunc r = *this;
    r.num_ = r.num_ * k;
    if (r.num_.is_zero()) r.den_ = mpoly();
    return r;
}

mratfunc mratfunc::inverse() const
{
    if (is_zero()) fail(error_kind::precondition_violated, "inverse of zero rational function");
    mpoly d = den_.is_zero() ? mpoly::constant(p(), nvars(), 1) : den_;
    return mratfunc(d, num_);
}

mratfunc mratfunc::operator/(mratfunc const& o) const { return *this * o.inverse(); }

mratfunc mratfunc::pow(long k) const
{
    if (k < 0) return inverse().pow(-k);
    mratfunc r = constant(p(), nvars(), 1), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

bool mratfunc::operator==(mratfunc const& o) const
{
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (den_ == o.den_) return num_ == o.num_;
    mpoly d1 = den_.is_zero() ? mpoly::constant(p(), nvars(), 1) : den_;
    mpoly d2 = o.den_.is_zero() ? mpoly::constant(p(), nvars(), 1) : o.den_;
    return num_ * d2 == o.num_ * d1;
}

std::string mratfunc::str(std::vector<std::string> const& names) const
{
    if (is_zero()) return "0";
    if (den_.is_zero()) return num_.str(names);
    return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
}

}
