#include "mlv/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

namespace mlv {

namespace {

std::mutex cache_mutex;
std::map<std::pair<unsigned, int>, ff_ptr> field_cache;

bool same_field(ff_ptr const& a, ff_ptr const& b)
{
    return a == b || (a && b && a->p() == b->p() && a->modulus() == b->modulus());
}

ff_ptr pick(ff_ptr const& a, ff_ptr const& b)
{
    if (a && b && !same_field(a, b)) fail(error_kind::precondition_violated, "finite field mismatch");
    return a ? a : b;
}

/* Rabin's test for a monic polynomial over F_p. */
bool rabin_irreducible(unsigned p, std::vector<uint32_t> const& m)
{
    int n = (int)m.size() - 1;
    if (n == 1) return true;
    auto Fp = finite_field::prime(p);
    std::vector<ff_elem> cs;
    for (auto c : m) cs.push_back(ff_elem::from_int(Fp, c));
    ff_poly f(cs);
    ff_poly x = ff_poly::monomial(ff_elem::from_int(Fp, 1), 1);
    std::vector<int> primes;
    for (int d = 2, k = n; d <= k; ++d)
        if (k % d == 0) {
            primes.push_back(d);
            while (k % d == 0) k /= d;
        }
    std::vector<ff_poly> frob(n + 1);   // x^(p^k) mod f
    frob[0] = x;
    for (int k = 1; k <= n; ++k) frob[k] = ff_powmod(frob[k - 1], bigint(p), f);
    if (!(divrem(frob[n] - x, f).second.is_zero())) return false;
    for (int r : primes) {
        auto g = poly_gcd(frob[n / r] - x, f);
        if (g.degree() != 0) return false;
    }
    return true;
}

}

finite_field::finite_field(unsigned p, std::vector<uint32_t> modulus) : p_(p), mod_(std::move(modulus))
{
    if (mod_.size() < 2 || mod_.back() != 1) fail(error_kind::precondition_violated, "modulus must be monic of positive degree");
    mpz_ui_pow_ui(order_.get_mpz_t(), p, degree());
}

ff_ptr finite_field::prime(unsigned p) { return make(p, 1); }

ff_ptr finite_field::make(unsigned p, int n)
{
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = field_cache.find({p, n});
        if (it != field_cache.end()) return it->second;
    }
    std::vector<uint32_t> m(n + 1, 0);
    m[n] = 1;
    if (n > 1) {
        // count through the lower coefficients, constant term varying fastest
        for (;;) {
            if (m[0] != 0 && rabin_irreducible(p, m)) break;
            int i = 0;
            while (i < n && ++m[i] == p) m[i++] = 0;
            if (i == n) fail(error_kind::precondition_violated, "no irreducible polynomial found");
        }
    }
    auto F = std::make_shared<const finite_field>(p, m);
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto [it, ins] = field_cache.emplace(std::make_pair(p, n), F);
    return it->second;
}

std::string finite_field::str() const
{
    if (degree() == 1) return "F_" + std::to_string(p_);
    std::vector<ff_elem> dummy;
    std::string s = "F_" + std::to_string(p_) + "[w]/(";
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (mod_[i] == 0) continue;
        if (!first) s += " + ";
        first = false;
        std::string mono = i == 0 ? "" : (i == 1 ? "w" : "w^" + std::to_string(i));
        if (i == 0) s += std::to_string(mod_[i]);
        else if (mod_[i] == 1) s += mono;
        else s += std::to_string(mod_[i]) + "*" + mono;
    }
    return s + ")";
}

void finite_field::mul(std::vector<uint32_t> const& a, std::vector<uint32_t> const& b, std::vector<uint32_t>& out) const
{
    int n = degree();
    if (a.empty() || b.empty()) {
        out.assign(n, 0);
        return;
    }
    std::vector<uint64_t> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + (uint64_t)a[i] * b[j]) % p_;
    }
    for (int i = (int)prod.size() - 1; i >= n; --i) {
        uint64_t c = prod[i] % p_;
        if (!c) continue;
        for (int j = 0; j < n; ++j)
            prod[i - n + j] = (prod[i - n + j] + (uint64_t)(p_ - c) * mod_[j]) % p_;
        prod[i] = 0;
    }
    out.assign(n, 0);
    for (int i = 0; i < n && i < (int)prod.size(); ++i) out[i] = (uint32_t)(prod[i] % p_);
}

ff_elem::ff_elem(ff_ptr f, std::vector<uint32_t> c) : f_(std::move(f)), c_(std::move(c))
{
    if (f_) {
        c_.resize(f_->degree(), 0);
        for (auto& x : c_) x %= f_->p();
    }
}

ff_elem ff_elem::from_int(ff_ptr const& f, long k)
{
    long p = f->p();
    long r = ((k % p) + p) % p;
    return ff_elem(f, {(uint32_t)r});
}

ff_elem ff_elem::generator(ff_ptr const& f)
{
    if (f->degree() == 1) return from_int(f, (long)f->p() - (long)f->modulus()[0]);
    return ff_elem(f, {0, 1});
}

bool ff_elem::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](uint32_t x) { return x == 0; });
}

bool ff_elem::is_one() const
{
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](uint32_t x) { return x == 0; });
}

std::vector<uint32_t> ff_elem::coords() const
{
    auto r = c_;
    if (f_) r.resize(f_->degree(), 0);
    return r;
}

ff_elem ff_elem::operator+(ff_elem const& o) const
{
    auto F = pick(f_, o.f_);
    if (!F) return {};
    std::vector<uint32_t> r(F->degree(), 0);
    for (int i = 0; i < F->degree(); ++i) r[i] = (coord(i) + o.coord(i)) % F->p();
    return ff_elem(F, r);
}

ff_elem ff_elem::operator-() const
{
    if (!f_) return {};
    std::vector<uint32_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] ? f_->p() - c_[i] : 0;
    return ff_elem(f_, r);
}

ff_elem ff_elem::operator-(ff_elem const& o) const { return *this + (-o); }

ff_elem ff_elem::operator*(ff_elem const& o) const
{
    if (!f_ || !o.f_) return {};
    auto F = pick(f_, o.f_);
    std::vector<uint32_t> r;
    F->mul(c_, o.c_, r);
    return ff_elem(F, std::move(r));
}

ff_elem ff_elem::operator*(long k) const
{
    if (!f_) return {};
    long p = f_->p();
    uint64_t kk = (uint64_t)(((k % p) + p) % p);
    std::vector<uint32_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = (uint32_t)((c_[i] * kk) % p);
    return ff_elem(f_, r);
}

ff_elem ff_elem::pow(bigint const& k) const
{
    if (k < 0) return inverse().pow(-k);
    if (!f_) {
        if (k == 0) fail(error_kind::precondition_violated, "0^0 without a field");
        return {};
    }
    ff_elem r = from_int(f_, 1), b = *this;
    size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(k.get_mpz_t(), i)) r = r * b;
        if (i + 1 < bits) b = b * b;
    }
    return r;
}

ff_elem ff_elem::inverse() const
{
    if (!f_ || is_zero()) fail(error_kind::precondition_violated, "inverse of zero in finite field");
    return pow(f_->order() - 2);
}

ff_elem ff_elem::operator/(ff_elem const& o) const { return *this * o.inverse(); }

bool ff_elem::operator==(ff_elem const& o) const
{
    if (!f_ || !o.f_) return is_zero() && o.is_zero();
    if (!same_field(f_, o.f_)) return false;
    return coords() == o.coords();
}

bool ff_elem::operator<(ff_elem const& o) const
{
    int n = std::max(f_ ? f_->degree() : 0, o.f_ ? o.f_->degree() : 0);
    for (int i = n - 1; i >= 0; --i)
        if (coord(i) != o.coord(i)) return coord(i) < o.coord(i);
    return false;
}

std::string ff_elem::str(std::string const& var) const
{
    if (is_zero()) return "0";
    std::string s;
    for (int i = (int)c_.size() - 1; i >= 0; --i) {
        if (!c_[i]) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string t = i == 0 ? std::to_string(c_[i]) : (c_[i] == 1 ? mono : std::to_string(c_[i]) + "*" + mono);
        s += (s.empty() ? "" : " + ") + t;
    }
    return s;
}

ff_poly ff_monic(ff_poly const& f) { return f.is_zero() ? f : f.scaled(f.lc().inverse()); }

ff_poly ff_powmod(ff_poly const& a, bigint const& k, ff_poly const& m)
{
    ff_elem one = ff_elem::from_int(m.lc().field(), 1);
    ff_poly r = ff_poly::constant(one), b = divrem(a, m).second;
    size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(k.get_mpz_t(), i)) r = mulmod(r, b, m);
        if (i + 1 < bits) b = mulmod(b, b, m);
    }
    return divrem(r, m).second;
}

bool ff_less(ff_poly const& a, ff_poly const& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        if (a.coeff(i) < b.coeff(i)) return true;
        if (b.coeff(i) < a.coeff(i)) return false;
    }
    return false;
}

namespace {

ff_poly pth_root(ff_ptr const& F, ff_poly const& f)
{
    unsigned p = F->p();
    bigint e = F->order() / p;      // a^(q/p) is the p-th root
    std::vector<ff_elem> c;
    for (int i = 0; i <= f.degree(); i += p) c.push_back(f.coeff(i).is_zero() ? ff_elem() : f.coeff(i).pow(e));
    return ff_poly(c);
}

void squarefree(ff_ptr const& F, ff_poly f, int mult, std::vector<std::pair<ff_poly, int>>& out)
{
    if (f.degree() < 1) return;
    auto fp = f.derivative();
    if (fp.is_zero()) {
        squarefree(F, pth_root(F, f), mult * F->p(), out);
        return;
    }
    auto c = poly_gcd(f, fp);
    auto w = divrem(f, c).first;
    int i = 1;
    while (w.degree() > 0) {
        auto y = poly_gcd(w, c);
        auto fac = divrem(w, y).first;
        if (fac.degree() > 0) out.push_back({ff_monic(fac), i * mult});
        ++i;
        w = y;
        c = divrem(c, y).first;
    }
    if (c.degree() > 0) squarefree(F, pth_root(F, c), mult * F->p(), out);
}

std::vector<std::pair<ff_poly, int>> distinct_degree(ff_ptr const& F, ff_poly f)
{
    std::vector<std::pair<ff_poly, int>> out;
    ff_elem one = ff_elem::from_int(F, 1);
    ff_poly x = ff_poly::monomial(one, 1);
    ff_poly h = x;
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = ff_powmod(h, F->order(), f);
        auto g = poly_gcd(h - x, f);
        if (g.degree() > 0) {
            out.push_back({g, d});
            f = divrem(f, g).first;
            h = divrem(h, f).second;
        }
    }
    if (f.degree() > 0) out.push_back({f, f.degree()});
    return out;
}

void equal_degree(ff_ptr const& F, ff_poly const& f, int d, std::mt19937_64& rng, std::vector<ff_poly>& out)
{
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    unsigned p = F->p();
    int n = F->degree();
    ff_elem one = ff_elem::from_int(F, 1);
    for (;;) {
        std::vector<ff_elem> c;
        for (int i = 0; i < f.degree(); ++i) {
            std::vector<uint32_t> v(n);
            for (auto& x : v) x = (uint32_t)(rng() % p);
            c.push_back(ff_elem(F, v));
        }
        ff_poly a(c);
        if (a.degree() < 1) continue;
        ff_poly b;
        if (p == 2) {
            // absolute trace from F_{2^(nd)} down to F_2
            ff_poly t = a, acc = a;
            for (int i = 1; i < n * d; ++i) {
                t = mulmod(t, t, f);
                acc = acc + t;
            }
            b = acc;
        } else {
            bigint qd;
            mpz_pow_ui(qd.get_mpz_t(), F->order().get_mpz_t(), d);
            b = ff_powmod(a, (qd - 1) / 2, f) - ff_poly::constant(one);
        }
        auto g = poly_gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(F, g, d, rng, out);
            equal_degree(F, divrem(f, g).first, d, rng, out);
            return;
        }
    }
}

}

std::vector<std::pair<ff_poly, int>> ff_factor(ff_ptr const& F, ff_poly const& f0)
{
    if (f0.is_zero()) fail(error_kind::precondition_violated, "factorization of zero");
    auto f = ff_monic(f0);
    std::vector<std::pair<ff_poly, int>> sqf, out;
    squarefree(F, f, 1, sqf);
    std::mt19937_64 rng(0x6d6c76u);
    for (auto const& [s, m] : sqf) {
        for (auto const& [g, d] : distinct_degree(F, s)) {
            std::vector<ff_poly> parts;
            equal_degree(F, g, d, rng, parts);
            for (auto& q : parts) out.push_back({ff_monic(q), m});
        }
    }
    // merge equal factors (possible across squarefree layers only in degenerate cases)
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return ff_less(a.first, b.first); });
    std::vector<std::pair<ff_poly, int>> merged;
    for (auto& fm : out) {
        if (!merged.empty() && merged.back().first == fm.first) merged.back().second += fm.second;
        else merged.push_back(fm);
    }
    return merged;
}

bool ff_is_irreducible(ff_ptr const& F, ff_poly const& f)
{
    if (f.degree() < 1) return false;
    auto fac = ff_factor(F, f);
    return fac.size() == 1 && fac[0].second == 1;
}

std::vector<ff_elem> ff_roots(ff_ptr const& F, ff_poly const& f)
{
    std::vector<ff_elem> r;
    ff_elem one = ff_elem::from_int(F, 1);
    ff_poly x = ff_poly::monomial(one, 1);
    auto m = ff_monic(f);
    auto h = ff_powmod(x, F->order(), m);
    auto g = poly_gcd(h - x, m);
    if (g.degree() < 1) return r;
    std::vector<ff_poly> parts;
    std::mt19937_64 rng(0x726f6f74u);
    equal_degree(F, g, 1, rng, parts);
    for (auto& q : parts) r.push_back(-(ff_monic(q).coeff(0)));
    std::sort(r.begin(), r.end());
    return r;
}

ff_elem ff_embed(ff_elem const& a, ff_elem const& w, ff_ptr const& target)
{
    if (a.is_zero()) return {};
    ff_elem acc, pw = ff_elem::from_int(target, 1);
    auto c = a.coords();
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i]) acc = acc + pw * (long)c[i];
        if (i + 1 < c.size()) pw = pw * w;
    }
    return acc;
}

int ff_element_degree(ff_elem const& a)
{
    if (a.is_zero()) return 1;
    auto F = a.field();
    ff_elem b = a;
    for (int d = 1; d <= F->degree(); ++d) {
        b = b.pow(bigint(F->p()));
        if (b == a) return d;
    }
    return F->degree();
}

std::vector<std::vector<uint32_t>> ff_matrix_inverse(std::vector<std::vector<uint32_t>> m, unsigned p)
{
    int n = (int)m.size();
    std::vector<std::vector<uint32_t>> inv(n, std::vector<uint32_t>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    auto pw = [p](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col]) {
                piv = r;
                break;
            }
        if (piv < 0) fail(error_kind::precondition_violated, "singular matrix over F_p");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        uint64_t iv = pw(m[col][col], p - 2);
        for (int j = 0; j < n; ++j) {
            m[col][j] = (uint32_t)(m[col][j] * iv % p);
            inv[col][j] = (uint32_t)(inv[col][j] * iv % p);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || !m[r][col]) continue;
            uint64_t c = m[r][col];
            for (int j = 0; j < n; ++j) {
                m[r][j] = (uint32_t)((m[r][j] + (p - c) * m[col][j]) % p);
                inv[r][j] = (uint32_t)((inv[r][j] + (p - c) * inv[col][j]) % p);
            }
        }
    }
    return inv;
}

}
