#include "mlv/okutsu.hpp"

#include <algorithm>

namespace mlv {

namespace {

bigint ipow(unsigned p, long k)
{
    bigint r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, (unsigned long)k);
    return r;
}

bigint mod(bigint a, bigint const& m)
{
    a %= m;
    if (a < 0) a += m;
    return a;
}

bigint inv_mod(bigint const& a, bigint const& m)
{
    bigint r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) fail(error_kind::precondition_violated, "not invertible");
    return r;
}

long ord_of(bigint const& a, unsigned p)
{
    long k = 0;
    bigint x = a;
    while (x % p == 0) {
        x /= p;
        ++k;
    }
    return k;
}

}

std::vector<long> padic_root::nonzero_positions() const
{
    std::vector<long> out;
    for (size_t k = 0; k < digits.size(); ++k)
        if (digits[k] != 0) out.push_back((long)k);
    return out;
}

bigint padic_root::truncation(long n) const
{
    auto pos = nonzero_positions();
    if (n > (long)pos.size())
        fail(error_kind::precision_exhausted, "only " + std::to_string(pos.size()) + " nonzero digits known at precision " + std::to_string(precision));
    bigint s = 0;
    for (long k = 0; k < n; ++k) s += digits[pos[k]] * ipow(p, pos[k]);
    return s;
}

padic_root series_hensel_root(unsigned p, long P)
{
    if (P <= 0) fail(error_kind::precondition_violated, "precision must be positive");
    if (!is_prime(p) || p % 4 != 1) fail(error_kind::no_root, "x^2+1 has no root in Q_" + std::to_string(p));
    bigint r = 0;
    for (unsigned x = 1; x < p; ++x)
        if ((bigint(x) * x + 1) % p == 0) {
            r = x;
            break;
        }
    long k = 1;
    while (k < P) {
        k = std::min(2 * k, P);
        bigint m = ipow(p, k);
        r = mod(r - (r * r + 1) * inv_mod(2 * r, m), m);
    }
    padic_root out;
    out.p = p;
    out.precision = P;
    out.value = r;
    bigint x = r;
    for (long j = 0; j < P; ++j) {
        out.digits.push_back((int)bigint(x % p).get_si());
        x /= p;
    }
    return out;
}

std::vector<rat> series_sqrt(long T)
{
    std::vector<rat> j;
    rat c = 1;
    for (long n = 0; n < T; ++n) {
        j.push_back(c);
        c = c * (rat(1, 2) - n) / (n + 1);
    }
    return j;
}

quartic_elem quartic_elem::scalar(qt_func a)
{
    quartic_elem x;
    x.c[0] = std::move(a);
    return x;
}

quartic_elem quartic_elem::i()
{
    quartic_elem x;
    x.c[1] = qt_func(1);
    return x;
}

quartic_elem quartic_elem::alpha()
{
    quartic_elem x;
    x.c[2] = qt_func(1);
    return x;
}

bool quartic_elem::is_zero() const
{
    return c[0].is_zero() && c[1].is_zero() && c[2].is_zero() && c[3].is_zero();
}

quartic_elem quartic_elem::operator+(quartic_elem const& o) const
{
    quartic_elem r;
    for (int k = 0; k < 4; ++k) r.c[k] = c[k] + o.c[k];
    return r;
}

quartic_elem quartic_elem::operator-(quartic_elem const& o) const
{
    quartic_elem r;
    for (int k = 0; k < 4; ++k) r.c[k] = c[k] - o.c[k];
    return r;
}

namespace {

// Gaussian-style arithmetic in Q(t)(i)
struct ki {
    qt_func a, b;
    ki operator+(ki const& o) const { return {a + o.a, b + o.b}; }
    ki operator-(ki const& o) const { return {a - o.a, b - o.b}; }
    ki operator*(ki const& o) const { return {a * o.a - b * o.b, a * o.b + b * o.a}; }
    ki operator*(qt_func const& s) const { return {a * s, b * s}; }
};

}

quartic_elem quartic_elem::operator*(quartic_elem const& o) const
{
    ki A1{c[0], c[1]}, B1{c[2], c[3]}, A2{o.c[0], o.c[1]}, B2{o.c[2], o.c[3]};
    qt_func s(polynomial<rat>({rat(1), rat(1)}));
    ki A = A1 * A2 + B1 * B2 * s;
    ki B = A1 * B2 + A2 * B1;
    quartic_elem r;
    r.c[0] = A.a;
    r.c[1] = A.b;
    r.c[2] = B.a;
    r.c[3] = B.b;
    return r;
}

quartic_elem quartic_elem::inverse() const
{
    if (is_zero()) fail(error_kind::precondition_violated, "inverse of zero");
    ki A{c[0], c[1]}, B{c[2], c[3]};
    qt_func s(polynomial<rat>({rat(1), rat(1)}));
    ki N = A * A - B * B * s;
    qt_func n2 = N.a * N.a + N.b * N.b;
    ki Ninv{N.a / n2, qt_func(0) - N.b / n2};
    ki Ai = A * Ninv, Bi = B * Ninv;
    quartic_elem r;
    r.c[0] = Ai.a;
    r.c[1] = Ai.b;
    r.c[2] = qt_func(0) - Bi.a;
    r.c[3] = qt_func(0) - Bi.b;
    return r;
}

quartic_elem quartic_elem::pow(long k) const
{
    quartic_elem base = k < 0 ? inverse() : *this;
    quartic_elem r = scalar(qt_func(1));
    for (long j = 0; j < std::abs(k); ++j) r = r * base;
    return r;
}

bool quartic_elem::operator==(quartic_elem const& o) const
{
    for (int k = 0; k < 4; ++k)
        if (!(c[k] == o.c[k])) return false;
    return true;
}

std::string quartic_elem::str() const
{
    static const char* basis[4] = {"", "i", "alpha", "i*alpha"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
        if (c[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = c[k].str();
        if (k == 0) out += cs;
        else if (cs == "1") out += basis[k];
        else out += "(" + cs + ")*" + basis[k];
    }
    return out.empty() ? "0" : out;
}

series_oracle::series_oracle(unsigned p, long T, long P)
    : p_(p), T_(T), P_(P), i_(series_hensel_root(p, P)), alpha_(series_sqrt(T))
{
    if (T <= 0) fail(error_kind::precondition_violated, "t-precision must be positive");
}

group_value series_oracle::value(quartic_elem const& x) const
{
    if (x.is_zero()) return group_value::infinity(2);
    long o = 0;
    bool first = true;
    for (auto const& c : x.c)
        if (!c.is_zero()) {
            o = first ? c.ord_t() : std::min(o, c.ord_t());
            first = false;
        }
    if (o >= T_) fail(error_kind::precision_exhausted, "t-precision " + std::to_string(T_) + " below the order of the coefficients");
    long n = T_ - o;
    // coefficient windows t^o .. t^(T-1)
    auto window = [&](qt_func const& c) {
        std::vector<rat> w(n);
        if (c.is_zero()) return w;
        long oc;
        long len = T_ - c.ord_t();
        if (len <= 0) return w;
        auto l = c.laurent(oc, (int)len);
        for (long k = 0; k < len; ++k) w[oc - o + k] = l[k];
        return w;
    };
    auto times_alpha = [&](std::vector<rat> const& w) {
        std::vector<rat> r(n);
        for (long k = 0; k < n; ++k)
            for (long j = 0; j <= k && j < (long)alpha_.size(); ++j) r[k] += alpha_[j] * w[k - j];
        return r;
    };
    auto w0 = window(x.c[0]), w1 = window(x.c[1]), w2 = times_alpha(window(x.c[2])), w3 = times_alpha(window(x.c[3]));
    for (long k = 0; k < n; ++k) {
        rat a = w0[k] + w2[k], b = w1[k] + w3[k];
        if (a == 0 && b == 0) continue;
        rat m = o + k;
        if (b == 0) return group_value::rank2(m, ord_p(a, p_));
        long w = ord_p(b, p_);
        rat r = -a / b;
        if (r != 0 && ord_p(r, p_) < 0) return group_value::rank2(m, w + ord_p(r, p_));
        bigint pm = ipow(p_, P_);
        bigint rm = r == 0 ? bigint(0) : mod(bigint(r.get_num()) * inv_mod(bigint(r.get_den()), pm), pm);
        bigint diff = mod(i_.value - rm, pm);
        if (diff == 0)
            fail(error_kind::precision_exhausted, "p-adic precision " + std::to_string(P_) + " does not separate the coefficient of t^" + m.get_str() + " from zero");
        return group_value::rank2(m, w + ord_of(diff, p_));
    }
    fail(error_kind::precision_exhausted, "all coefficients below t^" + std::to_string(T_) + " vanish; increase the t-precision");
}

quartic_elem series_oracle::parse(std::string const& s) const
{
    expr_ops<quartic_elem> ops;
    ops.number = [](bigint const& n) { return quartic_elem::scalar(qt_func(rat(n))); };
    ops.variable = [this](std::string const& name) {
        if (name == "t") return quartic_elem::scalar(qt_func::t());
        if (name == "i") return quartic_elem::i();
        if (name == "alpha") return quartic_elem::alpha();
        if (name == "theta") return theta();
        if (name.size() > 2 && (name[0] == 'a' || name[0] == 'b') && name[1] == '_' &&
            std::all_of(name.begin() + 2, name.end(), [](char ch) { return std::isdigit((unsigned char)ch); })) {
            long k = std::stol(name.substr(2));
            if (name[0] == 'a') return quartic_elem::scalar(qt_func(rat(i_.truncation(k))));
            if (k > (long)alpha_.size()) fail(error_kind::precision_exhausted, name + " needs t-precision " + std::to_string(k));
            std::vector<rat> c(alpha_.begin(), alpha_.begin() + k);
            return quartic_elem::scalar(qt_func(polynomial<rat>(c)));
        }
        fail(error_kind::parse, "unknown symbol " + name);
    };
    ops.divide = [](quartic_elem const& a, quartic_elem const& b) {
        if (b.is_zero()) fail(error_kind::parse, "division by zero");
        return a * b.inverse();
    };
    ops.power = [](quartic_elem const& a, rat const& e) {
        if (!is_integer(e)) fail(error_kind::parse, "fractional exponent");
        return a.pow(e.get_num().get_si());
    };
    return parse_expr(s, ops);
}

cut distance_cut(distance_set const& d, bool own_degree)
{
    if (own_degree) return cut::plus_infinity_minus(d.rank);
    return cut_from_set(d, cut_mode::plus);
}

std::vector<std::string> okutsu_family::sample() const
{
    std::vector<std::string> out = elements;
    for (long n = first; n < first + samples; ++n) {
        std::string s = generator;
        for (size_t pos; (pos = s.find("{n}")) != std::string::npos;) s.replace(pos, 3, std::to_string(n));
        out.push_back(s);
    }
    return out;
}

okutsu_report verify_okutsu_sequence(distance_fn const& dist, okutsu_sequence const& seq, std::vector<okutsu_challenger> const& challengers)
{
    okutsu_report rep;
    rep.scope = "checked against the sampled family members, the listed challengers and the caller's max-existence declarations";
    auto add = [&rep](std::string name, bool pass, std::string detail) {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
        if (!pass) rep.pass = false;
    };
    auto const& F = seq.families;
    if (F.empty()) {
        add("nonempty", false, "no families");
        return rep;
    }
    int r = (int)F.size() - 1;

    bool deg_ok = F[0].degree == 1;
    std::string degs;
    for (int l = 0; l <= r; ++l) {
        if (l > 0 && F[l].degree <= F[l - 1].degree) deg_ok = false;
        degs += (l ? "," : "") + std::to_string(F[l].degree);
    }
    add("degrees", deg_ok, "m = [" + degs + "]");

    for (auto const& f : F) {
        std::vector<std::pair<std::string, group_value>> vals;
        for (auto const& s : f.sample()) vals.push_back({s, dist(s)});
        rep.sampled.push_back(std::move(vals));
    }
    auto const& last = rep.sampled.back();
    add("last family is theta", last.size() == 1 && last[0].second.is_infinite(),
        last.empty() ? "empty" : last[0].first + " at distance " + last[0].second.str());

    auto max_of = [](std::vector<std::pair<std::string, group_value>> const& v) {
        size_t best = 0;
        for (size_t k = 1; k < v.size(); ++k)
            if (v[k].second > v[best].second) best = k;
        return best;
    };
    for (int l = 0; l < r; ++l) {
        auto const& A = rep.sampled[l];
        std::string L = "[" + std::to_string(l) + "]";
        if (A.empty()) {
            add("sampled" + L, false, "empty family");
            continue;
        }
        if (F[l].max_declared) add("OS1" + L, A.size() == 1, std::to_string(A.size()) + " element(s) with a declared maximum");
        bool inc = true;
        for (size_t k = 1; k < A.size(); ++k)
            if (!(A[k - 1].second < A[k].second)) inc = false;
        if (A.size() > 1) add("OS2" + L, inc, inc ? "distances increase along the sample" : "distances not increasing");
        auto const& Bn = rep.sampled[l + 1];
        if (!Bn.empty()) {
            auto hi = A[max_of(A)].second;
            group_value lo = Bn[0].second;
            for (auto const& x : Bn)
                if (x.second < lo) lo = x.second;
            add("OS3" + L, hi < lo, "max " + hi.str() + " < min " + lo.str());
        }
        for (auto const& c : challengers) {
            if (c.degree >= F[l + 1].degree) continue;
            auto d = dist(c.element);
            auto best = A[max_of(A)];
            bool ok = !(best.second < d);
            add("OS0" + L + " " + c.element, ok,
                "distance " + d.str() + (ok ? " <= " : " > ") + best.second.str() + " of " + best.first);
        }
    }
    return rep;
}

okutsu_depth okutsu_depth_and_kinds(okutsu_sequence const& seq)
{
    okutsu_depth d;
    d.r = seq.families.empty() ? 0 : (int)seq.families.size() - 1;
    for (int l = 0; l < d.r; ++l) d.kinds.push_back(seq.families[l].max_declared ? "ordinary" : "limit");
    return d;
}

bool ball_degree_witness(distance_fn const& dist, group_value const& delta, std::string const& b)
{
    return !(dist(b) < delta);
}

}
