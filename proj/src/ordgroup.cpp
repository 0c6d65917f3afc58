#include "mlv/ordgroup.hpp"
#include "mlv/error.hpp"

#include <algorithm>
#include <numeric>

namespace mlv {

group_value group_value::rank1(rat a)
{
    group_value g;
    g.rank_ = 1;
    g.a_ = std::move(a);
    return g;
}

group_value group_value::rank2(rat a, rat b)
{
    group_value g;
    g.rank_ = 2;
    g.a_ = std::move(a);
    g.b_ = std::move(b);
    return g;
}

group_value group_value::infinity(int rank)
{
    group_value g;
    g.rank_ = rank;
    g.inf_ = true;
    return g;
}

group_value group_value::zero(int rank) { return rank == 2 ? rank2(0, 0) : rank1(0); }

group_value group_value::from_coords(std::vector<rat> const& c)
{
    if (c.size() == 1) return rank1(c[0]);
    if (c.size() == 2) return rank2(c[0], c[1]);
    fail(error_kind::precondition_violated, "value groups have rank 1 or 2");
}

std::vector<rat> group_value::coords() const
{
    if (inf_) fail(error_kind::precondition_violated, "coordinates of infinity");
    if (rank_ == 1) return {a_};
    return {a_, b_};
}

static void check_rank(group_value const& x, group_value const& y)
{
    if (x.is_finite() && y.is_finite() && x.rank() != y.rank())
        fail(error_kind::mixed_rank, x.str() + " vs " + y.str());
}

group_value group_value::operator+(group_value const& o) const
{
    check_rank(*this, o);
    if (inf_ || o.inf_) return infinity(std::max(rank_, o.rank_));
    group_value r = *this;
    r.a_ += o.a_;
    r.b_ += o.b_;
    return r;
}

group_value group_value::operator-() const
{
    if (inf_) fail(error_kind::precondition_violated, "negation of infinity");
    group_value r = *this;
    r.a_ = -a_;
    r.b_ = -b_;
    return r;
}

group_value group_value::operator-(group_value const& o) const { return *this + (-o); }

group_value group_value::operator*(long k) const { return *this * rat(k); }

group_value group_value::operator*(rat const& k) const
{
    if (inf_) {
        if (k > 0) return *this;
        fail(error_kind::precondition_violated, "nonpositive multiple of infinity");
    }
    group_value r = *this;
    r.a_ *= k;
    r.b_ *= k;
    return r;
}

group_value group_value::operator/(long k) const
{
    if (k <= 0) fail(error_kind::precondition_violated, "division by nonpositive integer");
    return *this * rat(1, k);
}

std::strong_ordering group_value::operator<=>(group_value const& o) const
{
    check_rank(*this, o);
    if (inf_ || o.inf_) {
        if (inf_ && o.inf_) return std::strong_ordering::equal;
        return inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    int c = cmp(a_, o.a_);
    if (c == 0) c = cmp(b_, o.b_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string group_value::str() const
{
    if (inf_) return "inf";
    if (rank_ == 1) return to_string(a_);
    return "(" + to_string(a_) + ", " + to_string(b_) + ")";
}

group_value group_value::parse(std::string const& s0, int rank_hint)
{
    std::string s;
    for (char c : s0)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s == "inf" || s == "Infinity" || s == "∞") return infinity(rank_hint ? rank_hint : 1);
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') fail(error_kind::parse, "bad value '" + s0 + "'");
        auto comma = s.find(',');
        if (comma == std::string::npos) fail(error_kind::parse, "bad value '" + s0 + "'");
        auto g = rank2(parse_rational(s.substr(1, comma - 1)), parse_rational(s.substr(comma + 1, s.size() - comma - 2)));
        if (rank_hint == 1) fail(error_kind::mixed_rank, "rank-2 value where rank 1 expected");
        return g;
    }
    if (rank_hint == 2) fail(error_kind::mixed_rank, "rank-1 value where rank 2 expected");
    return rank1(parse_rational(s));
}

group_value min(group_value const& a, group_value const& b) { return b < a ? b : a; }

/* ---- lattices ---- */

namespace {

/* Row echelon form over Z using gcd row operations. */
std::vector<std::vector<bigint>> hermite(std::vector<std::vector<bigint>> m, int dim)
{
    std::vector<std::vector<bigint>> out;
    for (int col = 0; col < dim; ++col) {
        /* collapse column col among remaining rows into a single pivot row */
        for (;;) {
            int piv = -1;
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i][col] != 0 && (piv < 0 || abs(m[i][col]) < abs(m[piv][col]))) piv = (int)i;
            if (piv < 0) break;
            bool done = true;
            for (size_t i = 0; i < m.size(); ++i) {
                if ((int)i == piv || m[i][col] == 0) continue;
                bigint q = floor_div(m[i][col], m[piv][col]);
                for (int c = 0; c < dim; ++c) m[i][c] -= q * m[piv][c];
                if (m[i][col] != 0) done = false;
            }
            if (done) {
                if (m[piv][col] < 0)
                    for (auto& x : m[piv]) x = -x;
                out.push_back(m[piv]);
                m.erase(m.begin() + piv);
                break;
            }
        }
        if ((int)out.size() != col + 1) fail(error_kind::precondition_violated, "lattice is not of full rank");
    }
    /* reduce entries above pivots */
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < i; ++k) {
            bigint q = floor_div(out[k][i], out[i][i]);
            for (int c = 0; c < dim; ++c) out[k][c] -= q * out[i][c];
        }
    return out;
}

}

rational_lattice rational_lattice::standard(int n)
{
    std::vector<std::vector<rat>> gens;
    for (int i = 0; i < n; ++i) {
        std::vector<rat> e(n, rat(0));
        e[i] = 1;
        gens.push_back(e);
    }
    rational_lattice l;
    l.dim_ = n;
    l.rebuild(gens);
    return l;
}

void rational_lattice::rebuild(std::vector<std::vector<rat>> const& gens)
{
    bigint d = 1;
    for (auto const& g : gens)
        for (auto const& x : g) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    std::vector<std::vector<bigint>> m;
    for (auto const& g : gens) {
        std::vector<bigint> row;
        for (auto const& x : g) row.push_back(x.get_num() * (d / x.get_den()));
        m.push_back(row);
    }
    den_ = d;
    rows_ = hermite(m, dim_);
}

std::vector<std::vector<rat>> rational_lattice::basis() const
{
    std::vector<std::vector<rat>> b;
    for (auto const& r : rows_) {
        std::vector<rat> v;
        for (auto const& x : r) {
            rat q(x, den_);
            q.canonicalize();
            v.push_back(q);
        }
        b.push_back(v);
    }
    return b;
}

bool rational_lattice::contains(std::vector<rat> const& v) const
{
    if ((int)v.size() != dim_) fail(error_kind::mixed_rank, "lattice dimension mismatch");
    std::vector<bigint> w;
    for (auto const& x : v) {
        rat y = x * den_;
        if (y.get_den() != 1) return false;
        w.push_back(y.get_num());
    }
    for (int i = 0; i < dim_; ++i) {
        if (w[i] % rows_[i][i] != 0) return false;
        bigint q = w[i] / rows_[i][i];
        for (int c = 0; c < dim_; ++c) w[c] -= q * rows_[i][c];
    }
    return true;
}

rational_lattice rational_lattice::with(std::vector<rat> const& v) const
{
    auto gens = basis();
    gens.push_back(v);
    rational_lattice l;
    l.dim_ = dim_;
    l.rebuild(gens);
    return l;
}

long rational_lattice::order_of(std::vector<rat> const& v) const
{
    std::vector<rat> w = v;
    for (long k = 1; k <= 1000000; ++k) {
        if (contains(w)) return k;
        for (size_t i = 0; i < w.size(); ++i) w[i] += v[i];
    }
    fail(error_kind::precondition_violated, "element has no finite order modulo the lattice");
}

/* ---- cuts ---- */

cut cut::minus_infinity(int rank)
{
    cut c;
    c.kind_ = cut_kind::minus_infinity;
    c.rank_ = rank;
    return c;
}

cut cut::plus_infinity_minus(int rank)
{
    cut c;
    c.kind_ = cut_kind::plus_infinity_minus;
    c.rank_ = rank;
    return c;
}

cut cut::plus(group_value const& g)
{
    if (g.is_infinite()) fail(error_kind::precondition_violated, "principal cut at infinity");
    cut c;
    c.kind_ = cut_kind::principal_plus;
    c.rank_ = g.rank();
    c.g_ = g;
    return c;
}

cut cut::minus(group_value const& g)
{
    cut c = plus(g);
    c.kind_ = cut_kind::principal_minus;
    return c;
}

cut cut::level_plus(rat a)
{
    cut c;
    c.kind_ = cut_kind::level_plus;
    c.rank_ = 2;
    c.level_ = std::move(a);
    return c;
}

cut cut::level_minus(rat a)
{
    cut c = level_plus(std::move(a));
    c.kind_ = cut_kind::level_minus;
    return c;
}

bool cut::operator==(cut const& o) const { return rank_ == o.rank_ && cut_compare(*this, o) == 0; }

bool cut::left_contains(group_value const& x) const
{
    if (x.is_infinite()) return false;
    if (x.rank() != rank_) fail(error_kind::mixed_rank, "cut/value rank mismatch");
    switch (kind_) {
    case cut_kind::minus_infinity: return false;
    case cut_kind::plus_infinity_minus: return true;
    case cut_kind::principal_plus: return x <= g_;
    case cut_kind::principal_minus: return x < g_;
    case cut_kind::level_plus: return x.first() <= level_;
    case cut_kind::level_minus: return x.first() < level_;
    }
    return false;
}

std::string cut::str() const
{
    switch (kind_) {
    case cut_kind::minus_infinity: return "-inf";
    case cut_kind::plus_infinity_minus: return "inf^-";
    case cut_kind::principal_plus: return g_.str() + "^+";
    case cut_kind::principal_minus: return g_.str() + "^-";
    case cut_kind::level_plus: return "lvl(" + to_string(level_) + ")^+";
    case cut_kind::level_minus: return "lvl(" + to_string(level_) + ")^-";
    }
    return "?";
}

cut cut::parse(std::string const& s0, int rank_hint)
{
    std::string s;
    for (char c : s0)
        if (!std::isspace((unsigned char)c)) s += c;
    int rk = rank_hint ? rank_hint : 1;
    if (s == "-inf") return minus_infinity(rk);
    if (s == "inf^-") return plus_infinity_minus(rk);
    if (s.size() < 3 || s[s.size() - 2] != '^') fail(error_kind::parse, "bad cut '" + s0 + "'");
    char side = s.back();
    if (side != '+' && side != '-') fail(error_kind::parse, "bad cut '" + s0 + "'");
    std::string body = s.substr(0, s.size() - 2);
    if (body.rfind("lvl(", 0) == 0 && body.back() == ')') {
        if (rank_hint == 1) fail(error_kind::mixed_rank, "level cut in rank 1");
        rat a = parse_rational(body.substr(4, body.size() - 5));
        return side == '+' ? level_plus(a) : level_minus(a);
    }
    auto g = group_value::parse(body, rank_hint);
    return side == '+' ? plus(g) : minus(g);
}

namespace {

struct cut_key {
    int major;      // 0: -inf, 1: proper, 2: inf^-
    rat a;          // first coordinate (rank 2) or 0
    int sub;        // 0: level-, 1: principal, 2: level+
    rat b;          // principal value (second coordinate, or the value in rank 1)
    int side;       // 0: minus, 2: plus
};

cut_key key_of(cut const& c)
{
    cut_key k{1, 0, 1, 0, 0};
    switch (c.kind()) {
    case cut_kind::minus_infinity: k.major = 0; break;
    case cut_kind::plus_infinity_minus: k.major = 2; break;
    case cut_kind::principal_plus:
    case cut_kind::principal_minus:
        if (c.rank() == 2) {
            k.a = c.value().first();
            k.b = c.value().second();
        } else {
            k.b = c.value().first();
        }
        k.side = c.kind() == cut_kind::principal_plus ? 2 : 0;
        break;
    case cut_kind::level_minus: k.a = c.level(); k.sub = 0; break;
    case cut_kind::level_plus: k.a = c.level(); k.sub = 2; break;
    }
    return k;
}

std::strong_ordering ord(int c) { return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal; }

}

std::strong_ordering cut_compare(cut const& x, cut const& y)
{
    if (x.rank() != y.rank()) fail(error_kind::mixed_rank, x.str() + " vs " + y.str());
    auto kx = key_of(x), ky = key_of(y);
    if (kx.major != ky.major) return ord(kx.major - ky.major);
    if (kx.major != 1) return std::strong_ordering::equal;
    if (int c = cmp(kx.a, ky.a)) return ord(c);
    if (kx.sub != ky.sub) return ord(kx.sub - ky.sub);
    if (kx.sub != 1) return std::strong_ordering::equal;
    if (int c = cmp(kx.b, ky.b)) return ord(c);
    return ord(kx.side - ky.side);
}

static bool is_level(cut const& c) { return c.kind() == cut_kind::level_plus || c.kind() == cut_kind::level_minus; }

cut cut_add(cut const& x, cut const& y)
{
    if (x.rank() != y.rank()) fail(error_kind::mixed_rank, x.str() + " + " + y.str());
    int rk = x.rank();
    /* empty left set absorbs everything, including inf^- */
    if (x.kind() == cut_kind::minus_infinity || y.kind() == cut_kind::minus_infinity) return cut::minus_infinity(rk);
    if (x.kind() == cut_kind::plus_infinity_minus || y.kind() == cut_kind::plus_infinity_minus) return cut::plus_infinity_minus(rk);
    if (!is_level(x) && !is_level(y)) {
        auto g = x.value() + y.value();
        bool plus = x.kind() == cut_kind::principal_plus && y.kind() == cut_kind::principal_plus;
        return plus ? cut::plus(g) : cut::minus(g);
    }
    if (is_level(x) && is_level(y)) {
        rat a = x.level() + y.level();
        bool plus = x.kind() == cut_kind::level_plus && y.kind() == cut_kind::level_plus;
        return plus ? cut::level_plus(a) : cut::level_minus(a);
    }
    cut const& lv = is_level(x) ? x : y;
    cut const& pr = is_level(x) ? y : x;
    rat a = lv.level() + pr.value().first();
    return lv.kind() == cut_kind::level_plus ? cut::level_plus(a) : cut::level_minus(a);
}

cut cut_shift(group_value const& gamma, cut const& d) { return cut_add(cut::plus(gamma), d); }

cut cut_from_set(distance_set const& d, cut_mode mode)
{
    using M = distance_set::marker;
    if (d.unbounded == M::irregular) fail(error_kind::unrepresentable_cut, "supremum outside the representable family");
    for (auto const& g : d.finite_values)
        if (g.is_finite() && g.rank() != d.rank) fail(error_kind::mixed_rank, "distance set rank mismatch");
    if (d.unbounded == M::level_unbounded && d.rank != 2)
        fail(error_kind::unrepresentable_cut, "level markers need a rank-2 group");
    std::optional<group_value> mx, mn;
    bool has_inf = false;
    for (auto const& g : d.finite_values) {
        if (g.is_infinite()) {
            has_inf = true;
            continue;
        }
        if (!mx || *mx < g) mx = g;
        if (!mn || g < *mn) mn = g;
    }
    if (mode == cut_mode::plus) {
        if (has_inf || d.unbounded == M::unbounded) return cut::plus_infinity_minus(d.rank);
        if (d.unbounded == M::level_unbounded) {
            if (mx && mx->first() > d.level) return cut::plus(*mx);
            return cut::level_plus(d.level);
        }
        if (!mx) return cut::minus_infinity(d.rank);
        return cut::plus(*mx);
    }
    if (!mn) {
        if (d.unbounded == M::none && !has_inf) return cut::plus_infinity_minus(d.rank);   // gamma < empty set holds everywhere
        fail(error_kind::unrepresentable_cut, "infimum of an unbounded family without finite samples");
    }
    if (d.unbounded == M::level_unbounded && mn->first() > d.level)
        fail(error_kind::unrepresentable_cut, "infimum of a level family below the finite samples is unknown");
    return cut::minus(*mn);
}

}
