#include "mlv/basefield.hpp"
#include "mlv/expr.hpp"

namespace mlv {

qt_func::qt_func(polynomial<rat> n, polynomial<rat> d) : num_(std::move(n)), den_(std::move(d))
{
    normalize();
}

qt_func qt_func::t() { return qt_func(polynomial<rat>({rat(0), rat(1)})); }

void qt_func::normalize()
{
    if (num_.is_zero()) {
        den_ = {};
        return;
    }
    if (den_.is_zero()) return;
    auto g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = divrem(num_, g).first;
        den_ = divrem(den_, g).first;
    }
    rat lc = den_.lc();
    if (lc != 1) {
        num_ = num_.scaled(rat(1 / lc));
        den_ = den_.scaled(rat(1 / lc));
    }
    if (den_.degree() == 0) den_ = {};
}

long qt_func::ord_t() const
{
    if (is_zero()) fail(error_kind::precondition_violated, "order of zero");
    auto low = [](polynomial<rat> const& f) {
        long i = 0;
        while (f.coeffs()[i] == 0) ++i;
        return i;
    };
    return low(num_) - (den_.is_zero() ? 0 : low(den_));
}

rat qt_func::initial() const
{
    auto low = [](polynomial<rat> const& f) {
        size_t i = 0;
        while (f.coeffs()[i] == 0) ++i;
        return f.coeffs()[i];
    };
    return den_.is_zero() ? low(num_) : rat(low(num_) / low(den_));
}

qt_func qt_func::operator+(qt_func const& o) const
{
    if (den_.is_zero() && o.den_.is_zero()) return qt_func(num_ + o.num_);
    return qt_func(num_ * o.den() + o.num_ * den(), den() * o.den());
}

qt_func qt_func::operator-() const
{
    qt_func r = *this;
    r.num_ = -r.num_;
    return r;
}

qt_func qt_func::operator-(qt_func const& o) const { return *this + (-o); }

qt_func qt_func::operator*(qt_func const& o) const
{
    if (den_.is_zero() && o.den_.is_zero()) return qt_func(num_ * o.num_);
    return qt_func(num_ * o.num_, den() * o.den());
}

qt_func qt_func::operator*(long k) const { return qt_func(num_.scaled(rat(k)), den_); }

qt_func qt_func::operator/(qt_func const& o) const
{
    if (o.is_zero()) fail(error_kind::precondition_violated, "division by zero in Q(t)");
    return qt_func(num_ * o.den(), den() * o.num_);
}

std::vector<rat> qt_func::laurent(long& ord, int n) const
{
    std::vector<rat> c(n);
    if (is_zero()) {
        ord = 0;
        return c;
    }
    ord = ord_t();
    auto strip = [](polynomial<rat> const& f) {
        size_t i = 0;
        while (f.coeffs()[i] == 0) ++i;
        return std::vector<rat>(f.coeffs().begin() + i, f.coeffs().end());
    };
    auto N = strip(num_), D = strip(den());
    for (int k = 0; k < n; ++k) {
        rat acc = k < (int)N.size() ? N[k] : rat(0);
        for (int j = 1; j <= k && j < (int)D.size(); ++j) acc -= D[j] * c[k - j];
        c[k] = acc / D[0];
    }
    return c;
}

std::string qt_func::str() const
{
    auto fmt = std::function<std::string(rat const&)>([](rat const& q) { return to_string(q); });
    if (den_.is_zero()) return poly_to_string(num_, fmt, "t");
    return "(" + poly_to_string(num_, fmt, "t") + ")/(" + poly_to_string(den_, fmt, "t") + ")";
}

namespace {

long integral(rat const& q, char const* what)
{
    if (!is_integer(q)) fail(error_kind::not_in_unit_group, std::string(what) + " outside the value group of the base field");
    return q.get_num().get_si();
}

template <class E>
E checked_div(E const& a, E const& b)
{
    if (b == E{}) fail(error_kind::parse, "division by zero");
    return a / b;
}

}

group_value qpadic_field::val(rat const& a) const
{
    if (a == 0) return group_value::infinity(1);
    return group_value::rank1(rat(ord_p(a, p)));
}

rat qpadic_field::section(group_value const& g) const
{
    long m = integral(g.first(), "value");
    bigint pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), p, (unsigned long)std::labs(m));
    return m >= 0 ? rat(pm) : rat(1, 1) / rat(pm);
}

ff_elem qpadic_field::residue(rat const& a) const
{
    auto F = finite_field::prime((unsigned)p);
    if (a == 0) return ff_elem::from_int(F, 0);
    long v = ord_p(a, p);
    if (v < 0) fail(error_kind::negative_value, "residue of an element of negative value");
    if (v > 0) return ff_elem::from_int(F, 0);
    return ff_elem::from_int(F, (long)mod_p(a, p));
}

rat qpadic_field::lift(ff_elem const& r) const { return rat((long)r.coord(0)); }

rat qpadic_field::parse(std::string const& s) const
{
    expr_ops<rat> ops;
    ops.number = [](bigint const& z) { return rat(z); };
    ops.variable = [](std::string const& v) -> rat { fail(error_kind::parse, "unexpected variable '" + v + "' in a rational"); };
    ops.divide = [](rat const& a, rat const& b) { return checked_div(a, b); };
    ops.power = [](rat const& b, rat const& e) {
        long k = integral(e, "exponent");
        rat r = 1;
        for (long i = 0; i < std::labs(k); ++i) r *= b;
        if (k < 0) r = checked_div(rat(1), r);
        return r;
    };
    return parse_expr(s, ops);
}

std::string qpadic_field::str(rat const& a) const { return to_string(a); }

group_value fp_rft_field::val(mratfunc const& a) const
{
    if (a.is_zero()) return group_value::infinity(1);
    int ti = nv() - 1;
    expo o = a.num().min_degree(ti);
    if (!a.is_polynomial()) o -= a.den().min_degree(ti);
    return group_value::rank1(rat(o.numerator(), o.denominator()));
}

mratfunc fp_rft_field::section(group_value const& g) const
{
    long m = integral(g.first(), "value");
    expvec e(nv(), expo(0));
    e.back() = m;
    return mratfunc(mpoly::monomial((unsigned)p, e));
}

mratfunc fp_rft_field::residue(mratfunc const& a) const
{
    int ti = nv() - 1;
    if (a.is_zero()) return mratfunc::constant((unsigned)p, nv() - 1, 0);
    auto v = val(a);
    if (v.first() < 0) fail(error_kind::negative_value, "residue of an element of negative value");
    if (v.first() > 0) return mratfunc::constant((unsigned)p, nv() - 1, 0);
    expo o;
    mpoly n = a.num().lowest_part(ti, o);
    if (a.is_polynomial()) return mratfunc(n);
    mpoly d = a.den().lowest_part(ti, o);
    return mratfunc(n, d);
}

mratfunc fp_rft_field::lift(mratfunc const& r) const
{
    if (r.is_zero()) return from_int(0);
    if (r.is_polynomial()) return mratfunc(r.num().add_var());
    return mratfunc(r.num().add_var(), r.den().add_var());
}

mratfunc fp_rft_field::var(std::string const& name) const
{
    if (name == "t") return mratfunc(mpoly::variable((unsigned)p, nv(), nv() - 1));
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return mratfunc(mpoly::variable((unsigned)p, nv(), (int)i));
    fail(error_kind::parse, "unknown variable '" + name + "'");
}

namespace {

mratfunc mrat_power(mratfunc const& b, rat const& e)
{
    if (is_integer(e)) return b.pow(e.get_num().get_si());
    if (!b.is_monomial()) fail(error_kind::parse, "fractional power of a non-monomial");
    auto [ex, c] = b.num().leading_term();
    if (c != 1) fail(error_kind::parse, "fractional power of a monomial with a coefficient");
    expo f(e.get_num().get_si(), e.get_den().get_si());
    for (auto& x : ex) x *= f;
    return mratfunc(mpoly::monomial(b.p(), ex));
}

}

mratfunc fp_rft_field::parse(std::string const& s) const
{
    expr_ops<mratfunc> ops;
    ops.number = [this](bigint const& z) { return from_int(mpz_fdiv_ui(z.get_mpz_t(), p)); };
    ops.variable = [this](std::string const& v) { return var(v); };
    ops.divide = [](mratfunc const& a, mratfunc const& b) { return checked_div(a, b); };
    ops.power = [](mratfunc const& b, rat const& e) { return mrat_power(b, e); };
    auto r = parse_expr(s, ops);
    if (!is_integer(val(r).is_infinite() ? rat(0) : val(r).first())) fail(error_kind::parse, "fractional t-exponent");
    return r;
}

mratfunc fp_rft_field::parse_residue(std::string const& s) const
{
    int k = (int)names.size();
    expr_ops<mratfunc> ops;
    ops.number = [this, k](bigint const& z) { return mratfunc::constant((unsigned)p, k, mpz_fdiv_ui(z.get_mpz_t(), p)); };
    ops.variable = [this, k](std::string const& v) {
        for (int i = 0; i < k; ++i)
            if (names[i] == v) return mratfunc(mpoly::variable((unsigned)p, k, i));
        fail(error_kind::parse, "unknown residue variable '" + v + "'");
    };
    ops.divide = [](mratfunc const& a, mratfunc const& b) { return checked_div(a, b); };
    ops.power = [](mratfunc const& b, rat const& e) { return mrat_power(b, e); };
    return parse_expr(s, ops);
}

std::string fp_rft_field::str(mratfunc const& a) const
{
    auto n = names;
    n.push_back("t");
    return a.str(n);
}

group_value qt_rank2_field::val(qt_func const& a) const
{
    if (a.is_zero()) return group_value::infinity(2);
    return group_value::rank2(rat(a.ord_t()), rat(ord_p(a.initial(), p)));
}

qt_func qt_rank2_field::section(group_value const& g) const
{
    long m = integral(g.first(), "value");
    long n = integral(g.second(), "value");
    qt_func r = qpadic_field{p}.section(group_value::rank1(rat(n)));
    qt_func tm = m >= 0 ? qt_func(polynomial<rat>::monomial(rat(1), (int)m))
                        : qt_func(polynomial<rat>::constant(1), polynomial<rat>::monomial(rat(1), (int)-m));
    return r * tm;
}

ff_elem qt_rank2_field::residue(qt_func const& a) const
{
    auto F = finite_field::prime((unsigned)p);
    if (a.is_zero()) return ff_elem::from_int(F, 0);
    auto v = val(a);
    if (v < group_value::zero(2)) fail(error_kind::negative_value, "residue of an element of negative value");
    if (v > group_value::zero(2)) return ff_elem::from_int(F, 0);
    return ff_elem::from_int(F, (long)mod_p(a.initial(), p));
}

qt_func qt_rank2_field::lift(ff_elem const& r) const { return qt_func((long)r.coord(0)); }

qt_func qt_rank2_field::parse(std::string const& s) const
{
    expr_ops<qt_func> ops;
    ops.number = [](bigint const& z) { return qt_func(rat(z)); };
    ops.variable = [](std::string const& v) {
        if (v != "t") fail(error_kind::parse, "unknown variable '" + v + "' (expected t)");
        return qt_func::t();
    };
    ops.divide = [](qt_func const& a, qt_func const& b) { return checked_div(a, b); };
    ops.power = [](qt_func const& b, rat const& e) {
        long k = integral(e, "exponent");
        qt_func r(1);
        for (long i = 0; i < std::labs(k); ++i) r = r * b;
        if (k < 0) r = checked_div(qt_func(1), r);
        return r;
    };
    return parse_expr(s, ops);
}

}
