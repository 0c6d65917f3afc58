#ifndef MLV_OKUTSU_HPP
#define MLV_OKUTSU_HPP

#include "mlv/basefield.hpp"
#include "mlv/expr.hpp"
#include "mlv/mlv.hpp"
#include "mlv/ordgroup.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mlv {

/* ---- p-adic square root of -1 and the binomial series of sqrt(1+t) ---- */

struct padic_root {
    unsigned p = 0;
    long precision = 0;
    bigint value;               // residue mod p^precision, in [0, p^precision)
    std::vector<int> digits;    // base-p digits, least significant first

    /* positions of the nonzero digits: l_0 = 0, l_1, l_2, ... */
    std::vector<long> nonzero_positions() const;
    /* sum of the first n nonzero digit terms */
    bigint truncation(long n) const;
};

padic_root series_hensel_root(unsigned p, long P);

/* coefficients j_0..j_{T-1} of sqrt(1+t) */
std::vector<rat> series_sqrt(long T);

/* ---- the quartic field Q(t)(i, alpha), alpha^2 = 1 + t ---- */

/* c[0] + c[1] i + c[2] alpha + c[3] i alpha */
struct quartic_elem {
    qt_func c[4];

    static quartic_elem scalar(qt_func a);
    static quartic_elem i();
    static quartic_elem alpha();
    bool is_zero() const;
    bool is_scalar() const { return c[1].is_zero() && c[2].is_zero() && c[3].is_zero(); }

    quartic_elem operator+(quartic_elem const& o) const;
    quartic_elem operator-(quartic_elem const& o) const;
    quartic_elem operator*(quartic_elem const& o) const;
    quartic_elem inverse() const;
    quartic_elem pow(long k) const;
    bool operator==(quartic_elem const& o) const;
    std::string str() const;
};

/* theta = alpha + i, embedded in Q_p((t)) through the Hensel root of x^2+1.
 * Coefficients of t^m are exact in Q(i); only ord_p of a + b i needs the
 * p-adic digits, so precision P bounds that comparison and T bounds m. */
class series_oracle {
    unsigned p_;
    long T_, P_;
    padic_root i_;
    std::vector<rat> alpha_;
public:
    series_oracle(unsigned p, long T, long P);
    unsigned p() const { return p_; }
    long t_precision() const { return T_; }
    long p_precision() const { return P_; }
    padic_root const& root() const { return i_; }
    std::vector<rat> const& alpha_series() const { return alpha_; }

    quartic_elem theta() const { return quartic_elem::alpha() + quartic_elem::i(); }
    /* throws PrecisionExhausted when the leading term cannot be certified */
    group_value value(quartic_elem const& x) const;
    group_value distance(quartic_elem const& b) const { return value(theta() - b); }

    /* terms over t, i, alpha, theta, a_n (truncations of i) and b_n (of alpha) */
    quartic_elem parse(std::string const& s) const;
    group_value distance(std::string const& s) const { return distance(parse(s)); }
};

/* ---- exact oracle from a complete chain: v(theta - b) = v_theta(x - b(x)) ---- */

template <class B>
class chain_oracle {
    mlv_chain<B> chain_;
public:
    using elem = typename B::elem;
    using epoly = polynomial<elem>;

    explicit chain_oracle(mlv_chain<B> c) : chain_(std::move(c))
    {
        if (!chain_.v.terminal()) fail(error_kind::precondition_violated, "chain oracle needs a complete chain");
    }
    mlv_chain<B> const& chain() const { return chain_; }
    epoly const& g() const { return chain_.v.key(); }
    epoly reduce(epoly const& a) const { return divrem_monic(a, g()).second; }
    epoly inverse(epoly const& a) const
    {
        auto [d, s] = poly_half_xgcd(reduce(a), g());
        if (d.degree() != 0) fail(error_kind::precondition_violated, "element is not invertible modulo g");
        return reduce(s);
    }
    group_value distance(epoly const& b) const
    {
        auto one = chain_.v.one();
        return chain_.v.evaluate(reduce(epoly::monomial(one, 1) - b));
    }
    /* polynomial expressions in x (or theta) over K */
    epoly parse(std::string const& s) const
    {
        auto const& K = chain_.v.field();
        auto one = K.from_int(1);
        expr_ops<epoly> ops;
        ops.number = [&K](bigint const& n) { return epoly::constant(K.parse(n.get_str())); };
        ops.variable = [&K, one](std::string const& name) {
            if (name == "x" || name == "theta") return epoly::monomial(one, 1);
            return epoly::constant(K.parse(name));
        };
        ops.divide = [this](epoly const& a, epoly const& b) {
            if (b.is_zero()) fail(error_kind::parse, "division by zero");
            if (b.degree() == 0) return a.scaled(b.lc() / b.lc() / b.lc());
            return reduce(a * inverse(b));
        };
        ops.power = [this, one](epoly const& a, rat const& e) {
            if (!is_integer(e)) fail(error_kind::parse, "fractional exponent");
            long k = e.get_num().get_si();
            epoly base = k < 0 ? inverse(a) : a;
            epoly r = epoly::constant(one);
            for (long j = 0; j < std::abs(k); ++j) r = reduce(r * base);
            return r;
        };
        return reduce(parse_expr(s, ops));
    }
    group_value distance(std::string const& s) const { return distance(parse(s)); }
};

/* ---- distance cuts and Okutsu sequences ---- */

cut distance_cut(distance_set const& d, bool own_degree);

struct okutsu_family {
    int degree = 1;
    std::vector<std::string> elements;
    std::string generator;      // template with {n} replaced by the index
    long first = 1, samples = 0;
    bool max_declared = false;  // caller asserts max(D_m) exists
    /* expand to the sampled element descriptions */
    std::vector<std::string> sample() const;
};

struct okutsu_sequence {
    std::vector<okutsu_family> families;    // the last one is {theta}
};

struct okutsu_challenger {
    std::string element;
    int degree = 1;
};

struct okutsu_check {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct okutsu_report {
    bool pass = true;
    std::vector<okutsu_check> checks;
    std::string scope;
    std::vector<std::vector<std::pair<std::string, group_value>>> sampled;
};

using distance_fn = std::function<group_value(std::string const&)>;

okutsu_report verify_okutsu_sequence(distance_fn const& dist, okutsu_sequence const& seq, std::vector<okutsu_challenger> const& challengers);

struct okutsu_depth {
    int r = 0;
    std::vector<std::string> kinds;     // "ordinary" | "limit", attested by declarations
};

okutsu_depth okutsu_depth_and_kinds(okutsu_sequence const& seq);

bool ball_degree_witness(distance_fn const& dist, group_value const& delta, std::string const& b);

}

#endif
