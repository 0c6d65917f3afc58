#ifndef MLV_BASEFIELD_HPP
#define MLV_BASEFIELD_HPP

#include "mlv/finite_field.hpp"
#include "mlv/mpoly.hpp"
#include "mlv/ordgroup.hpp"
#include "mlv/poly.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mlv {

/* Element of Q(t): num/den with den monic and coprime to num. */
class qt_func {
    polynomial<rat> num_, den_;     // den_ empty stands for 1
    void normalize();
public:
    qt_func() = default;
    qt_func(rat c) : num_(polynomial<rat>::constant(std::move(c))) {}
    qt_func(long c) : qt_func(rat(c)) {}
    qt_func(polynomial<rat> n, polynomial<rat> d = {});
    static qt_func t();

    polynomial<rat> const& num() const { return num_; }
    polynomial<rat> den() const { return den_.is_zero() ? polynomial<rat>::constant(1) : den_; }
    bool is_zero() const { return num_.is_zero(); }
    long ord_t() const;
    rat initial() const;        // (u t^-ord)(0)

    qt_func operator+(qt_func const& o) const;
    qt_func operator-(qt_func const& o) const;
    qt_func operator-() const;
    qt_func operator*(qt_func const& o) const;
    qt_func operator*(long k) const;
    qt_func operator/(qt_func const& o) const;
    bool operator==(qt_func const& o) const { return num_ == o.num_ && den_ == o.den_; }

    /* coefficients of t^ord .. t^(ord+n-1) of the Laurent expansion */
    std::vector<rat> laurent(long& ord, int n) const;
    std::string str() const;
};

class finite_tower;
class function_tower;

/* Residue tower over a finite prime field. Every level is flattened to a
 * single finite field; level i+1 records the image of level i's field
 * generator and the root z_i that was adjoined. */
class finite_tower {
public:
    struct level {
        ff_ptr F;
        ff_elem w_img;      // image of the previous level's field generator
        ff_elem z;          // adjoined root, in F
        int f = 1;
        std::vector<std::vector<uint32_t>> dec;     // coordinates in basis w^a z^b
        ff_poly psi;        // minimal polynomial of z over the previous level
    };
private:
    unsigned p_;
    std::vector<std::shared_ptr<const level>> lv_;
public:
    using elem = ff_elem;
    explicit finite_tower(unsigned p);
    int height() const { return (int)lv_.size() - 1; }
    unsigned p() const { return p_; }
    ff_ptr field(int L) const { return lv_.at(L)->F; }
    level const& at(int L) const { return *lv_.at(L); }
    ff_elem one(int L) const { return ff_elem::from_int(field(L), 1); }
    ff_elem from_int(long k, int L) const { return ff_elem::from_int(field(L), k); }
    ff_elem embed(ff_elem const& a, int from, int to) const;
    polynomial<ff_elem> embed(polynomial<ff_elem> const& f, int from, int to) const;
    finite_tower extended(polynomial<ff_elem> const& psi) const;
    finite_tower truncated(int h) const
    {
        finite_tower t = *this;
        t.lv_.resize(h + 1);
        return t;
    }
    ff_elem generator(int i) const { return lv_.at(i + 1)->z; }
    int relative_degree(int i) const { return lv_.at(i + 1)->f; }
    std::vector<ff_elem> decompose(ff_elem const& a, int L) const;
    int element_degree(ff_elem const& a, int) const { return ff_element_degree(a); }
    std::vector<std::pair<polynomial<ff_elem>, int>> factor(polynomial<ff_elem> const& f, int L) const;
    std::string str(ff_elem const& a, int L) const;
    std::string describe() const;
    bool same_as(finite_tower const& o) const;
};

/* Residue tower over F_p(vars): each step adjoins a p-th root of a monomial
 * (or nothing, for a linear residual factor). Elements of every level share
 * one representation, so the embeddings are identities. */
class function_tower {
public:
    struct level {
        rational_lattice lattice;   // exponents allowed at this level
        mratfunc z;
        expvec zexp;
        uint32_t zcoef = 1;
        int f = 1;
        polynomial<mratfunc> psi;
    };
private:
    unsigned p_;
    std::vector<std::string> names_;
    std::vector<std::shared_ptr<const level>> lv_;
    bool is_pth_power(mratfunc const& c, int L, mratfunc* root) const;
    void factor_rec(polynomial<mratfunc> const& f, int mult, int L, std::vector<std::pair<polynomial<mratfunc>, int>>& out) const;
public:
    using elem = mratfunc;
    function_tower(unsigned p, std::vector<std::string> names);
    int height() const { return (int)lv_.size() - 1; }
    unsigned p() const { return p_; }
    int nvars() const { return (int)names_.size(); }
    std::vector<std::string> const& names() const { return names_; }
    level const& at(int L) const { return *lv_.at(L); }
    mratfunc one(int) const { return mratfunc::constant(p_, nvars(), 1); }
    mratfunc from_int(long k, int) const { return mratfunc::constant(p_, nvars(), k); }
    mratfunc embed(mratfunc const& a, int, int) const { return a; }
    polynomial<mratfunc> embed(polynomial<mratfunc> const& f, int, int) const { return f; }
    function_tower extended(polynomial<mratfunc> const& psi) const;
    function_tower truncated(int h) const
    {
        function_tower t = *this;
        t.lv_.resize(h + 1);
        return t;
    }
    mratfunc generator(int i) const { return lv_.at(i + 1)->z; }
    int relative_degree(int i) const { return lv_.at(i + 1)->f; }
    std::vector<mratfunc> decompose(mratfunc const& a, int L) const;
    /* the tower is purely inseparable: degree = largest exponent denominator */
    int element_degree(mratfunc const& a, int L) const;
    std::vector<std::pair<polynomial<mratfunc>, int>> factor(polynomial<mratfunc> const& f, int L) const;
    bool is_pth_power(mratfunc const& c, int L) const { return is_pth_power(c, L, nullptr); }
    std::string str(mratfunc const& a, int) const { return a.str(names_); }
    std::string describe() const;
    bool same_as(function_tower const& o) const;
};

inline ff_elem kpow(ff_elem const& a, long k) { return a.pow(bigint(k)); }
inline mratfunc kpow(mratfunc const& a, long k) { return a.pow(k); }

/* (Q, ord_p); section m -> p^m; residue field F_p. */
struct qpadic_field {
    using elem = rat;
    using tower_t = finite_tower;
    using kelem = ff_elem;
    unsigned long p;

    int rank() const { return 1; }
    group_value val(rat const& a) const;
    rat section(group_value const& g) const;
    ff_elem residue(rat const& a) const;
    rat lift(ff_elem const& r) const;
    finite_tower base_tower() const { return finite_tower((unsigned)p); }
    rat from_int(long k) const { return rat(k); }
    rat parse(std::string const& s) const;
    std::string str(rat const& a) const;
    std::string kind() const { return "Q_padic"; }
    std::vector<std::string> vars() const { return {}; }
};

/* F_p(vars)(t) with v = ord_t; section m -> t^m; residue field F_p(vars).
 * Elements carry the variables in order vars..., t. */
struct fp_rft_field {
    using elem = mratfunc;
    using tower_t = function_tower;
    using kelem = mratfunc;
    unsigned long p;
    std::vector<std::string> names;     // without t

    int rank() const { return 1; }
    int nv() const { return (int)names.size() + 1; }
    group_value val(mratfunc const& a) const;
    mratfunc section(group_value const& g) const;
    mratfunc residue(mratfunc const& a) const;
    mratfunc lift(mratfunc const& r) const;
    function_tower base_tower() const { return function_tower((unsigned)p, names); }
    mratfunc from_int(long k) const { return mratfunc::constant((unsigned)p, nv(), k); }
    mratfunc var(std::string const& name) const;
    mratfunc parse(std::string const& s) const;
    mratfunc parse_residue(std::string const& s) const;
    std::string str(mratfunc const& a) const;
    std::string kind() const { return "Fp_rft"; }
    std::vector<std::string> vars() const { return names; }
};

/* Q(t) with v(u) = (ord_t u, ord_p in(u)); section (m,n) -> t^m p^n. */
struct qt_rank2_field {
    using elem = qt_func;
    using tower_t = finite_tower;
    using kelem = ff_elem;
    unsigned long p;

    int rank() const { return 2; }
    group_value val(qt_func const& a) const;
    qt_func section(group_value const& g) const;
    ff_elem residue(qt_func const& a) const;
    qt_func lift(ff_elem const& r) const;
    finite_tower base_tower() const { return finite_tower((unsigned)p); }
    qt_func from_int(long k) const { return qt_func(k); }
    qt_func parse(std::string const& s) const;
    std::string str(qt_func const& a) const { return a.str(); }
    std::string kind() const { return "Qt_rank2"; }
    std::vector<std::string> vars() const { return {"t"}; }
};

}

#endif
