#ifndef MLV_MPOLY_HPP
#define MLV_MPOLY_HPP

#include "mlv/rational.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mlv {

using expo = boost::rational<long>;
using expvec = std::vector<expo>;

/* Laurent polynomial over F_p in nv variables with rational exponents. A
 * default-constructed value is a zero that adopts the shape of whatever it
 * is combined with. */
class mpoly {
    unsigned p_ = 0;
    int nv_ = 0;
    std::map<expvec, uint32_t> t_;
    void adopt(mpoly const& o);
public:
    mpoly() = default;
    mpoly(unsigned p, int nv) : p_(p), nv_(nv) {}
    static mpoly constant(unsigned p, int nv, long c);
    static mpoly monomial(unsigned p, expvec e, long c = 1);
    static mpoly variable(unsigned p, int nv, int i);

    unsigned p() const { return p_; }
    int nvars() const { return nv_; }
    std::map<expvec, uint32_t> const& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return t_.size() == 1; }
    uint32_t constant_term() const;
    std::pair<expvec, uint32_t> leading_term() const;    // largest exponent vector
    expvec min_exponents() const;
    expo min_degree(int var) const;

    mpoly operator+(mpoly const& o) const;
    mpoly operator-(mpoly const& o) const;
    mpoly operator-() const;
    mpoly operator*(mpoly const& o) const;
    mpoly operator*(long k) const;
    mpoly shifted(expvec const& e) const;    // times X^e
    mpoly pow(unsigned long k) const;
    bool operator==(mpoly const& o) const;
    bool operator<(mpoly const& o) const;

    /* terms whose exponent in var equals the minimum, with var removed */
    mpoly lowest_part(int var, expo& order) const;
    mpoly drop_var(int var) const;
    mpoly add_var() const;    // append a variable with exponent 0

    std::string str(std::vector<std::string> const& names) const;
};

/* Element of F_p(vars) (exponents may be fractional), as num/den with the
 * denominator free of monomial content and with leading coefficient 1. */
class mratfunc {
    mpoly num_, den_;
    void normalize();
public:
    mratfunc() = default;
    explicit mratfunc(mpoly n);
    mratfunc(mpoly n, mpoly d);
    static mratfunc constant(unsigned p, int nv, long c) { return mratfunc(mpoly::constant(p, nv, c)); }

    mpoly const& num() const { return num_; }
    mpoly const& den() const { return den_; }
    unsigned p() const { return num_.p() ? num_.p() : den_.p(); }
    int nvars() const { return num_.p() ? num_.nvars() : den_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_polynomial() const { return den_.is_zero() || (den_.is_constant() && den_.constant_term() == 1); }
    bool is_monomial() const { return is_polynomial() && num_.is_monomial(); }

    mratfunc operator+(mratfunc const& o) const;
    mratfunc operator-(mratfunc const& o) const;
    mratfunc operator-() const;
    mratfunc operator*(mratfunc const& o) const;
    mratfunc operator*(long k) const;
    mratfunc operator/(mratfunc const& o) const;
    mratfunc inverse() const;
    mratfunc pow(long k) const;
    bool operator==(mratfunc const& o) const;

    std::string str(std::vector<std::string> const& names) const;
};

}

#endif
