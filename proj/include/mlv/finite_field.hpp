#ifndef MLV_FINITE_FIELD_HPP
#define MLV_FINITE_FIELD_HPP

#include "mlv/poly.hpp"
#include "mlv/rational.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mlv {

class finite_field;
using ff_ptr = std::shared_ptr<const finite_field>;

/* F_p[W]/(M) with M monic irreducible of degree n over F_p. */
class finite_field : public std::enable_shared_from_this<finite_field> {
    unsigned p_;
    std::vector<uint32_t> mod_;     // monic, length n+1
    bigint order_;
public:
    finite_field(unsigned p, std::vector<uint32_t> modulus);
    unsigned p() const { return p_; }
    int degree() const { return (int)mod_.size() - 1; }
    std::vector<uint32_t> const& modulus() const { return mod_; }
    bigint const& order() const { return order_; }
    std::string str() const;

    /* the smallest (in a fixed enumeration) irreducible modulus of degree n */
    static ff_ptr make(unsigned p, int n);
    static ff_ptr prime(unsigned p);

    void mul(std::vector<uint32_t> const& a, std::vector<uint32_t> const& b, std::vector<uint32_t>& out) const;
};

class ff_elem {
    ff_ptr f_;                  // null means the zero of whatever field it meets
    std::vector<uint32_t> c_;
public:
    ff_elem() = default;
    ff_elem(ff_ptr f, std::vector<uint32_t> c);
    static ff_elem from_int(ff_ptr const& f, long k);
    static ff_elem generator(ff_ptr const& f);   // the class of W

    ff_ptr const& field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;
    std::vector<uint32_t> coords() const;        // length = degree, zero-padded
    uint32_t coord(int i) const { return i < (int)c_.size() ? c_[i] : 0; }

    ff_elem operator+(ff_elem const& o) const;
    ff_elem operator-(ff_elem const& o) const;
    ff_elem operator-() const;
    ff_elem operator*(ff_elem const& o) const;
    ff_elem operator*(long k) const;
    ff_elem operator/(ff_elem const& o) const;
    ff_elem inverse() const;
    ff_elem pow(bigint const& k) const;
    bool operator==(ff_elem const& o) const;
    bool operator<(ff_elem const& o) const;      // total order on coordinates
    std::string str(std::string const& var = "w") const;
};

using ff_poly = polynomial<ff_elem>;

ff_poly ff_monic(ff_poly const& f);
ff_poly ff_powmod(ff_poly const& a, bigint const& k, ff_poly const& m);
bool ff_less(ff_poly const& a, ff_poly const& b);

/* complete factorization over F; factors monic, sorted, multiplied back to monic(f) */
std::vector<std::pair<ff_poly, int>> ff_factor(ff_ptr const& F, ff_poly const& f);
bool ff_is_irreducible(ff_ptr const& F, ff_poly const& f);
std::vector<ff_elem> ff_roots(ff_ptr const& F, ff_poly const& f);

/* Lift of a coefficient vector over F_p to F by sending W to w. */
ff_elem ff_embed(ff_elem const& a, ff_elem const& w, ff_ptr const& target);

/* Smallest d with a^(p^d) = a. */
int ff_element_degree(ff_elem const& a);

std::vector<std::vector<uint32_t>> ff_matrix_inverse(std::vector<std::vector<uint32_t>> m, unsigned p);

}

#endif
