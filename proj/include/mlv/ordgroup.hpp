#ifndef MLV_ORDGROUP_HPP
#define MLV_ORDGROUP_HPP

#include "mlv/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace mlv {

/* An element of Q or Q^2 (lexicographic), or infinity. The value groups
 * handled here are divisible, so division by positive integers is exact. */
class group_value {
    int rank_ = 1;      // 1 or 2; infinity keeps the rank it was built with
    bool inf_ = false;
    rat a_, b_;
public:
    group_value() = default;
    static group_value rank1(rat a);
    static group_value rank2(rat a, rat b);
    static group_value infinity(int rank = 1);
    static group_value zero(int rank);
    static group_value from_coords(std::vector<rat> const& c);

    int rank() const { return rank_; }
    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }
    bool is_zero() const { return !inf_ && a_ == 0 && b_ == 0; }
    rat const& first() const { return a_; }
    rat const& second() const { return b_; }
    std::vector<rat> coords() const;

    group_value operator+(group_value const& o) const;
    group_value operator-(group_value const& o) const;
    group_value operator-() const;
    group_value operator*(long k) const;
    group_value operator*(rat const& k) const;
    group_value operator/(long k) const;
    group_value& operator+=(group_value const& o) { return *this = *this + o; }

    std::strong_ordering operator<=>(group_value const& o) const;
    bool operator==(group_value const& o) const { return (*this <=> o) == 0; }

    std::string str() const;
    static group_value parse(std::string const& s, int rank_hint = 0);
};

group_value min(group_value const& a, group_value const& b);

/* A full-rank subgroup of Q^n containing finitely many generators, kept in
 * Hermite normal form over a common denominator. */
class rational_lattice {
    int dim_ = 0;
    bigint den_ = 1;
    std::vector<std::vector<bigint>> rows_;     // echelon basis scaled by den_
    void rebuild(std::vector<std::vector<rat>> const& gens);
public:
    rational_lattice() = default;
    /* Z^n */
    static rational_lattice standard(int n);
    int dim() const { return dim_; }
    bool contains(std::vector<rat> const& v) const;
    bool contains(group_value const& g) const { return contains(g.coords()); }
    rational_lattice with(std::vector<rat> const& v) const;
    rational_lattice with(group_value const& g) const { return with(g.coords()); }
    std::vector<std::vector<rat>> basis() const;
    /* least positive k with k*v in the lattice (v must have finite order mod the lattice) */
    long order_of(std::vector<rat> const& v) const;
    bool operator==(rational_lattice const& o) const { return dim_ == o.dim_ && den_ == o.den_ && rows_ == o.rows_; }
};

enum class cut_kind {
    minus_infinity,
    principal_minus,
    principal_plus,
    level_minus,
    level_plus,
    plus_infinity_minus,
};

/* The closed family of cuts that can arise from finite distance sets,
 * fully unbounded families, and rank-2 families unbounded in the second
 * coordinate at a fixed first coordinate. */
class cut {
    cut_kind kind_ = cut_kind::minus_infinity;
    int rank_ = 1;
    group_value g_;
    rat level_;
public:
    cut() = default;
    static cut minus_infinity(int rank);
    static cut plus_infinity_minus(int rank);
    static cut plus(group_value const& g);
    static cut minus(group_value const& g);
    static cut level_plus(rat a);
    static cut level_minus(rat a);

    cut_kind kind() const { return kind_; }
    int rank() const { return rank_; }
    group_value const& value() const { return g_; }
    rat const& level() const { return level_; }

    /* does gamma lie in the left set? */
    bool left_contains(group_value const& gamma) const;

    std::string str() const;
    static cut parse(std::string const& s, int rank_hint = 0);
    bool operator==(cut const& o) const;
};

std::strong_ordering cut_compare(cut const& a, cut const& b);
cut cut_add(cut const& a, cut const& b);
/* gamma + delta, i.e. gamma^+ + delta */
cut cut_shift(group_value const& gamma, cut const& d);

struct distance_set {
    enum class marker { none, unbounded, level_unbounded, irregular };
    std::vector<group_value> finite_values;
    marker unbounded = marker::none;
    rat level;      // for level_unbounded
    int rank = 1;
};

enum class cut_mode { plus, minus };
cut cut_from_set(distance_set const& d, cut_mode mode);

}

#endif
