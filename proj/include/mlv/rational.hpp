#ifndef MLV_RATIONAL_HPP
#define MLV_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace mlv {

using bigint = mpz_class;
using rat = mpq_class;

/* Accepts "-3/4", "5", "+2", and the unicode minus sign. */
rat parse_rational(std::string const& s);
/* Replaces the unicode minus sign by an ASCII hyphen. */
std::string normalize_minus(std::string const& s);

std::string to_string(rat const& q);
std::string to_string(bigint const& z);

/* p-adic order of a nonzero rational. */
long ord_p(rat const& q, unsigned long p);
long ord_p(bigint const& z, unsigned long p);

inline bool is_integer(rat const& q) { return q.get_den() == 1; }

bigint floor_div(bigint const& a, bigint const& b);

/* Nonnegative residue of a rational with p-free denominator. */
unsigned long mod_p(rat const& q, unsigned long p);

bool is_prime(unsigned long n);

}

#endif
