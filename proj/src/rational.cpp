#include "mlv/rational.hpp"
#include "mlv/error.hpp"

#include <algorithm>

namespace mlv {

std::string normalize_minus(std::string const& s0)
{
    std::string s;
    for (size_t i = 0; i < s0.size(); ++i) {
        unsigned char c = s0[i];
        /* U+2212 MINUS SIGN is E2 88 92 */
        if (c == 0xE2 && i + 2 < s0.size() && (unsigned char)s0[i + 1] == 0x88 && (unsigned char)s0[i + 2] == 0x92) {
            s += '-';
            i += 2;
        } else {
            s += (char)c;
        }
    }
    return s;
}

rat parse_rational(std::string const& s0)
{
    std::string s;
    for (char c : normalize_minus(s0))
        if (!std::isspace((unsigned char)c)) s += c;
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    if (s.empty()) fail(error_kind::parse, "empty rational");
    auto slash = s.find('/');
    auto check_int = [&](std::string const& t) {
        size_t k = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (k >= t.size()) fail(error_kind::parse, "bad rational '" + s0 + "'");
        for (; k < t.size(); ++k)
            if (!std::isdigit((unsigned char)t[k])) fail(error_kind::parse, "bad rational '" + s0 + "'");
    };
    rat q;
    if (slash == std::string::npos) {
        check_int(s);
        q = rat(bigint(s));
    } else {
        std::string n = s.substr(0, slash), d = s.substr(slash + 1);
        check_int(n);
        check_int(d);
        bigint dd(d);
        if (dd == 0) fail(error_kind::parse, "zero denominator in '" + s0 + "'");
        q = rat(bigint(n), dd);
        q.canonicalize();
    }
    return q;
}

std::string to_string(rat const& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(bigint const& z) { return z.get_str(); }

long ord_p(bigint const& z0, unsigned long p)
{
    if (z0 == 0) fail(error_kind::precondition_violated, "ord_p of zero");
    bigint z = abs(z0);
    long k = 0;
    while (mpz_divisible_ui_p(z.get_mpz_t(), p)) {
        mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), p);
        ++k;
    }
    return k;
}

long ord_p(rat const& q, unsigned long p)
{
    return ord_p(q.get_num(), p) - ord_p(q.get_den(), p);
}

bigint floor_div(bigint const& a, bigint const& b)
{
    bigint r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

unsigned long mod_p(rat const& q, unsigned long p)
{
    bigint P(p);
    bigint d = q.get_den() % P;
    if (d == 0) fail(error_kind::negative_value, "denominator divisible by p");
    bigint inv;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
    bigint n = q.get_num() % P;
    bigint r = (n * inv) % P;
    if (r < 0) r += P;
    return r.get_ui();
}

bool is_prime(unsigned long n)
{
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}
