#ifndef MLV_EXPR_HPP
#define MLV_EXPR_HPP

#include "mlv/error.hpp"
#include "mlv/rational.hpp"

#include <cctype>
#include <functional>
#include <string>

namespace mlv {

/* Callbacks that give meaning to the tokens of an arithmetic expression. */
template <class E>
struct expr_ops {
    std::function<E(bigint const&)> number;
    std::function<E(std::string const&)> variable;
    std::function<E(E const&, E const&)> divide;
    std::function<E(E const&, rat const&)> power;
};

/* Recursive descent over + - * / ^ and parentheses. Exponents are
 * integers, optionally signed, or parenthesized fractions like (1/2). */
template <class E>
class expr_parser {
    std::string s_;
    size_t i_ = 0;
    expr_ops<E> const& ops_;

    void skip()
    {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    [[noreturn]] void error(std::string const& what)
    {
        fail(error_kind::parse, what + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
    }
    bigint integer()
    {
        skip();
        size_t st = i_;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
        if (st == i_) error("expected integer");
        return bigint(s_.substr(st, i_ - st));
    }
    rat exponent()
    {
        if (eat('(')) {
            bool neg = eat('-');
            bigint a = integer();
            bigint b = 1;
            if (eat('/')) b = integer();
            if (!eat(')')) error("expected ')'");
            if (b == 0) error("zero denominator");
            rat r(a, b);
            r.canonicalize();
            return neg ? rat(-r) : r;
        }
        bool neg = eat('-');
        rat r(integer());
        return neg ? rat(-r) : r;
    }
    E primary()
    {
        skip();
        if (eat('(')) {
            E v = sum();
            if (!eat(')')) error("expected ')'");
            return v;
        }
        if (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) return ops_.number(integer());
        if (i_ < s_.size() && (std::isalpha((unsigned char)s_[i_]) || s_[i_] == '_')) {
            size_t st = i_;
            while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) ++i_;
            return ops_.variable(s_.substr(st, i_ - st));
        }
        error("unexpected token");
    }
    E factor()
    {
        if (eat('-')) return ops_.number(0) - factor();
        if (eat('+')) return factor();
        E b = primary();
        if (eat('^')) b = ops_.power(b, exponent());
        return b;
    }
    E product()
    {
        E v = factor();
        for (;;) {
            if (eat('*')) v = v * factor();
            else if (eat('/')) v = ops_.divide(v, factor());
            else return v;
        }
    }
    E sum()
    {
        E v = product();
        for (;;) {
            if (eat('+')) v = v + product();
            else if (eat('-')) v = v - product();
            else return v;
        }
    }
public:
    expr_parser(std::string const& s, expr_ops<E> const& ops) : s_(normalize_minus(s)), ops_(ops) {}
    E parse()
    {
        E v = sum();
        skip();
        if (i_ != s_.size()) error("trailing input");
        return v;
    }
};

template <class E>
E parse_expr(std::string const& s, expr_ops<E> const& ops)
{
    return expr_parser<E>(s, ops).parse();
}

}

#endif
