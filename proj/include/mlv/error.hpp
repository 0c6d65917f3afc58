#ifndef MLV_ERROR_HPP
#define MLV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mlv {

enum class error_kind {
    parse,
    mixed_rank,
    unrepresentable_cut,
    negative_value,
    unsupported_factorization,
    non_monic,
    not_key_polynomial,
    non_increasing_value,
    terminal_valuation,
    not_in_unit_group,
    degree_too_large,
    precondition_violated,
    branched,
    limit_situation,
    precision_exhausted,
    no_root,
    budget_exhausted,
};

const char* error_kind_name(error_kind k);

class math_error : public std::runtime_error {
    error_kind kind_;
public:
    math_error(error_kind k, std::string const& what)
        : std::runtime_error(std::string(error_kind_name(k)) + ": " + what), kind_(k) {}
    error_kind kind() const { return kind_; }
};

[[noreturn]] inline void fail(error_kind k, std::string const& what) { throw math_error(k, what); }

inline const char* error_kind_name(error_kind k)
{
    switch (k) {
    case error_kind::parse: return "ParseError";
    case error_kind::mixed_rank: return "MixedRank";
    case error_kind::unrepresentable_cut: return "UnrepresentableCut";
    case error_kind::negative_value: return "NegativeValue";
    case error_kind::unsupported_factorization: return "UnsupportedFactorization";
    case error_kind::non_monic: return "NonMonic";
    case error_kind::not_key_polynomial: return "NotKeyPolynomial";
    case error_kind::non_increasing_value: return "NonIncreasingValue";
    case error_kind::terminal_valuation: return "TerminalValuation";
    case error_kind::not_in_unit_group: return "NotInUnitGroup";
    case error_kind::degree_too_large: return "DegreeTooLarge";
    case error_kind::precondition_violated: return "PreconditionViolated";
    case error_kind::branched: return "Branched";
    case error_kind::limit_situation: return "LimitSituation";
    case error_kind::precision_exhausted: return "PrecisionExhausted";
    case error_kind::no_root: return "NoRoot";
    case error_kind::budget_exhausted: return "BudgetExhausted";
    }
    return "Unknown";
}

}

#endif
