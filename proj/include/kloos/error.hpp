#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kloos {

enum class errc {
    not_invertible,
    even_modulus,
    not_coprime,
    not_coprime_moduli,
    limit_too_large,
    even_prime,
    even_exponent,
    exponent_too_small,
    rounding_unsafe,
    degenerate_denominator,
    out_of_lemma_range,
    not_coprime_to_6,
    budget_exceeded,
    out_of_table,
    enumeration_too_large,
    invalid_argument,
};

constexpr std::string_view to_string(errc e) {
    switch (e) {
    case errc::not_invertible: return "NotInvertible";
    case errc::even_modulus: return "EvenModulus";
    case errc::not_coprime: return "NotCoprime";
    case errc::not_coprime_moduli: return "NotCoprimeModuli";
    case errc::limit_too_large: return "LimitTooLarge";
    case errc::even_prime: return "EvenPrime";
    case errc::even_exponent: return "EvenExponent";
    case errc::exponent_too_small: return "ExponentTooSmall";
    case errc::rounding_unsafe: return "RoundingUnsafe";
    case errc::degenerate_denominator: return "DegenerateDenominator";
    case errc::out_of_lemma_range: return "OutOfLemmaRange";
    case errc::not_coprime_to_6: return "NotCoprimeTo6";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::out_of_table: return "OutOfTable";
    case errc::enumeration_too_large: return "EnumerationTooLarge";
    case errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Single exception type for every library failure; `code()` names the condition.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace kloos
