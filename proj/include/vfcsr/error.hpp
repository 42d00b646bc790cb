#ifndef VFCSR_ERROR_HPP
#define VFCSR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace vfcsr {

enum class errc {
    not_prime,
    not_primitive_polynomial,
    degree_zero,
    invalid_argument,
    factorization_budget,
    non_square,
    index_out_of_range,
    not_congruent_minus_one,
    memory_diverged,
    undetermined,
    precision_too_low,
    not_coprime,
    modulus_too_small,
    overflow,
};

constexpr std::string_view to_string(errc code) noexcept {
    switch (code) {
    case errc::not_prime: return "NotPrime";
    case errc::not_primitive_polynomial: return "NotPrimitivePolynomial";
    case errc::degree_zero: return "DegreeZero";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::factorization_budget: return "FactorizationBudget";
    case errc::non_square: return "NonSquare";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::not_congruent_minus_one: return "NotCongruentMinusOne";
    case errc::memory_diverged: return "MemoryDiverged";
    case errc::undetermined: return "Undetermined";
    case errc::precision_too_low: return "PrecisionTooLow";
    case errc::not_coprime: return "NotCoprime";
    case errc::modulus_too_small: return "ModulusTooSmall";
    case errc::overflow: return "Overflow";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace vfcsr

#endif // VFCSR_ERROR_HPP
