#ifndef VFCSR_INTEGER_HPP
#define VFCSR_INTEGER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "error.hpp"

namespace vfcsr {

using big_int = boost::multiprecision::cpp_int;

/// int64 whose arithmetic throws errc::overflow instead of wrapping.
/// Used as the fast path of the register simulator; any overflow is
/// reported so the caller can rerun on big_int.
class checked_int {
public:
    constexpr checked_int() noexcept = default;
    constexpr checked_int(std::int64_t v) noexcept : v_(v) {}

    constexpr std::int64_t value() const noexcept { return v_; }

    friend checked_int operator+(checked_int a, checked_int b) {
        std::int64_t r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) fail("addition");
        return r;
    }
    friend checked_int operator-(checked_int a, checked_int b) {
        std::int64_t r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r)) fail("subtraction");
        return r;
    }
    friend checked_int operator*(checked_int a, checked_int b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) fail("multiplication");
        return r;
    }
    friend checked_int operator/(checked_int a, checked_int b) {
        if (b.v_ == 0) throw error(errc::invalid_argument, "division by zero");
        if (a.v_ == std::numeric_limits<std::int64_t>::min() && b.v_ == -1) fail("division");
        return a.v_ / b.v_;
    }
    friend checked_int operator%(checked_int a, checked_int b) {
        if (b.v_ == 0) throw error(errc::invalid_argument, "division by zero");
        if (b.v_ == -1) return 0;
        return a.v_ % b.v_;
    }
    checked_int operator-() const {
        if (v_ == std::numeric_limits<std::int64_t>::min()) fail("negation");
        return -v_;
    }
    checked_int& operator+=(checked_int o) { return *this = *this + o; }
    checked_int& operator-=(checked_int o) { return *this = *this - o; }
    checked_int& operator*=(checked_int o) { return *this = *this * o; }

    friend constexpr bool operator==(checked_int, checked_int) noexcept = default;
    friend constexpr auto operator<=>(checked_int, checked_int) noexcept = default;

    friend std::ostream& operator<<(std::ostream& os, checked_int x) { return os << x.v_; }

private:
    [[noreturn]] static void fail(const char* op) {
        throw error(errc::overflow, std::string("int64 overflow in ") + op);
    }

    std::int64_t v_ = 0;
};

inline big_int to_big(const big_int& x) { return x; }
inline big_int to_big(checked_int x) { return big_int(x.value()); }
inline big_int to_big(std::int64_t x) { return big_int(x); }

template <class Int>
Int from_big(const big_int& x);

template <>
inline big_int from_big<big_int>(const big_int& x) {
    return x;
}

template <>
inline checked_int from_big<checked_int>(const big_int& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw error(errc::overflow, "value does not fit int64: " + x.str());
    return checked_int(static_cast<std::int64_t>(x));
}

inline bool fits_int64(const big_int& x) {
    return x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min();
}

inline std::int64_t to_int64(const big_int& x) {
    if (!fits_int64(x)) throw error(errc::overflow, "value does not fit int64: " + x.str());
    return static_cast<std::int64_t>(x);
}

/// Least non-negative residue of a modulo m (m > 0), also for negative a.
template <class Int>
Int floor_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < Int(0)) r += m;
    return r;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

template <class Int>
Int abs_value(const Int& a) {
    return a < Int(0) ? Int(-a) : a;
}

} // namespace vfcsr

#endif // VFCSR_INTEGER_HPP
