#ifndef VFCSR_NUMBER_THEORY_HPP
#define VFCSR_NUMBER_THEORY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "error.hpp"

namespace vfcsr {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Deterministic Miller-Rabin for the whole 64-bit range; the first twelve
/// primes are a sufficient witness set below 3.3e24.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : small) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

// Brent's variant of Pollard rho; n must be composite and odd.
inline u64 pollard_rho(u64 n) {
    std::mt19937_64 rng(n ^ 0x9e3779b97f4a7c15ULL);
    for (;;) {
        const u64 c = rng() % (n - 1) + 1;
        u64 y = rng() % n;
        u64 m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(u64 n, std::map<u64, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    const u64 f = pollard_rho(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

} // namespace detail

/// Prime factorization as {prime: exponent}; factorize(1) is empty.
inline std::map<u64, int> factorize(u64 n) {
    if (n == 0) throw error(errc::invalid_argument, "cannot factor 0");
    std::map<u64, int> out;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        while (n % q == 0) {
            ++out[q];
            n /= q;
        }
    }
    detail::factor_into(n, out);
    return out;
}

inline u64 euler_phi(u64 n) {
    u64 phi = n;
    for (const auto& [q, e] : factorize(n)) phi = phi / q * (q - 1);
    return phi;
}

namespace detail {

inline u64 mult_order_direct(u64 a, u64 m) {
    const u64 base = a % m;
    u64 x = base;
    u64 e = 1;
    while (x != 1) {
        x = mul_mod(x, base, m);
        ++e;
    }
    return e;
}

// Strip prime factors from phi(m) while a^(e/q) stays 1.
inline u64 mult_order_factored(u64 a, u64 m) {
    u64 e = euler_phi(m);
    for (const auto& [q, k] : factorize(e)) {
        for (int i = 0; i < k; ++i) {
            if (pow_mod(a, e / q, m) != 1) break;
            e /= q;
        }
    }
    return e;
}

} // namespace detail

inline constexpr u64 direct_order_limit = 1ULL << 16;

/// Smallest e >= 1 with a^e = 1 (mod m).
inline u64 mult_order(u64 a, u64 m) {
    if (m < 2) throw error(errc::modulus_too_small, "modulus " + std::to_string(m) + " < 2");
    if (std::gcd(a, m) != 1)
        throw error(errc::not_coprime, std::to_string(a) + " and " + std::to_string(m));
    if (m >= (1ULL << 63)) throw error(errc::factorization_budget, "modulus exceeds 2^63");
    return m < direct_order_limit ? detail::mult_order_direct(a, m) : detail::mult_order_factored(a, m);
}

} // namespace vfcsr

#endif // VFCSR_NUMBER_THEORY_HPP
