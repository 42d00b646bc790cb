#ifndef VFCSR_ANALYSIS_HPP
#define VFCSR_ANALYSIS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "connection.hpp"
#include "error.hpp"
#include "integer.hpp"
#include "number_theory.hpp"
#include "register.hpp"

namespace vfcsr {

struct period_info {
    std::size_t transient = 0;
    std::size_t period = 0;

    friend bool operator==(const period_info&, const period_info&) = default;
};

/// Eventual period of a finite window.
///
/// The periodic part is the longest suffix that repeats its own minimal period
/// at least twice; it is found with the KMP failure function of the reversed
/// window in O(size). The answer is Undetermined when that suffix covers less
/// than half the window or its period exceeds max_len.
template <class T>
period_info detect_period(std::span<const T> seq, std::size_t max_len) {
    const std::size_t len = seq.size();
    if (len == 0) throw error(errc::undetermined, "empty window");
    // fail[m-1] = longest proper border of the reversed prefix of length m
    std::vector<std::size_t> fail(len, 0);
    auto rev = [&](std::size_t i) -> const T& { return seq[len - 1 - i]; };
    for (std::size_t i = 1, b = 0; i < len; ++i) {
        while (b > 0 && !(rev(i) == rev(b))) b = fail[b - 1];
        if (rev(i) == rev(b)) ++b;
        fail[i] = b;
    }
    for (std::size_t m = len; m > 0 && 2 * m >= len; --m) {
        const std::size_t period = m - fail[m - 1];
        if (m < 2 * period) continue;
        if (period > max_len)
            throw error(errc::undetermined, "period " + std::to_string(period) + " exceeds max_len");
        return {len - m, period};
    }
    throw error(errc::undetermined, "window of " + std::to_string(len) + " too short to confirm a period");
}

template <class T>
period_info detect_period(const std::vector<T>& seq, std::size_t max_len) {
    return detect_period(std::span<const T>(seq), max_len);
}

/// ord_m(p), with the convention ord = 1 for |m| = 1 (everything is 0 mod 1).
inline u64 order_modulo(std::int64_t p, const big_int& modulus_abs) {
    if (modulus_abs == 1) return 1;
    if (modulus_abs >= (big_int(1) << 63))
        throw error(errc::factorization_budget, "modulus " + modulus_abs.str() + " beyond 2^63");
    return mult_order(static_cast<u64>(p), static_cast<u64>(modulus_abs));
}

/// N' prime, p a primitive root mod N', gcd(d, N' - 1) = 1.
inline bool corollary1_predicate(const big_int& n_prime_abs, std::int64_t p, int d) {
    if (n_prime_abs < 2 || n_prime_abs >= (big_int(1) << 63)) return false;
    const auto n = static_cast<u64>(n_prime_abs);
    if (!is_prime(n) || n % static_cast<u64>(p) == 0) return false;
    return mult_order(static_cast<u64>(p), n) == n - 1 && std::gcd(static_cast<u64>(d), n - 1) == 1;
}

namespace detail {

inline big_int balanced_residue(const big_int& x, const big_int& modulus) {
    big_int r = floor_mod(x, modulus);
    if (2 * r > modulus) r -= modulus;
    return r;
}

inline big_int inverse_mod(const big_int& a, const big_int& m) {
    big_int old_r = floor_mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        const big_int q = old_r / r;
        big_int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw error(errc::not_coprime, "no inverse modulo " + m.str());
    return floor_mod(old_s, m);
}

// alpha'_(k,j) truncated to `digits` base-p digits, basis order.
inline std::vector<big_int> truncated_alpha(const output_sequence& seq, const ground_params& g, int digits) {
    std::vector<big_int> alpha(static_cast<std::size_t>(g.dim()), big_int(0));
    for (int k = 0; k < g.d(); ++k)
        for (int j = 0; j < g.n(); ++j) {
            big_int acc = 0, weight = 1;
            for (int z = 0; z < digits; ++z) {
                acc += weight * seq.digit(static_cast<std::size_t>(g.d()) * z + k, j);
                weight *= g.p();
            }
            alpha[g.basis_index(k, j)] = acc;
        }
    return alpha;
}

inline std::vector<big_int> numerators_at(const int_matrix& m_prime, const output_sequence& seq, const ground_params& g,
                                          int digits) {
    const big_int modulus = boost::multiprecision::pow(big_int(g.p()), static_cast<unsigned>(digits));
    std::vector<big_int> y = m_prime * truncated_alpha(seq, g, digits);
    for (auto& v : y) v = balanced_residue(v, modulus);
    return y;
}

} // namespace detail

struct rationality_result {
    bool verified = false;
    int precision = 0;                ///< K, digits per subsequence used to recover y'
    std::vector<big_int> numerators;  ///< y' = M' alpha', basis order
    std::vector<big_int> scaled;      ///< w = adj(M') y', so alpha' = w / det(M')
    big_int n_prime;                  ///< det(M'), signed
};

/// Default K: smallest K with p^K > 2 |N'| B, plus 16, where B bounds the
/// numerator from the initial memory and coefficient sizes.
inline int default_precision(const register_spec& spec, const register_state& state, const big_int& n_prime_abs) {
    const auto& g = spec.ground;
    big_int max_mem = 0;
    for (const auto& m : state.memory.coords()) max_mem = std::max(max_mem, abs_value(m));
    big_int max_b = 0;
    for (int j = g.n(); j <= 2 * g.n() - 2; ++j)
        for (auto b : g.beta_power(j)) max_b = std::max(max_b, big_int(b < 0 ? -b : b));
    const big_int pm1 = g.p() - 1;
    big_int bound = (1 + max_mem + big_int(spec.r()) * g.n() * pm1 * pm1 * (1 + max_b)) *
                    boost::multiprecision::pow(big_int(g.p()), static_cast<unsigned>((spec.r() + g.d() - 1) / g.d() + 1));
    const big_int target = 2 * n_prime_abs * bound;
    int k = 0;
    for (big_int power = 1; power <= target; power *= g.p()) ++k;
    return k + 16;
}

/// Recovers y' from M' alpha' (mod p^K), checks it is unchanged at K + 8,
/// solves alpha' = w / det(M') by Cramer's rule and re-expands every w / det(M')
/// p-adically against observed digits the recovery never used.
inline rationality_result verify_rationality(const register_spec& spec, const register_state& state,
                                             std::optional<int> precision = std::nullopt) {
    const auto& g = spec.ground;
    const connection_analysis ca = analyze(spec);
    const int k1 = precision ? *precision : default_precision(spec, state, ca.n_prime_abs);
    if (k1 < 1) throw error(errc::invalid_argument, "precision must be >= 1");
    const int k2 = k1 + 8;
    const int check_digits = k2 + 8;
    const output_sequence seq = simulate(spec, state, static_cast<std::size_t>(g.d()) * (check_digits + 1));

    rationality_result res;
    res.precision = k1;
    res.n_prime = ca.n_prime;
    res.numerators = detail::numerators_at(ca.m_prime, seq, g, k1);
    if (detail::numerators_at(ca.m_prime, seq, g, k2) != res.numerators)
        throw error(errc::precision_too_low, "numerators unstable between K=" + std::to_string(k1) + " and K=" +
                                                 std::to_string(k2));

    const std::size_t dim = static_cast<std::size_t>(g.dim());
    for (std::size_t i = 0; i < dim; ++i) {
        int_matrix replaced = ca.m_prime;
        for (std::size_t r = 0; r < dim; ++r) replaced(r, i) = res.numerators[r];
        res.scaled.push_back(det_int(std::move(replaced)));
    }

    const big_int modulus = boost::multiprecision::pow(big_int(g.p()), static_cast<unsigned>(check_digits));
    const big_int inv = detail::inverse_mod(ca.n_prime, modulus);
    res.verified = true;
    for (int k = 0; k < g.d() && res.verified; ++k)
        for (int j = 0; j < g.n() && res.verified; ++j) {
            big_int x = floor_mod(big_int(res.scaled[g.basis_index(k, j)] * inv), modulus);
            for (int z = 0; z < check_digits; ++z) {
                const auto digit = static_cast<std::int64_t>(x % g.p());
                x /= g.p();
                if (digit != seq.digit(static_cast<std::size_t>(g.d()) * z + k, j)) {
                    res.verified = false;
                    break;
                }
            }
        }
    return res;
}

struct period_report {
    big_int n_prime_abs;
    u64 ord = 1;                            ///< ord_{|N'|}(p)
    std::size_t horizon = 0;
    std::vector<period_info> sub_periods;   ///< a_(k,j), basis order
    std::vector<period_info> coord_periods; ///< a_j
    u64 total_period = 1;                   ///< lcm of coordinate periods
    period_info detected_total;             ///< period of the vector sequence itself
    bool subsequences_divide_ord = false;
    bool coordinates_divide_d_ord = false;
    bool total_is_lcm = false;
    bool theorem2_ok = false;
    bool corollary1_applicable = false;
    /// |N'| / gcd(|N'|, w_(k,j)) per subsequence; empty if rationality could not be verified.
    std::vector<big_int> reduced_denominators;
};

inline std::size_t default_horizon(int d, u64 ord) { return 4 * static_cast<std::size_t>(d) * ord + 64; }

/// Runs the register over the horizon, measures every eventual period and
/// checks the three divisibility claims against ord_{|N'|}(p).
inline period_report theorem2_report(const register_spec& spec, const register_state& state,
                                     std::optional<std::size_t> horizon = std::nullopt) {
    const auto& g = spec.ground;
    const connection_analysis ca = analyze(spec);
    period_report rep;
    rep.n_prime_abs = ca.n_prime_abs;
    rep.ord = order_modulo(g.p(), ca.n_prime_abs);
    rep.horizon = horizon ? *horizon : default_horizon(g.d(), rep.ord);
    rep.corollary1_applicable = corollary1_predicate(ca.n_prime_abs, g.p(), g.d());

    const output_sequence seq = simulate(spec, state, rep.horizon);
    rep.sub_periods.resize(static_cast<std::size_t>(g.dim()));
    rep.subsequences_divide_ord = true;
    for (int k = 0; k < g.d(); ++k)
        for (int j = 0; j < g.n(); ++j) {
            const auto sub = subsequence(seq, k, j, g.d());
            const period_info info = detect_period(sub, sub.size());
            rep.sub_periods[g.basis_index(k, j)] = info;
            if (rep.ord % info.period != 0) rep.subsequences_divide_ord = false;
        }
    rep.coordinates_divide_d_ord = true;
    rep.total_period = 1;
    const u64 d_ord = static_cast<u64>(g.d()) * rep.ord;
    for (int j = 0; j < g.n(); ++j) {
        const auto row = seq.row(j);
        const period_info info = detect_period(row, row.size());
        rep.coord_periods.push_back(info);
        if (d_ord % info.period != 0) rep.coordinates_divide_d_ord = false;
        rep.total_period = std::lcm(rep.total_period, static_cast<u64>(info.period));
    }
    const auto symbols = seq.symbols(g.p());
    rep.detected_total = detect_period(symbols, symbols.size());
    rep.total_is_lcm = rep.detected_total.period == rep.total_period && d_ord % rep.total_period == 0;
    rep.theorem2_ok = rep.subsequences_divide_ord && rep.coordinates_divide_d_ord && rep.total_is_lcm;

    try {
        const rationality_result rat = verify_rationality(spec, state);
        if (rat.verified)
            for (const auto& w : rat.scaled) {
                const big_int gcd = boost::multiprecision::gcd(ca.n_prime_abs, abs_value(w));
                rep.reduced_denominators.push_back(gcd == 0 ? ca.n_prime_abs : ca.n_prime_abs / gcd);
            }
    } catch (const error&) {
        rep.reduced_denominators.clear();
    }
    return rep;
}

} // namespace vfcsr

#endif // VFCSR_ANALYSIS_HPP
