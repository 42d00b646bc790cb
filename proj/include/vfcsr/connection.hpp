#ifndef VFCSR_CONNECTION_HPP
#define VFCSR_CONNECTION_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "register.hpp"

namespace vfcsr {

/// Everything the connection integer q = -1 + sum q_i pi^i determines.
struct connection_analysis {
    ring_element q;
    /// q~_(k,j) in basis order (see ground_params::basis_index).
    std::vector<big_int> q_tilde_grid;
    /// q~_j = sum_k q~_(k,j) pi^k, j = 0..n-1.
    std::vector<zpi_element> q_tilde_pi;
    int_matrix m_prime;  ///< multiplication by -q over Z, nd x nd
    zpi_matrix m;        ///< multiplication by -q over Z[pi], n x n
    zpi_element n_pi;    ///< det(M)
    big_int n_prime;     ///< det(M'), signed
    big_int n_prime_abs;
};

/// q = -1 + sum_{i=1..r} q_i pi^i, evaluated through mul_ring.
inline ring_element connection_integer(const register_spec& spec) {
    const auto& g = spec.ground;
    ring_element q = -ring_element::one(g);
    for (std::size_t i = 1; i <= spec.r(); ++i)
        q += mul_ring(lift(spec.coeffs[i - 1], g), pi_power(static_cast<int>(i), g), g);
    return q;
}

/// q~_(k,j) = sum over 1 <= di+k <= r of q_j^(di+k) p^i, in basis order.
inline std::vector<big_int> q_tilde_grid(const register_spec& spec) {
    const auto& g = spec.ground;
    std::vector<big_int> grid(static_cast<std::size_t>(g.dim()), big_int(0));
    for (std::size_t idx = 1; idx <= spec.r(); ++idx) {
        const int k = static_cast<int>(idx % g.d());
        const unsigned i = static_cast<unsigned>(idx / g.d());
        const big_int weight = boost::multiprecision::pow(big_int(g.p()), i);
        for (int j = 0; j < g.n(); ++j) grid[g.basis_index(k, j)] += spec.coeffs[idx - 1][j] * weight;
    }
    return grid;
}

/// q = -1 + sum q~_(k,j) pi^k beta^j for a grid in basis order.
inline ring_element connection_from_grid(const std::vector<big_int>& grid, const ground_params& g) {
    if (grid.size() != static_cast<std::size_t>(g.dim())) throw error(errc::invalid_argument, "grid needs n*d entries");
    ring_element q = ring_element::zero(g);
    for (int k = 0; k < g.d(); ++k)
        for (int j = 0; j < g.n(); ++j) q.at(k, j) = grid[g.basis_index(k, j)];
    q.at(0, 0) -= 1;
    return q;
}

/// q = -1 (mod pi): sigma_(0,0) = -1 and sigma_(0,j) = 0 (mod p).
inline bool congruent_minus_one_mod_pi(const ring_element& q, const ground_params& g) {
    for (int j = 0; j < g.n(); ++j) {
        const big_int want = j == 0 ? big_int(g.p() - 1) : big_int(0);
        if (floor_mod(q.at(0, j), big_int(g.p())) != want) return false;
    }
    return true;
}

/// Connection data computed from q alone (shared by analyze and the search).
inline connection_analysis analyze_connection(const ring_element& q, const ground_params& g) {
    connection_analysis a;
    a.q = q;
    a.q_tilde_grid.assign(static_cast<std::size_t>(g.dim()), big_int(0));
    for (int k = 0; k < g.d(); ++k)
        for (int j = 0; j < g.n(); ++j) a.q_tilde_grid[g.basis_index(k, j)] = q.at(k, j) + (k == 0 && j == 0 ? 1 : 0);
    for (int j = 0; j < g.n(); ++j) {
        zpi_element t = zpi_element::zero(g);
        for (int k = 0; k < g.d(); ++k) t.coords[k] = a.q_tilde_grid[g.basis_index(k, j)];
        a.q_tilde_pi.push_back(std::move(t));
    }
    const ring_element minus_q = -q;
    a.m_prime = mult_matrix_Q(minus_q, g);
    a.m = mult_matrix_Zpi(minus_q, g);
    a.n_pi = det_Zpi(a.m, g);
    a.n_prime = det_int(a.m_prime);
    a.n_prime_abs = abs_value(a.n_prime);
    return a;
}

inline connection_analysis analyze(const register_spec& spec) {
    return analyze_connection(connection_integer(spec), spec.ground);
}

/// The 4x4 M' for p = n = d = 2 written out entrywise from (x, y, z, t) =
/// (q~00, q~10, q~01, q~11), beta^2 = beta + 1. Kept as an independent
/// cross-check of mult_matrix_Q.
inline int_matrix specialized_Mprime_2_2(const big_int& x, const big_int& y, const big_int& z, const big_int& t) {
    int_matrix m(4, 4, big_int(0));
    const big_int rows[4][4] = {
        {1 - x, -2 * y, -z, -2 * t},
        {-y, 1 - x, -t, -z},
        {-z, -2 * t, 1 - x - z, -2 * y - 2 * t},
        {-t, -z, -y - t, 1 - x - z},
    };
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = rows[r][c];
    return m;
}

/// Canonical register for q: each delta_(i,j) (q + 1 at (0,0)) is split into
/// base-p digits that all carry sgn(delta_(i,j)); digit k of delta_(i,j) becomes
/// coordinate j of q_(dk+i). Size r = d*s + d - 1, s the largest digit index.
inline register_spec spec_from_connection(const ring_element& q, const ground_params& g) {
    if (q.d() != g.d() || q.n() != g.n()) throw error(errc::invalid_argument, "q shape does not match ground params");
    if (!congruent_minus_one_mod_pi(q, g)) throw error(errc::not_congruent_minus_one, "q is not -1 modulo pi");

    const big_int p(g.p());
    struct digit {
        int index;
        int j;
        std::int64_t value;
    };
    std::vector<digit> digits;
    int s = 0;
    for (int i = 0; i < g.d(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            big_int delta = q.at(i, j) + (i == 0 && j == 0 ? 1 : 0);
            if (delta == 0) continue;
            const int sign = delta < 0 ? -1 : 1;
            big_int mag = abs_value(delta);
            for (int k = 0; mag != 0; ++k) {
                const auto value = static_cast<std::int64_t>(mag % p);
                mag /= p;
                if (value != 0) {
                    digits.push_back({g.d() * k + i, j, sign * value});
                    s = std::max(s, k);
                }
            }
        }
    const int r = std::max(1, g.d() * s + g.d() - 1);
    std::vector<beta_poly> coeffs(static_cast<std::size_t>(r), beta_poly::zero(g));
    for (const auto& dg : digits) {
        // index 0 only occurs for delta_(0,j), which p divides
        coeffs[static_cast<std::size_t>(dg.index - 1)].coords[dg.j] = dg.value;
    }
    return make_register_spec(g, std::move(coeffs));
}

} // namespace vfcsr

#endif // VFCSR_CONNECTION_HPP
