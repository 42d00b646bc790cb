#ifndef VFCSR_SEARCH_HPP
#define VFCSR_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "algebra.hpp"
#include "analysis.hpp"
#include "connection.hpp"
#include "error.hpp"
#include "integer.hpp"
#include "number_theory.hpp"

namespace vfcsr {

struct search_filters {
    bool require_prime = false;
    bool require_primitive_root = false;
    bool require_gcd_d = false;
};

struct search_config {
    ground_params ground;
    /// Max |q~_(k,j)| per slot, basis order.
    std::vector<std::int64_t> bounds;
    /// Enumerate -bound..bound instead of 0..bound.
    bool signed_range = false;
    search_filters filters;
    std::size_t limit = 0;  ///< 0 = unlimited
};

struct candidate {
    std::vector<std::int64_t> q_tilde_grid;  ///< basis order
    big_int n_prime;                         ///< signed det of the multiplication matrix
    big_int n_prime_abs;
    bool is_prime = false;
    bool is_primitive_root = false;
    bool gcd_ok = false;
    u64 ord = 1;
    /// N' - 1 when corollary1_predicate holds, d * ord otherwise.
    u64 predicted_max_period = 1;
};

inline candidate evaluate_grid(const std::vector<std::int64_t>& grid, const ground_params& g) {
    std::vector<big_int> big(grid.begin(), grid.end());
    const ring_element q = connection_from_grid(big, g);
    candidate c;
    c.q_tilde_grid = grid;
    c.n_prime = det_int(mult_matrix_Q(-q, g));
    c.n_prime_abs = abs_value(c.n_prime);
    if (c.n_prime_abs >= (big_int(1) << 63))
        throw error(errc::factorization_budget, "|N'| = " + c.n_prime_abs.str() + " beyond 64-bit search range");
    const auto n = static_cast<u64>(c.n_prime_abs);
    const auto p = static_cast<u64>(g.p());
    c.is_prime = is_prime(n);
    c.ord = order_modulo(g.p(), c.n_prime_abs);
    c.is_primitive_root = c.is_prime && n % p != 0 && c.ord == n - 1;
    c.gcd_ok = n >= 2 && std::gcd(static_cast<u64>(g.d()), n - 1) == 1;
    c.predicted_max_period = (c.is_prime && c.is_primitive_root && c.gcd_ok) ? n - 1 : static_cast<u64>(g.d()) * c.ord;
    return c;
}

inline bool passes(const candidate& c, const search_filters& f) {
    if (f.require_prime && !c.is_prime) return false;
    if (f.require_primitive_root && !c.is_primitive_root) return false;
    if (f.require_gcd_d && !c.gcd_ok) return false;
    return true;
}

/// Number of grids enumerate visits (before filters): product of slot ranges,
/// slots (0, j) restricted to multiples of p.
inline u64 grid_count(const search_config& cfg) {
    const auto& g = cfg.ground;
    u64 total = 1;
    for (int k = 0; k < g.d(); ++k)
        for (int j = 0; j < g.n(); ++j) {
            const std::int64_t b = cfg.bounds[g.basis_index(k, j)];
            const std::int64_t step = k == 0 ? g.p() : 1;
            const u64 half = static_cast<u64>(b / step);
            total *= cfg.signed_range ? 2 * half + 1 : half + 1;
        }
    return total;
}

/// Visits every grid within bounds in lexicographic order of the basis-ordered
/// slots (first slot slowest), calling `sink` for each one that passes the
/// filters. Stops early when sink returns false or the limit is reached.
inline void for_each_candidate(const search_config& cfg, const std::function<bool(const candidate&)>& sink) {
    const auto& g = cfg.ground;
    const std::size_t dim = static_cast<std::size_t>(g.dim());
    if (cfg.bounds.size() != dim) throw error(errc::invalid_argument, "search needs one bound per slot");
    std::vector<std::int64_t> lo(dim), hi(dim), step(dim, 1);
    for (int k = 0; k < g.d(); ++k)
        for (int j = 0; j < g.n(); ++j) {
            const std::size_t s = g.basis_index(k, j);
            if (cfg.bounds[s] < 0) throw error(errc::invalid_argument, "bounds must be >= 0");
            if (k == 0) step[s] = g.p();
            const std::int64_t top = cfg.bounds[s] / step[s] * step[s];
            hi[s] = top;
            lo[s] = cfg.signed_range ? -top : 0;
        }
    std::vector<std::int64_t> grid = lo;
    std::size_t emitted = 0;
    for (;;) {
        const candidate c = evaluate_grid(grid, g);
        if (passes(c, cfg.filters)) {
            ++emitted;
            if (!sink(c)) return;
            if (cfg.limit != 0 && emitted >= cfg.limit) return;
        }
        std::size_t s = dim;
        while (s > 0) {
            --s;
            if (grid[s] < hi[s]) {
                grid[s] += step[s];
                break;
            }
            grid[s] = lo[s];
            if (s == 0) return;
        }
        if (dim == 0) return;
    }
}

inline std::vector<candidate> enumerate(const search_config& cfg) {
    std::vector<candidate> out;
    for_each_candidate(cfg, [&](const candidate& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

/// One (N'; x, y, z, t) row of the p = n = d = 2 table.
struct table1_row {
    std::int64_t n_prime;
    std::int64_t x, y, z, t;
};

struct table1_check {
    table1_row row;
    big_int det;               ///< det of the 4x4 template
    bool det_matches = false;  ///< |det| == listed N'
    bool template_matches_general = false;
    bool is_prime = false;
};

/// Recomputes each row from the explicit 4x4 template and from the general
/// multiplication-by(-q) matrix; primality is reported as is.
inline std::vector<table1_check> reproduce_table1(const std::vector<table1_row>& rows) {
    const ground_params g = make_ground_params(2, 2, {-1, -1, 1});
    std::vector<table1_check> out;
    for (const auto& row : rows) {
        table1_check c{row, 0};
        const int_matrix tpl = specialized_Mprime_2_2(row.x, row.y, row.z, row.t);
        c.det = det_int(tpl);
        c.det_matches = abs_value(c.det) == row.n_prime;
        const ring_element q = connection_from_grid({row.x, row.y, row.z, row.t}, g);
        c.template_matches_general = mult_matrix_Q(-q, g) == tpl;
        c.is_prime = row.n_prime > 1 && is_prime(static_cast<u64>(row.n_prime));
        out.push_back(c);
    }
    return out;
}

} // namespace vfcsr

#endif // VFCSR_SEARCH_HPP
