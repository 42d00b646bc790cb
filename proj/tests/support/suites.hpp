// Randomized property suites shared by the unit tests and the acceptance
// binary. Each returns counts plus the first failure for diagnostics.
#ifndef VFCSR_TESTS_SUITES_HPP
#define VFCSR_TESTS_SUITES_HPP

#include <sstream>
#include <string>

#include "oracles.hpp"

namespace suites {

using namespace vfcsr;

struct summary {
    std::size_t registers = 0;
    std::size_t failures = 0;
    std::string first_failure;
    // period suite extras
    std::size_t period_equals_reduced_order = 0;
    std::size_t periodic_within_horizon = 0;
    std::size_t rational_verified = 0;
    std::size_t corollary_applicable = 0;
    std::size_t corollary_holds = 0;       ///< some subsequence moves and the total is N' - 1
    std::size_t corollary_degenerate = 0;  ///< every subsequence constant; total divides d
    std::size_t corollary_violations = 0;

    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
};

inline std::string describe(const register_spec& spec) {
    std::ostringstream os;
    const auto& g = spec.ground;
    os << "p=" << g.p() << " d=" << g.d() << " P=[";
    for (auto c : g.poly()) os << c << ' ';
    os << "] q=";
    for (const auto& c : spec.coeffs) {
        os << '(';
        for (auto v : c.coords) os << v << ' ';
        os << ')';
    }
    return os.str();
}

inline std::vector<std::vector<std::int64_t>> to_raw(const int_matrix& m) {
    std::vector<std::vector<std::int64_t>> raw(m.rows(), std::vector<std::int64_t>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) raw[r][c] = to_int64(m(r, c));
    return raw;
}

/// det(M') = N(det M), det(M') = 1 mod p, det(M) = 1 mod pi, and the
/// diagonal / off-diagonal pattern of M modulo pi.
inline summary norm_suite(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const gen::register_shape shape;  // p in {2,3,5}, n, d <= 3, r <= 6
    summary s;
    for (; s.registers < count; ++s.registers) {
        const auto g = gen::random_ground(rng, shape);
        const auto spec = gen::random_spec(rng, g, shape.max_r);
        const auto a = analyze(spec);
        const big_int p(g.p());
        const auto tag = describe(spec);
        if (a.n_prime != norm_Zpi_to_Z(a.n_pi, g)) s.fail("det(M') != N(det M): " + tag);
        if (floor_mod(a.n_prime, p) != 1) s.fail("det(M') != 1 mod p: " + tag);
        if (floor_mod(a.n_pi.coords[0], p) != 1) s.fail("det(M) != 1 mod pi: " + tag);
        for (int r = 0; r < g.n(); ++r)
            for (int c = 0; c < g.n(); ++c)
                if (floor_mod(a.m(r, c).coords[0], p) != (r == c ? 1 : 0)) s.fail("M pattern mod pi: " + tag);
        // independent routes: grid formula for M', cofactor expansion for det
        const auto via_grid = analyze_connection(connection_from_grid(q_tilde_grid(spec), g), g);
        if (via_grid.m_prime != a.m_prime) s.fail("M' differs between q and q~ grid: " + tag);
        if (g.dim() <= 6 && big_int(oracle::cofactor_det(to_raw(a.m_prime))) != a.n_prime)
            s.fail("Bareiss det differs from cofactor oracle: " + tag);
    }
    return s;
}

struct random_register {
    register_spec spec;
    register_state state;
    big_int n_prime_abs;
};

/// Random register from the default shape with |N'| below `limit`.
inline random_register small_register(std::mt19937_64& rng, const big_int& limit) {
    const gen::register_shape shape;
    for (;;) {
        const auto g = gen::random_ground(rng, shape);
        auto spec = gen::random_spec(rng, g, shape.max_r);
        const auto a = analyze(spec);
        if (a.n_prime_abs >= limit) continue;
        auto state = gen::random_state(rng, spec, shape.memory_magnitude);
        return {std::move(spec), std::move(state), a.n_prime_abs};
    }
}

/// Subsequence periods divide ord, coordinate periods divide d*ord, total is
/// the lcm; each subsequence period also equals ord modulo its reduced
/// denominator, computed by brute force.
inline summary period_suite(std::size_t count, std::uint64_t seed, const big_int& limit = big_int(1000000)) {
    std::mt19937_64 rng(seed);
    summary s;
    for (; s.registers < count; ++s.registers) {
        const auto reg = small_register(rng, limit);
        const auto& g = reg.spec.ground;
        const auto tag = describe(reg.spec);
        period_report rep;
        try {
            rep = theorem2_report(reg.spec, reg.state);
        } catch (const error& e) {
            s.fail(std::string("report failed (") + e.what() + "): " + tag);
            continue;
        }
        ++s.periodic_within_horizon;
        if (!rep.theorem2_ok) s.fail("divisibility violated: " + tag);
        bool exact = !rep.reduced_denominators.empty();
        for (std::size_t i = 0; exact && i < rep.sub_periods.size(); ++i) {
            const auto denom = static_cast<std::uint64_t>(rep.reduced_denominators[i]);
            exact = rep.sub_periods[i].period == oracle::brute_order(static_cast<std::uint64_t>(g.p()), denom);
        }
        if (exact) ++s.period_equals_reduced_order;
        else s.fail("subsequence period != ord(reduced denominator): " + tag);
        if (!rep.reduced_denominators.empty()) ++s.rational_verified;
        if (rep.corollary1_applicable) {
            ++s.corollary_applicable;
            const std::uint64_t full = static_cast<std::uint64_t>(rep.n_prime_abs) - 1;
            bool all_constant = true;
            for (const auto& sp : rep.sub_periods) all_constant = all_constant && sp.period == 1;
            if (all_constant && static_cast<std::uint64_t>(g.d()) % rep.total_period == 0) ++s.corollary_degenerate;
            else if (!all_constant && rep.total_period == full) ++s.corollary_holds;
            else ++s.corollary_violations;
        }
    }
    return s;
}

/// verify_rationality on every register whose period was reached in the horizon.
inline summary rationality_suite(std::size_t count, std::uint64_t seed, const big_int& limit = big_int(1000000)) {
    std::mt19937_64 rng(seed);
    summary s;
    for (; s.registers < count; ++s.registers) {
        const auto reg = small_register(rng, limit);
        const auto tag = describe(reg.spec);
        try {
            (void)theorem2_report(reg.spec, reg.state);
        } catch (const error&) {
            continue;  // not periodic within the horizon: outside the criterion
        }
        ++s.periodic_within_horizon;
        try {
            const auto res = verify_rationality(reg.spec, reg.state);
            if (res.verified) ++s.rational_verified;
            else s.fail("re-expansion mismatch: " + tag);
        } catch (const error& e) {
            s.fail(std::string(e.what()) + ": " + tag);
        }
    }
    return s;
}

/// n = d = 1 against the classical p-ary FCSR.
inline summary scalar_suite(std::size_t count, std::uint64_t seed, std::size_t steps = 200) {
    std::mt19937_64 rng(seed);
    summary s;
    for (; s.registers < count; ++s.registers) {
        const std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7}[gen::pick(rng, 0, 3)];
        const auto& polys = gen::cached_primitive_polys(p, 1);
        const auto g = make_ground_params(p, 1, polys[gen::pick<std::size_t>(rng, 0, polys.size() - 1)]);
        const auto spec = gen::random_spec(rng, g, 8);
        const auto state = gen::random_state(rng, spec, 30);
        std::vector<std::int64_t> q, cells;
        for (const auto& c : spec.coeffs) q.push_back(c[0]);
        for (const auto& c : state.cells) cells.push_back(c[0]);
        const auto expected = oracle::scalar_fcsr(p, q, cells, to_int64(state.memory.at(0, 0)), steps);
        if (simulate(spec, state, steps).row(0) != expected) s.fail("scalar mismatch: " + describe(spec));
    }
    return s;
}

} // namespace suites

#endif // VFCSR_TESTS_SUITES_HPP
