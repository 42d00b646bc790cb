#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include <vfcsr/json_io.hpp>

#include "support/oracles.hpp"

using namespace vfcsr;

namespace {

register_spec load_spec(const std::string& name) {
    std::ifstream in(std::string(VFCSR_FIXTURE_DIR) + "/" + name);
    return json_io::spec_from_json(json_io::json::parse(in).at("spec"));
}

std::vector<big_int> grid(std::initializer_list<std::int64_t> v) { return {v.begin(), v.end()}; }

ground_params fib() { return make_ground_params(2, 2, {-1, -1, 1}); }

bool divisible(const big_int& v, std::int64_t p) { return floor_mod(v, big_int(p)) == 0; }

} // namespace

TEST(Connection, Norm151Register) {
    const auto a = analyze(load_spec("example1.json"));
    EXPECT_EQ(a.q_tilde_grid, grid({0, 1, 2, 2}));
    EXPECT_EQ(a.n_prime, -151);
    EXPECT_EQ(a.n_prime_abs, 151);
    EXPECT_EQ(a.n_pi, zpi_element({-7, -10}));
}

TEST(Connection, Norm401Register) {
    const auto a = analyze(load_spec("example2.json"));
    EXPECT_EQ(a.q_tilde_grid, grid({0, 3, 0, 2}));
    EXPECT_EQ(a.n_prime_abs, 401);
    EXPECT_EQ(a.n_pi, zpi_element({23, -8}));
}

TEST(Connection, Norm409Register) {
    const auto a = analyze(load_spec("example3.json"));
    EXPECT_EQ(a.q_tilde_grid, grid({0, 1, 4, 3}));
    EXPECT_EQ(a.n_prime_abs, 409);
}

TEST(Connection, TrivialConnectionIsMinusOne) {
    const auto g = fib();
    const auto spec = make_register_spec(g, {beta_poly({0, 0})});
    const auto a = analyze(spec);
    EXPECT_EQ(a.q, -ring_element::one(g));
    EXPECT_EQ(a.m_prime, identity_matrix(4));
    EXPECT_EQ(a.n_prime, 1);
}

TEST(Connection, GridFormulaMatchesRingEvaluation) {
    std::mt19937_64 rng(31);
    const gen::register_shape shape;
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = gen::random_ground(rng, shape);
        const auto spec = gen::random_spec(rng, g, shape.max_r);
        const auto q = connection_integer(spec);
        EXPECT_EQ(q_tilde_grid(spec), analyze(spec).q_tilde_grid);
        EXPECT_EQ(connection_from_grid(q_tilde_grid(spec), g), q);
        EXPECT_TRUE(congruent_minus_one_mod_pi(q, g));
    }
}

TEST(Connection, TemplateEqualsGeneralMatrix) {
    const auto g = fib();
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        const std::int64_t x = 2 * gen::pick<std::int64_t>(rng, -10, 10), y = gen::pick<std::int64_t>(rng, -10, 10),
                           z = 2 * gen::pick<std::int64_t>(rng, -10, 10), t = gen::pick<std::int64_t>(rng, -10, 10);
        const auto a = analyze_connection(connection_from_grid(grid({x, y, z, t}), g), g);
        EXPECT_EQ(specialized_Mprime_2_2(x, y, z, t), a.m_prime);
    }
}

// det(M') = N(det M); det(M') = 1 mod p; M = I mod pi.
TEST(Connection, NormInvariantsOnRandomRegisters) {
    std::mt19937_64 rng(33);
    const gen::register_shape shape;
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = gen::random_ground(rng, shape);
        const auto spec = gen::random_spec(rng, g, shape.max_r);
        const auto a = analyze(spec);
        const std::int64_t p = g.p();
        EXPECT_EQ(a.n_prime, norm_Zpi_to_Z(a.n_pi, g));
        EXPECT_EQ(floor_mod(a.n_prime, big_int(p)), 1);
        EXPECT_EQ(floor_mod(a.n_pi.coords[0], big_int(p)), 1);
        for (int r = 0; r < g.n(); ++r)
            for (int c = 0; c < g.n(); ++c) {
                const big_int& lead = a.m(r, c).coords[0];
                if (r == c) EXPECT_EQ(floor_mod(lead, big_int(p)), 1);
                else EXPECT_TRUE(divisible(lead, p));
            }
    }
}

TEST(Connection, LargeDeterminantsStayExact) {
    const auto g = make_ground_params(5, 3, {2, 3, 0, 1});
    std::vector<big_int> q_grid(static_cast<std::size_t>(g.dim()));
    for (int k = 0; k < g.d(); ++k)
        for (int j = 0; j < g.n(); ++j)
            q_grid[g.basis_index(k, j)] = (k == 0 ? big_int(5) : big_int(1)) * (big_int(1) << 40) * (k + j + 1);
    const auto a = analyze_connection(connection_from_grid(q_grid, g), g);
    EXPECT_EQ(a.n_prime, norm_Zpi_to_Z(a.n_pi, g));
    EXPECT_EQ(floor_mod(a.n_prime, big_int(5)), 1);
}

TEST(Connection, SpecFromConnectionRoundTrips) {
    std::mt19937_64 rng(34);
    const gen::register_shape shape;
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = gen::random_ground(rng, shape);
        const auto spec = gen::random_spec(rng, g, shape.max_r);
        const auto q = connection_integer(spec);
        const auto rebuilt = spec_from_connection(q, g);
        EXPECT_EQ(connection_integer(rebuilt), q);
        EXPECT_EQ(analyze(rebuilt).n_prime, analyze(spec).n_prime);
    }
}

TEST(Connection, SpecFromConnectionKnownCases) {
    const auto g = fib();
    const auto ex1 = load_spec("example1.json");
    const auto rebuilt = spec_from_connection(connection_integer(ex1), g);
    EXPECT_EQ(rebuilt.coeffs, ex1.coeffs);
    // q = -1 gives the one-cell all-zero register
    const auto trivial = spec_from_connection(-ring_element::one(g), g);
    EXPECT_EQ(trivial.r(), 1u);
    EXPECT_EQ(analyze(trivial).n_prime, 1);
}

TEST(Connection, RejectsQNotMinusOneModPi) {
    const auto g = fib();
    try {
        spec_from_connection(ring_element::zero(g), g);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_congruent_minus_one);
    }
    auto q = -ring_element::one(g);
    q.at(0, 1) = 1;
    EXPECT_FALSE(congruent_minus_one_mod_pi(q, g));
}
