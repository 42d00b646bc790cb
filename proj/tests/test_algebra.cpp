#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"

using namespace vfcsr;

namespace {

ground_params fib() { return make_ground_params(2, 2, {-1, -1, 1}); }

ring_element elem(const ground_params& g, std::vector<std::vector<std::int64_t>> rows) {
    std::vector<std::vector<big_int>> big;
    for (auto& r : rows) big.emplace_back(r.begin(), r.end());
    return ring_element::from_rows(g, big);
}

} // namespace

TEST(GroundParams, AcceptsFibonacciPolynomial) {
    const auto g = fib();
    EXPECT_EQ(g.p(), 2);
    EXPECT_EQ(g.n(), 2);
    EXPECT_EQ(g.d(), 2);
    EXPECT_EQ(g.dim(), 4);
    const auto b2 = g.beta_power(2);
    EXPECT_EQ(std::vector<std::int64_t>(b2.begin(), b2.end()), (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(g.basis_index(1, 0), 1u);
    EXPECT_EQ(g.basis_index(0, 1), 2u);
}

TEST(GroundParams, RejectsBadInput) {
    auto code = [](auto&& f) {
        try {
            f();
        } catch (const error& e) {
            return e.code();
        }
        return errc::invalid_argument;  // unreachable in these cases
    };
    EXPECT_EQ(code([] { make_ground_params(4, 2, {-1, -1, 1}); }), errc::not_prime);
    EXPECT_EQ(code([] { make_ground_params(1, 2, {-1, -1, 1}); }), errc::not_prime);
    EXPECT_EQ(code([] { make_ground_params(2, 2, {1, 0, 1}); }), errc::not_primitive_polynomial);
    EXPECT_EQ(code([] { make_ground_params(2, 2, {1}); }), errc::degree_zero);
    EXPECT_EQ(code([] { make_ground_params(2, 0, {-1, -1, 1}); }), errc::invalid_argument);
    EXPECT_EQ(code([] { make_ground_params(2, 2, {1, 1, 3}); }), errc::invalid_argument);
    EXPECT_THROW(fib().beta_power(1), error);
}

TEST(GroundParams, PrimitivityAgreesWithBruteForce) {
    for (std::int64_t p : {2, 3, 5}) {
        for (int n = 1; n <= 3; ++n) {
            std::vector<std::int64_t> poly(static_cast<std::size_t>(n) + 1, 0);
            poly.back() = 1;
            for (;;) {
                EXPECT_EQ(is_primitive_mod_p(p, poly), oracle::brute_primitive(p, poly)) << "p=" << p << " n=" << n;
                std::size_t i = 0;
                while (i < static_cast<std::size_t>(n) && ++poly[i] == p) poly[i++] = 0;
                if (i == static_cast<std::size_t>(n)) break;
            }
        }
    }
}

TEST(Ring, BetaSquaredIsBetaPlusOne) {
    const auto g = fib();
    const auto beta = ring_element::basis(g, 0, 1);
    EXPECT_EQ(mul_ring(beta, beta, g), elem(g, {{1, 1}, {0, 0}}));
}

TEST(Ring, PiToTheDIsP) {
    for (int d = 1; d <= 4; ++d) {
        const auto g = make_ground_params(3, d, {1, 1});  // beta = -1, a primitive root of F_3
        EXPECT_EQ(pi_power(d, g), elem(g, [&] {
                      std::vector<std::vector<std::int64_t>> r(static_cast<std::size_t>(d), {0});
                      r[0][0] = 3;
                      return r;
                  }()));
    }
}

TEST(Ring, MultiplicationLawsOnRandomElements) {
    std::mt19937_64 rng(11);
    const gen::register_shape shape;
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = gen::random_ground(rng, shape);
        const auto a = gen::random_element(rng, g, 9), b = gen::random_element(rng, g, 9),
                   c = gen::random_element(rng, g, 9);
        EXPECT_EQ(mul_ring(a, b, g), mul_ring(b, a, g));
        EXPECT_EQ(mul_ring(mul_ring(a, b, g), c, g), mul_ring(a, mul_ring(b, c, g), g));
        EXPECT_EQ(mul_ring(a, b + c, g), mul_ring(a, b, g) + mul_ring(a, c, g));
        EXPECT_EQ(mul_ring(a, ring_element::one(g), g), a);
    }
}

TEST(Ring, CheckedAndBigIntAgree) {
    std::mt19937_64 rng(12);
    const gen::register_shape shape;
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = gen::random_ground(rng, shape);
        const auto a = gen::random_element(rng, g, 1000), b = gen::random_element(rng, g, 1000);
        EXPECT_EQ(convert<big_int>(mul_ring(convert<checked_int>(a), convert<checked_int>(b), g)), mul_ring(a, b, g));
    }
}

TEST(Ring, CheckedIntReportsOverflow) {
    const checked_int big(std::int64_t{1} << 62);
    try {
        (void)(big + big);
        FAIL() << "expected overflow";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::overflow);
    }
    EXPECT_THROW((void)(big * checked_int(4)), error);
}

TEST(Ring, ModPReducesRowZero) {
    const auto g = fib();
    EXPECT_EQ(mod_p(elem(g, {{5, -1}, {0, 4}}), g), beta_poly({1, 1}));
}

TEST(Ring, MulBetaMatchesLiftedProduct) {
    const auto g = fib();
    const beta_poly one_plus_beta({1, 1}), beta({0, 1});
    EXPECT_EQ(mul_beta(one_plus_beta, beta, g), beta_poly({1, 2}));  // beta + beta^2 = 1 + 2 beta
}

TEST(MultMatrix, ColumnsAreImagesOfBasis) {
    std::mt19937_64 rng(13);
    const gen::register_shape shape;
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = gen::random_ground(rng, shape);
        const auto a = gen::random_element(rng, g, 5), b = gen::random_element(rng, g, 5);
        const auto m = mult_matrix_Q(a, g);
        std::vector<big_int> bv(static_cast<std::size_t>(g.dim()));
        for (int k = 0; k < g.d(); ++k)
            for (int j = 0; j < g.n(); ++j) bv[g.basis_index(k, j)] = b.at(k, j);
        const auto prod = mul_ring(a, b, g);
        const auto image = m * bv;
        for (int k = 0; k < g.d(); ++k)
            for (int j = 0; j < g.n(); ++j) EXPECT_EQ(image[g.basis_index(k, j)], prod.at(k, j));
    }
}

TEST(MultMatrix, Norm151Chain) {
    const auto g = fib();
    // -q for q = -1 + pi + 2 beta + 2 pi beta
    const auto minus_q = elem(g, {{1, -2}, {-1, -2}});
    const auto n_pi = det_Zpi(mult_matrix_Zpi(minus_q, g), g);
    EXPECT_EQ(n_pi, zpi_element({-7, -10}));
    EXPECT_EQ(norm_Zpi_to_Z(n_pi, g), -151);
    EXPECT_EQ(det_int(mult_matrix_Q(minus_q, g)), -151);
}

TEST(MultMatrix, NormOfZpiKnownValues) {
    const auto g = fib();
    EXPECT_EQ(norm_Zpi_to_Z(zpi_element({-7, -10}), g), 49 - 200);
    EXPECT_EQ(norm_Zpi_to_Z(zpi_element({23, -8}), g), 529 - 128);
    const auto g3 = make_ground_params(2, 3, {-1, -1, 1});
    // x0^3 + p x1^3 + p^2 x2^3 - 3 p x0 x1 x2 for x = 1 + pi + pi^2, p = 2
    EXPECT_EQ(norm_Zpi_to_Z(zpi_element({1, 1, 1}), g3), 1 + 2 + 4 - 6);
}

TEST(Determinant, BareissMatchesCofactorOracle) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = gen::pick<std::size_t>(rng, 1, 6);
        std::vector<std::vector<std::int64_t>> raw(n, std::vector<std::int64_t>(n));
        int_matrix m(n, n, big_int(0));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                // sparse rows exercise the pivot swap
                raw[r][c] = gen::pick(rng, 0, 3) == 0 ? 0 : gen::pick<std::int64_t>(rng, -20, 20);
                m(r, c) = raw[r][c];
            }
        EXPECT_EQ(det_int(m), oracle::cofactor_det(raw));
    }
}

TEST(Determinant, RejectsNonSquare) {
    EXPECT_THROW(det_int(int_matrix(2, 3, big_int(0))), error);
    EXPECT_EQ(det_int(int_matrix(0, 0, big_int(0))), 1);
}

TEST(NumberTheory, PrimalityMatchesTrialDivision) {
    for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), oracle::trial_division_prime(n)) << n;
    EXPECT_TRUE(is_prime(151));
    EXPECT_TRUE(is_prime(409));
    EXPECT_FALSE(is_prime(1025));
    EXPECT_TRUE(is_prime(18446744073709551557ULL));
    EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(NumberTheory, FactorizeRecombines) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t n = gen::pick<std::uint64_t>(rng, 2, std::uint64_t{1} << 50);
        std::uint64_t product = 1;
        for (const auto& [q, e] : factorize(n)) {
            if (q < (1u << 24)) {
                EXPECT_TRUE(oracle::trial_division_prime(q)) << q;
            }
            EXPECT_TRUE(is_prime(q));
            for (int i = 0; i < e; ++i) product *= q;
        }
        EXPECT_EQ(product, n);
    }
    EXPECT_EQ(factorize(1025), (std::map<std::uint64_t, int>{{5, 2}, {41, 1}}));
}

TEST(NumberTheory, OrdersOfTwo) {
    EXPECT_EQ(mult_order(2, 151), 15u);
    EXPECT_EQ(mult_order(2, 401), 200u);
    EXPECT_EQ(mult_order(2, 409), 204u);
    EXPECT_EQ(mult_order(2, 3), 2u);
}

TEST(NumberTheory, OrderMatchesBruteForceBothPaths) {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t m = gen::pick<std::uint64_t>(rng, 2, 300000);
        const std::uint64_t a = gen::pick<std::uint64_t>(rng, 2, 7);
        if (std::gcd(a, m) != 1) continue;
        EXPECT_EQ(mult_order(a, m), oracle::brute_order(a, m)) << a << " mod " << m;
        EXPECT_EQ(detail::mult_order_factored(a, m), oracle::brute_order(a, m));
    }
}

TEST(NumberTheory, OrderErrors) {
    auto code = [](std::uint64_t a, std::uint64_t m) {
        try {
            mult_order(a, m);
        } catch (const error& e) {
            return e.code();
        }
        return errc::invalid_argument;
    };
    EXPECT_EQ(code(2, 1), errc::modulus_too_small);
    EXPECT_EQ(code(2, 10), errc::not_coprime);
}

TEST(NumberTheory, EulerPhi) {
    for (std::uint64_t n = 1; n < 2000; ++n) {
        std::uint64_t count = 0;
        for (std::uint64_t k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
        ASSERT_EQ(euler_phi(n), count) << n;
    }
}
