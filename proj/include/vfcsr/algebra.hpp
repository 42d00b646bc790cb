#ifndef VFCSR_ALGEBRA_HPP
#define VFCSR_ALGEBRA_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "number_theory.hpp"

namespace vfcsr {

/// The ring tower Z -> Z[pi] -> Z[pi, beta] with pi^d = p and P(beta) = 0.
///
/// Only obtainable through make_ground_params, which guarantees p prime and
/// P monic of degree n with P mod p primitive over F_p.
class ground_params {
public:
    std::int64_t p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    int d() const noexcept { return d_; }
    int dim() const noexcept { return n_ * d_; }

    /// Lift of P, coefficients low to high, leading 1.
    const std::vector<std::int64_t>& poly() const noexcept { return poly_; }

    /// Coordinates b_t^j of beta^j in {1, beta, ..., beta^(n-1)}, for n <= j <= 2n-2.
    std::span<const std::int64_t> beta_power(int j) const {
        if (j < n_ || j > 2 * n_ - 2) throw error(errc::index_out_of_range, "beta power " + std::to_string(j));
        return {beta_reduction_.data() + static_cast<std::size_t>(j - n_) * n_, static_cast<std::size_t>(n_)};
    }

    /// Position of pi^k beta^j in the basis ordering used by every matrix and
    /// vector indexed over B: k runs fastest, matching (q00, q10, q01, q11).
    std::size_t basis_index(int k, int j) const noexcept { return static_cast<std::size_t>(j) * d_ + k; }

    friend bool operator==(const ground_params& a, const ground_params& b) {
        return a.p_ == b.p_ && a.d_ == b.d_ && a.poly_ == b.poly_;
    }

private:
    friend ground_params make_ground_params(std::int64_t p, int d, std::vector<std::int64_t> poly);
    ground_params() = default;

    std::int64_t p_ = 2;
    int n_ = 1;
    int d_ = 1;
    std::vector<std::int64_t> poly_;
    std::vector<std::int64_t> beta_reduction_;  // row j-n holds b_t^j, t = 0..n-1
};

namespace detail {

// Polynomials over F_p modulo a monic P-bar of degree n, as residue vectors.
class fp_quotient {
public:
    fp_quotient(u64 p, std::vector<u64> poly) : p_(p), poly_(std::move(poly)), n_(poly_.size() - 1) {}

    std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const {
        std::vector<u64> wide(2 * n_ - 1, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) wide[i + j] = (wide[i + j] + mul_mod(a[i], b[j], p_)) % p_;
        for (std::size_t k = wide.size(); k-- > n_;) {
            const u64 top = wide[k];
            if (top == 0) continue;
            // X^n = -sum P_i X^i
            for (std::size_t i = 0; i < n_; ++i)
                wide[k - n_ + i] = (wide[k - n_ + i] + p_ - mul_mod(top, poly_[i], p_)) % p_;
            wide[k] = 0;
        }
        wide.resize(n_);
        return wide;
    }

    std::vector<u64> x_power(u64 e) const {
        std::vector<u64> result(n_, 0), base(n_, 0);
        result[0] = 1;
        if (n_ == 1) {
            base[0] = (p_ - poly_[0]) % p_;
        } else {
            base[1] = 1;
        }
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    bool is_one(const std::vector<u64>& a) const {
        if (a[0] != 1 % p_) return false;
        for (std::size_t i = 1; i < n_; ++i)
            if (a[i] != 0) return false;
        return true;
    }

private:
    u64 p_;
    std::vector<u64> poly_;
    std::size_t n_;
};

inline u64 field_order_minus_one(std::int64_t p, int n) {
    u128 acc = 1;
    for (int i = 0; i < n; ++i) {
        acc *= static_cast<u64>(p);
        if (acc >= (static_cast<u128>(1) << 63))
            throw error(errc::factorization_budget, "p^n - 1 exceeds 2^63");
    }
    return static_cast<u64>(acc) - 1;
}

} // namespace detail

/// True iff beta = X has multiplicative order p^n - 1 in F_p[X]/(P mod p),
/// i.e. P mod p is irreducible and primitive.
inline bool is_primitive_mod_p(std::int64_t p, const std::vector<std::int64_t>& poly) {
    const int n = static_cast<int>(poly.size()) - 1;
    std::vector<u64> reduced(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) reduced[i] = static_cast<u64>(floor_mod(poly[i], p));
    if (reduced.back() != 1) return false;
    detail::fp_quotient ring(static_cast<u64>(p), reduced);
    const u64 order = detail::field_order_minus_one(p, n);
    if (!ring.is_one(ring.x_power(order))) return false;
    if (order == 1) return true;
    for (const auto& [q, e] : factorize(order))
        if (ring.is_one(ring.x_power(order / q))) return false;
    return true;
}

inline ground_params make_ground_params(std::int64_t p, int d, std::vector<std::int64_t> poly) {
    if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(static_cast<u64>(p)))
        throw error(errc::not_prime, std::to_string(p) + " is not a prime below 2^31");
    if (d < 1) throw error(errc::invalid_argument, "ramification index d must be >= 1");
    if (poly.size() < 2) throw error(errc::degree_zero, "P must have degree >= 1");
    if (poly.back() != 1) throw error(errc::invalid_argument, "P must be monic");
    if (!is_primitive_mod_p(p, poly)) throw error(errc::not_primitive_polynomial, "P mod p is not primitive");

    ground_params g;
    g.p_ = p;
    g.d_ = d;
    g.n_ = static_cast<int>(poly.size()) - 1;
    g.poly_ = std::move(poly);

    const int n = g.n_;
    if (n >= 2) {
        // current = beta^(n-1); multiply by beta and fold the top term back.
        std::vector<big_int> current(n, big_int(0));
        current[n - 1] = 1;
        g.beta_reduction_.reserve(static_cast<std::size_t>(n) * (n - 1));
        for (int j = n; j <= 2 * n - 2; ++j) {
            const big_int top = current[n - 1];
            for (int t = n - 1; t > 0; --t) current[t] = current[t - 1];
            current[0] = 0;
            for (int t = 0; t < n; ++t) current[t] -= top * g.poly_[t];
            for (int t = 0; t < n; ++t) g.beta_reduction_.push_back(to_int64(current[t]));
        }
    }
    return g;
}

/// Element sum c_j beta^j of Z[beta]; cell values and register coefficients.
struct beta_poly {
    std::vector<std::int64_t> coords;

    beta_poly() = default;
    explicit beta_poly(std::vector<std::int64_t> c) : coords(std::move(c)) {}
    static beta_poly zero(const ground_params& g) { return beta_poly(std::vector<std::int64_t>(g.n(), 0)); }

    std::size_t size() const noexcept { return coords.size(); }
    std::int64_t operator[](std::size_t j) const { return coords[j]; }
    bool is_zero() const noexcept {
        for (auto c : coords)
            if (c != 0) return false;
        return true;
    }

    friend bool operator==(const beta_poly&, const beta_poly&) = default;
};

/// Element of Z[pi, beta] stored as a d x n grid: coordinate (k, j) is the
/// coefficient of pi^k beta^j. Templated on the integer type so the register
/// can run on checked int64 and fall back to big_int.
template <class Int>
class basic_ring_element {
public:
    basic_ring_element() = default;
    basic_ring_element(int d, int n) : d_(d), n_(n), coords_(static_cast<std::size_t>(d) * n, Int(0)) {}

    static basic_ring_element zero(const ground_params& g) { return {g.d(), g.n()}; }
    static basic_ring_element one(const ground_params& g) {
        basic_ring_element e(g.d(), g.n());
        e.at(0, 0) = Int(1);
        return e;
    }
    /// pi^k beta^j for 0 <= k < d, 0 <= j < n.
    static basic_ring_element basis(const ground_params& g, int k, int j) {
        basic_ring_element e(g.d(), g.n());
        e.at(k, j) = Int(1);
        return e;
    }
    /// rows[k][j] = coefficient of pi^k beta^j.
    static basic_ring_element from_rows(const ground_params& g, const std::vector<std::vector<Int>>& rows) {
        if (rows.size() != static_cast<std::size_t>(g.d()))
            throw error(errc::invalid_argument, "ring element needs d rows");
        basic_ring_element e(g.d(), g.n());
        for (int k = 0; k < g.d(); ++k) {
            if (rows[k].size() != static_cast<std::size_t>(g.n()))
                throw error(errc::invalid_argument, "ring element rows need n entries");
            for (int j = 0; j < g.n(); ++j) e.at(k, j) = rows[k][j];
        }
        return e;
    }

    int d() const noexcept { return d_; }
    int n() const noexcept { return n_; }

    Int& at(int k, int j) { return coords_[static_cast<std::size_t>(k) * n_ + j]; }
    const Int& at(int k, int j) const { return coords_[static_cast<std::size_t>(k) * n_ + j]; }

    std::span<const Int> coords() const noexcept { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (c != Int(0)) return false;
        return true;
    }

    basic_ring_element& operator+=(const basic_ring_element& o) {
        check_shape(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    basic_ring_element& operator-=(const basic_ring_element& o) {
        check_shape(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    friend basic_ring_element operator+(basic_ring_element a, const basic_ring_element& b) { return a += b; }
    friend basic_ring_element operator-(basic_ring_element a, const basic_ring_element& b) { return a -= b; }
    basic_ring_element operator-() const {
        basic_ring_element r(d_, n_);
        for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = Int(-coords_[i]);
        return r;
    }

    friend bool operator==(const basic_ring_element&, const basic_ring_element&) = default;

private:
    void check_shape(const basic_ring_element& o) const {
        if (o.d_ != d_ || o.n_ != n_) throw error(errc::invalid_argument, "ring elements of different shape");
    }

    int d_ = 0;
    int n_ = 0;
    std::vector<Int> coords_;
};

using ring_element = basic_ring_element<big_int>;

template <class To, class From>
basic_ring_element<To> convert(const basic_ring_element<From>& e) {
    basic_ring_element<To> out(e.d(), e.n());
    for (int k = 0; k < e.d(); ++k)
        for (int j = 0; j < e.n(); ++j) out.at(k, j) = from_big<To>(to_big(e.at(k, j)));
    return out;
}

/// Element sum c_k pi^k of Z[pi].
struct zpi_element {
    std::vector<big_int> coords;

    zpi_element() = default;
    explicit zpi_element(std::vector<big_int> c) : coords(std::move(c)) {}
    static zpi_element zero(const ground_params& g) { return zpi_element(std::vector<big_int>(g.d(), big_int(0))); }
    static zpi_element one(const ground_params& g) {
        auto e = zero(g);
        e.coords[0] = 1;
        return e;
    }

    friend bool operator==(const zpi_element&, const zpi_element&) = default;
};

using zpi_matrix = matrix<zpi_element>;

/// Arithmetic of Z[pi] (pi^d = p) in the shape det_cofactor expects.
struct zpi_ring {
    const ground_params& g;

    zpi_element zero() const { return zpi_element::zero(g); }
    zpi_element one() const { return zpi_element::one(g); }
    zpi_element add(const zpi_element& a, const zpi_element& b) const {
        zpi_element r = a;
        for (int k = 0; k < g.d(); ++k) r.coords[k] += b.coords[k];
        return r;
    }
    zpi_element sub(const zpi_element& a, const zpi_element& b) const {
        zpi_element r = a;
        for (int k = 0; k < g.d(); ++k) r.coords[k] -= b.coords[k];
        return r;
    }
    zpi_element mul(const zpi_element& a, const zpi_element& b) const {
        const int d = g.d();
        zpi_element r = zero();
        for (int i = 0; i < d; ++i) {
            if (a.coords[i] == 0) continue;
            for (int j = 0; j < d; ++j) {
                big_int c = a.coords[i] * b.coords[j];
                if (i + j >= d) r.coords[i + j - d] += c * g.p();
                else r.coords[i + j] += c;
            }
        }
        return r;
    }
};

/// Product in Z[pi, beta]: pi^d folds to p, beta^j (j >= n) folds through P.
template <class Int>
basic_ring_element<Int> mul_ring(const basic_ring_element<Int>& a, const basic_ring_element<Int>& b,
                                 const ground_params& g) {
    const int d = g.d(), n = g.n();
    if (a.d() != d || a.n() != n || b.d() != d || b.n() != n)
        throw error(errc::invalid_argument, "ring element shape does not match ground params");
    const int width = 2 * n - 1;
    std::vector<Int> wide(static_cast<std::size_t>(d) * width, Int(0));
    const Int p(g.p());
    for (int k1 = 0; k1 < d; ++k1)
        for (int j1 = 0; j1 < n; ++j1) {
            const Int& x = a.at(k1, j1);
            if (x == Int(0)) continue;
            for (int k2 = 0; k2 < d; ++k2)
                for (int j2 = 0; j2 < n; ++j2) {
                    const Int& y = b.at(k2, j2);
                    if (y == Int(0)) continue;
                    Int c = x * y;
                    int k = k1 + k2;
                    if (k >= d) {
                        k -= d;
                        c = c * p;
                    }
                    wide[static_cast<std::size_t>(k) * width + j1 + j2] += c;
                }
        }
    basic_ring_element<Int> out(d, n);
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < n; ++j) out.at(k, j) = wide[static_cast<std::size_t>(k) * width + j];
        for (int j = n; j < width; ++j) {
            const Int& c = wide[static_cast<std::size_t>(k) * width + j];
            if (c == Int(0)) continue;
            auto b_j = g.beta_power(j);
            for (int t = 0; t < n; ++t) out.at(k, t) += c * Int(b_j[t]);
        }
    }
    return out;
}

/// Canonical embedding Z[beta] -> Z[pi, beta] (the pi^0 row).
template <class Int = big_int>
basic_ring_element<Int> lift(const beta_poly& a, const ground_params& g) {
    if (a.size() != static_cast<std::size_t>(g.n())) throw error(errc::invalid_argument, "beta_poly needs n coordinates");
    basic_ring_element<Int> e(g.d(), g.n());
    for (int j = 0; j < g.n(); ++j) e.at(0, j) = Int(a[j]);
    return e;
}

/// pi^e as a ring element (pi^(dq+k) = p^q pi^k).
inline ring_element pi_power(int e, const ground_params& g) {
    if (e < 0) throw error(errc::invalid_argument, "negative pi exponent");
    ring_element r = ring_element::zero(g);
    big_int scale = boost::multiprecision::pow(big_int(g.p()), static_cast<unsigned>(e / g.d()));
    r.at(e % g.d(), 0) = scale;
    return r;
}

/// Product in Z[beta] with beta-power folding; used by the register step.
inline beta_poly mul_beta(const beta_poly& a, const beta_poly& b, const ground_params& g) {
    const int n = g.n();
    std::vector<checked_int> wide(2 * n - 1, checked_int(0));
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n; ++j) wide[i + j] += checked_int(a[i]) * checked_int(b[j]);
    }
    std::vector<std::int64_t> out(n);
    for (int t = 0; t < n; ++t) out[t] = wide[t].value();
    for (int j = n; j < 2 * n - 1; ++j) {
        if (wide[j] == checked_int(0)) continue;
        auto b_j = g.beta_power(j);
        for (int t = 0; t < n; ++t) out[t] = (checked_int(out[t]) + wide[j] * checked_int(b_j[t])).value();
    }
    return beta_poly(std::move(out));
}

/// Reduction modulo pi: the pi^0 row, each coordinate taken into {0, ..., p-1}.
template <class Int>
beta_poly mod_p(const basic_ring_element<Int>& a, const ground_params& g) {
    std::vector<std::int64_t> out(g.n());
    const Int p(g.p());
    for (int j = 0; j < g.n(); ++j) out[j] = to_int64(to_big(floor_mod(a.at(0, j), p)));
    return beta_poly(std::move(out));
}

/// nd x nd integer matrix of multiplication by a over Z; column basis_index(k, j)
/// holds the coordinates of a * pi^k beta^j.
inline int_matrix mult_matrix_Q(const ring_element& a, const ground_params& g) {
    const std::size_t dim = static_cast<std::size_t>(g.dim());
    int_matrix m(dim, dim, big_int(0));
    for (int k = 0; k < g.d(); ++k)
        for (int j = 0; j < g.n(); ++j) {
            const ring_element image = mul_ring(a, ring_element::basis(g, k, j), g);
            const std::size_t col = g.basis_index(k, j);
            for (int kk = 0; kk < g.d(); ++kk)
                for (int jj = 0; jj < g.n(); ++jj) m(g.basis_index(kk, jj), col) = image.at(kk, jj);
        }
    return m;
}

/// n x n matrix over Z[pi] of multiplication by a; column j holds a * beta^j.
inline zpi_matrix mult_matrix_Zpi(const ring_element& a, const ground_params& g) {
    const std::size_t n = static_cast<std::size_t>(g.n());
    zpi_matrix m(n, n, zpi_element::zero(g));
    for (int j = 0; j < g.n(); ++j) {
        const ring_element image = mul_ring(a, ring_element::basis(g, 0, j), g);
        for (int jj = 0; jj < g.n(); ++jj)
            for (int k = 0; k < g.d(); ++k) m(jj, j).coords[k] = image.at(k, jj);
    }
    return m;
}

inline zpi_element det_Zpi(const zpi_matrix& m, const ground_params& g) {
    return det_cofactor(m, zpi_ring{g});
}

/// d x d multiplication-by-x matrix on {1, pi, ..., pi^(d-1)}: x_(r-c) on and
/// below the diagonal, p * x_(r-c+d) above it.
inline int_matrix norm_matrix_Zpi(const zpi_element& x, const ground_params& g) {
    const int d = g.d();
    if (x.coords.size() != static_cast<std::size_t>(d)) throw error(errc::invalid_argument, "Z[pi] element needs d coordinates");
    int_matrix m(d, d, big_int(0));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = r >= c ? x.coords[r - c] : x.coords[r - c + d] * g.p();
    return m;
}

inline big_int norm_Zpi_to_Z(const zpi_element& x, const ground_params& g) {
    return det_int(norm_matrix_Zpi(x, g));
}

} // namespace vfcsr

#endif // VFCSR_ALGEBRA_HPP
