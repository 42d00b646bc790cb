#ifndef VFCSR_MATRIX_HPP
#define VFCSR_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "error.hpp"
#include "integer.hpp"

namespace vfcsr {

/// Dense row-major matrix of values.
template <class T>
class matrix {
public:
    matrix() = default;
    matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const matrix&, const matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using int_matrix = matrix<big_int>;

inline int_matrix identity_matrix(std::size_t n) {
    int_matrix m(n, n, big_int(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

inline int_matrix operator*(const int_matrix& a, const int_matrix& b) {
    if (a.cols() != b.rows()) throw error(errc::invalid_argument, "matrix shapes do not chain");
    int_matrix out(a.rows(), b.cols(), big_int(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

inline std::vector<big_int> operator*(const int_matrix& a, const std::vector<big_int>& v) {
    if (a.cols() != v.size()) throw error(errc::invalid_argument, "matrix/vector shapes differ");
    std::vector<big_int> out(a.rows(), big_int(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
    return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination. Every division
/// is exact, so no rationals or floating point appear.
inline big_int det_int(int_matrix m) {
    if (!m.square()) throw error(errc::non_square, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    big_int sign = 1;
    big_int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Division-free cofactor expansion over any commutative ring.
/// `ring` supplies zero(), one(), add(a,b), sub(a,b), mul(a,b).
/// Cost is O(n!) so this is meant for the small n x n norm matrices.
template <class T, class Ring>
T det_cofactor(const matrix<T>& m, const Ring& ring) {
    if (!m.square()) throw error(errc::non_square, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return ring.one();
    if (n == 1) return m(0, 0);
    T acc = ring.zero();
    for (std::size_t c = 0; c < n; ++c) {
        matrix<T> minor(n - 1, n - 1, ring.zero());
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t cc = 0, mc = 0; cc < n; ++cc) {
                if (cc == c) continue;
                minor(r - 1, mc++) = m(r, cc);
            }
        T term = ring.mul(m(0, c), det_cofactor(minor, ring));
        acc = (c % 2 == 0) ? ring.add(acc, term) : ring.sub(acc, term);
    }
    return acc;
}

} // namespace vfcsr

#endif // VFCSR_MATRIX_HPP
