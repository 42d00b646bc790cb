#ifndef VFCSR_REGISTER_HPP
#define VFCSR_REGISTER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "integer.hpp"

namespace vfcsr {

/// Connection coefficients q_1..q_r over S[beta], S = {0, +-1, ..., +-(p-1)}.
struct register_spec {
    ground_params ground;
    std::vector<beta_poly> coeffs;

    std::size_t r() const noexcept { return coeffs.size(); }
};

inline register_spec make_register_spec(ground_params g, std::vector<beta_poly> coeffs) {
    if (coeffs.empty()) throw error(errc::invalid_argument, "register length r must be >= 1");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].size() != static_cast<std::size_t>(g.n()))
            throw error(errc::invalid_argument, "coefficient q_" + std::to_string(i + 1) + " needs n coordinates");
        for (auto c : coeffs[i].coords)
            if (c <= -g.p() || c >= g.p())
                throw error(errc::invalid_argument, "coefficient q_" + std::to_string(i + 1) + " leaves S");
    }
    return register_spec{std::move(g), std::move(coeffs)};
}

/// Cells a_0..a_(r-1) (a_0 is output next) and the memory m in Z[pi, beta].
template <class Int>
struct basic_register_state {
    std::vector<beta_poly> cells;
    basic_ring_element<Int> memory;

    friend bool operator==(const basic_register_state&, const basic_register_state&) = default;
};

using register_state = basic_register_state<big_int>;

template <class Int>
void validate_state(const register_spec& spec, const basic_register_state<Int>& state) {
    const auto& g = spec.ground;
    if (state.cells.size() != spec.r()) throw error(errc::invalid_argument, "state needs exactly r cells");
    for (const auto& cell : state.cells) {
        if (cell.size() != static_cast<std::size_t>(g.n())) throw error(errc::invalid_argument, "cell needs n coordinates");
        for (auto c : cell.coords)
            if (c < 0 || c >= g.p()) throw error(errc::invalid_argument, "cell coordinate outside {0..p-1}");
    }
    if (state.memory.d() != g.d() || state.memory.n() != g.n())
        throw error(errc::invalid_argument, "memory must be a d x n grid");
}

inline register_state make_register_state(const register_spec& spec, std::vector<beta_poly> cells, ring_element memory) {
    register_state s{std::move(cells), std::move(memory)};
    validate_state(spec, s);
    return s;
}

inline register_state zero_state(const register_spec& spec) {
    return register_state{std::vector<beta_poly>(spec.r(), beta_poly::zero(spec.ground)),
                          ring_element::zero(spec.ground)};
}

template <class To, class From>
basic_register_state<To> convert(const basic_register_state<From>& s) {
    return basic_register_state<To>{s.cells, convert<To>(s.memory)};
}

template <class Int>
struct basic_step_trace {
    basic_ring_element<Int> sigma;
    beta_poly out_cell;
    basic_ring_element<Int> new_memory;
};

using step_trace = basic_step_trace<big_int>;

/// Vectorial output a_0, a_1, ... stored flat; digit(i, j) = a_j^i.
class output_sequence {
public:
    explicit output_sequence(int width = 1) : width_(width) {}

    int width() const noexcept { return width_; }
    std::size_t size() const noexcept { return digits_.size() / static_cast<std::size_t>(width_); }
    bool empty() const noexcept { return digits_.empty(); }
    void reserve(std::size_t n) { digits_.reserve(n * static_cast<std::size_t>(width_)); }

    std::int64_t digit(std::size_t i, int j) const { return digits_[i * width_ + j]; }

    beta_poly operator[](std::size_t i) const {
        std::vector<std::int64_t> c(width_);
        for (int j = 0; j < width_; ++j) c[j] = digit(i, j);
        return beta_poly(std::move(c));
    }

    void push_back(const beta_poly& a) {
        for (int j = 0; j < width_; ++j) digits_.push_back(static_cast<std::int32_t>(a[j]));
    }

    /// Coordinate stream a_j = (a_j^0, a_j^1, ...).
    std::vector<std::int64_t> row(int j) const {
        if (j < 0 || j >= width_) throw error(errc::index_out_of_range, "coordinate " + std::to_string(j));
        std::vector<std::int64_t> out(size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = digit(i, j);
        return out;
    }

    /// One code per output symbol, for comparing whole vectors at once.
    std::vector<std::uint64_t> symbols(std::int64_t p) const {
        std::vector<std::uint64_t> out(size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            std::uint64_t code = 0;
            for (int j = width_; j-- > 0;) code = code * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(digit(i, j));
            out[i] = code;
        }
        return out;
    }

    friend bool operator==(const output_sequence&, const output_sequence&) = default;

private:
    int width_;
    std::vector<std::int32_t> digits_;
};

namespace detail {

// In-place automaton: cyclic cell buffer plus the memory grid.
template <class Int>
class stepper {
public:
    stepper(const register_spec& spec, const basic_register_state<Int>& state)
        : spec_(spec), g_(spec.ground), r_(spec.r()), n_(g_.n()), d_(g_.d()),
          cells_(r_ * n_), memory_(state.memory), sigma0_(n_), wide_(2 * n_ - 1) {
        validate_state(spec, state);
        for (std::size_t i = 0; i < r_; ++i)
            for (int j = 0; j < n_; ++j) cells_[i * n_ + j] = state.cells[i][j];
    }

    // Cell a_i of the current state, i = 0 oldest.
    const std::int64_t* cell(std::size_t i) const { return &cells_[((head_ + i) % r_) * n_]; }

    const basic_ring_element<Int>& memory() const noexcept { return memory_; }

    void advance(basic_step_trace<Int>* trace, const std::optional<big_int>& bound = std::nullopt) {
        const std::int64_t p = g_.p();
        // sigma's pi^0 row: sum_i q_i a_(r-i) in Z[beta], plus m_(0, .)
        std::fill(wide_.begin(), wide_.end(), checked_int(0));
        for (std::size_t i = 1; i <= r_; ++i) {
            const auto& q = spec_.coeffs[i - 1].coords;
            const std::int64_t* a = cell(r_ - i);
            for (int u = 0; u < n_; ++u) {
                if (q[u] == 0) continue;
                for (int v = 0; v < n_; ++v)
                    if (a[v] != 0) wide_[u + v] += checked_int(q[u]) * checked_int(a[v]);
            }
        }
        for (int j = 2 * n_ - 2; j >= n_; --j) {
            if (wide_[j] == checked_int(0)) continue;
            auto b_j = g_.beta_power(j);
            for (int t = 0; t < n_; ++t) wide_[t] += wide_[j] * checked_int(b_j[t]);
        }
        for (int t = 0; t < n_; ++t) sigma0_[t] = Int(wide_[t].value()) + memory_.at(0, t);

        if (trace) {
            trace->sigma = memory_;
            for (int t = 0; t < n_; ++t) trace->sigma.at(0, t) = sigma0_[t];
        }

        // a_z = sigma_0 mod p; m_z = (sigma - a_z) / pi
        std::int64_t* slot = &cells_[head_ * n_];
        const Int pp(p);
        for (int t = 0; t < n_; ++t) {
            const Int a = floor_mod(sigma0_[t], pp);
            slot[t] = to_int64(to_big(a));
            for (int k = 0; k + 1 < d_; ++k) memory_.at(k, t) = memory_.at(k + 1, t);
            memory_.at(d_ - 1, t) = (sigma0_[t] - a) / pp;
        }
        head_ = (head_ + 1) % r_;

        if (bound) {
            for (const auto& m : memory_.coords())
                if (abs_value(to_big(m)) > *bound)
                    throw error(errc::memory_diverged, "memory coordinate " + to_big(m).str() + " exceeds bound");
        }
        if (trace) {
            trace->out_cell = beta_poly(std::vector<std::int64_t>(slot, slot + n_));
            trace->new_memory = memory_;
        }
    }

    basic_register_state<Int> state() const {
        basic_register_state<Int> s{std::vector<beta_poly>(r_), memory_};
        for (std::size_t i = 0; i < r_; ++i) s.cells[i] = beta_poly(std::vector<std::int64_t>(cell(i), cell(i) + n_));
        return s;
    }

private:
    const register_spec& spec_;
    const ground_params& g_;
    std::size_t r_;
    int n_;
    int d_;
    std::vector<std::int64_t> cells_;
    std::size_t head_ = 0;
    basic_ring_element<Int> memory_;
    std::vector<Int> sigma0_;
    std::vector<checked_int> wide_;
};

} // namespace detail

/// One transition f(s): sigma = sum q_i a_(r-i) + m, new cell sigma mod p on
/// the pi^0 row, memory (sigma - a) / pi.
template <class Int>
std::pair<basic_register_state<Int>, basic_step_trace<Int>> step(const register_spec& spec,
                                                                 const basic_register_state<Int>& state) {
    detail::stepper<Int> s(spec, state);
    basic_step_trace<Int> trace;
    s.advance(&trace);
    return {s.state(), std::move(trace)};
}

struct run_options {
    std::optional<big_int> memory_bound;  ///< MemoryDiverged once any |m_(k,j)| exceeds this
    bool record_memory = true;
};

template <class Int>
struct basic_run_result {
    output_sequence outputs;
    std::vector<basic_ring_element<Int>> memory_trace;  ///< memory of f^i(s), i = 0..steps-1
    basic_register_state<Int> final_state;
};

using run_result = basic_run_result<big_int>;

/// Emits g(f^i(s)) for i = 0..steps-1, so the first r outputs are the initial
/// cells; final_state is f^steps(s).
template <class Int>
basic_run_result<Int> run(const register_spec& spec, const basic_register_state<Int>& state, std::size_t steps,
                          const run_options& options = {}) {
    detail::stepper<Int> s(spec, state);
    basic_run_result<Int> result{output_sequence(spec.ground.n()), {}, {}};
    result.outputs.reserve(steps);
    if (options.record_memory) result.memory_trace.reserve(steps);
    const int n = spec.ground.n();
    for (std::size_t i = 0; i < steps; ++i) {
        const std::int64_t* out = s.cell(0);
        result.outputs.push_back(beta_poly(std::vector<std::int64_t>(out, out + n)));
        if (options.record_memory) result.memory_trace.push_back(s.memory());
        s.advance(nullptr, options.memory_bound);
    }
    result.final_state = s.state();
    return result;
}

/// Output digits only, on checked int64 first and big_int if that overflows.
inline output_sequence simulate(const register_spec& spec, const register_state& state, std::size_t steps,
                                const std::optional<big_int>& memory_bound = std::nullopt) {
    run_options opts{memory_bound, false};
    try {
        return run(spec, convert<checked_int>(state), steps, opts).outputs;
    } catch (const error& e) {
        if (e.code() != errc::overflow) throw;
    }
    return run(spec, state, steps, opts).outputs;
}

/// d-decimation of the k-shift of coordinate j: (a_j^k, a_j^(d+k), a_j^(2d+k), ...).
inline std::vector<std::int64_t> subsequence(const output_sequence& seq, int k, int j, int d) {
    if (d < 1 || k < 0 || k >= d || j < 0 || j >= seq.width())
        throw error(errc::index_out_of_range, "subsequence (k=" + std::to_string(k) + ", j=" + std::to_string(j) + ")");
    std::vector<std::int64_t> out;
    for (std::size_t i = static_cast<std::size_t>(k); i < seq.size(); i += static_cast<std::size_t>(d))
        out.push_back(seq.digit(i, j));
    return out;
}

} // namespace vfcsr

#endif // VFCSR_REGISTER_HPP
