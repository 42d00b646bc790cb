#ifndef VFCSR_JSON_IO_HPP
#define VFCSR_JSON_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "algebra.hpp"
#include "analysis.hpp"
#include "connection.hpp"
#include "error.hpp"
#include "integer.hpp"
#include "register.hpp"

// JSON forms of the library values. Output uses ordered_json so keys keep
// insertion order; integers outside int64 are written as decimal strings.

namespace vfcsr::json_io {

using json = nlohmann::ordered_json;

inline json to_json(const big_int& x) {
    if (fits_int64(x)) return static_cast<std::int64_t>(x);
    return x.str();
}

inline big_int big_from_json(const json& j) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? big_int(j.get<std::uint64_t>()) : big_int(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        try {
            return big_int(s);
        } catch (const std::exception&) {
            throw error(errc::invalid_argument, "not an integer: " + s);
        }
    }
    throw error(errc::invalid_argument, "expected an integer, got " + j.dump());
}

inline std::int64_t int_from_json(const json& j) {
    if (!j.is_number_integer()) throw error(errc::invalid_argument, "expected an integer, got " + j.dump());
    return j.get<std::int64_t>();
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw error(errc::invalid_argument, std::string("missing key \"") + key + "\"");
    return j.at(key);
}

inline const json& array_field(const json& j, const char* key) {
    const json& a = field(j, key);
    if (!a.is_array()) throw error(errc::invalid_argument, std::string("\"") + key + "\" must be an array");
    return a;
}

inline json to_json(const ground_params& g) {
    return json{{"p", g.p()}, {"d", g.d()}, {"P", g.poly()}};
}

inline ground_params ground_from_json(const json& j) {
    std::vector<std::int64_t> poly;
    for (const auto& c : array_field(j, "P")) poly.push_back(int_from_json(c));
    return make_ground_params(int_from_json(field(j, "p")), static_cast<int>(int_from_json(field(j, "d"))), std::move(poly));
}

inline json to_json(const beta_poly& a) { return a.coords; }

inline beta_poly beta_from_json(const json& j) {
    if (!j.is_array()) throw error(errc::invalid_argument, "beta polynomial must be an array");
    std::vector<std::int64_t> c;
    for (const auto& v : j) c.push_back(int_from_json(v));
    return beta_poly(std::move(c));
}

/// rows[k][j], the d x n grid.
inline json to_json(const ring_element& e) {
    json rows = json::array();
    for (int k = 0; k < e.d(); ++k) {
        json row = json::array();
        for (int j = 0; j < e.n(); ++j) row.push_back(to_json(e.at(k, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ring_element ring_from_json(const json& j, const ground_params& g) {
    if (!j.is_array()) throw error(errc::invalid_argument, "ring element must be an array of d rows");
    std::vector<std::vector<big_int>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) throw error(errc::invalid_argument, "ring element row must be an array");
        std::vector<big_int> r;
        for (const auto& v : row) r.push_back(big_from_json(v));
        rows.push_back(std::move(r));
    }
    return ring_element::from_rows(g, rows);
}

inline json to_json(const zpi_element& x) {
    json a = json::array();
    for (const auto& c : x.coords) a.push_back(to_json(c));
    return a;
}

inline json to_json(const register_spec& s) {
    json coeffs = json::array();
    for (const auto& q : s.coeffs) coeffs.push_back(to_json(q));
    return json{{"ground", to_json(s.ground)}, {"r", s.r()}, {"coeffs", coeffs}};
}

inline register_spec spec_from_json(const json& j) {
    ground_params g = ground_from_json(field(j, "ground"));
    std::vector<beta_poly> coeffs;
    for (const auto& q : array_field(j, "coeffs")) coeffs.push_back(beta_from_json(q));
    if (j.contains("r") && int_from_json(j.at("r")) != static_cast<std::int64_t>(coeffs.size()))
        throw error(errc::invalid_argument, "\"r\" disagrees with the number of coefficients");
    return make_register_spec(std::move(g), std::move(coeffs));
}

inline json to_json(const register_state& s) {
    json cells = json::array();
    for (const auto& c : s.cells) cells.push_back(to_json(c));
    return json{{"cells", cells}, {"memory", to_json(s.memory)}};
}

inline register_state state_from_json(const json& j, const register_spec& spec) {
    std::vector<beta_poly> cells;
    for (const auto& c : array_field(j, "cells")) cells.push_back(beta_from_json(c));
    return make_register_state(spec, std::move(cells), ring_from_json(field(j, "memory"), spec.ground));
}

inline json to_json(const int_matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const zpi_matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const connection_analysis& a) {
    json grid = json::array(), tilde = json::array();
    for (const auto& v : a.q_tilde_grid) grid.push_back(to_json(v));
    for (const auto& v : a.q_tilde_pi) tilde.push_back(to_json(v));
    return json{{"q", to_json(a.q)},
                {"q_tilde_grid", grid},
                {"q_tilde_pi", tilde},
                {"M_prime", to_json(a.m_prime)},
                {"M", to_json(a.m)},
                {"N_pi", to_json(a.n_pi)},
                {"N_prime", to_json(a.n_prime)},
                {"N_prime_abs", to_json(a.n_prime_abs)}};
}

inline json to_json(const period_info& p) { return json{{"transient", p.transient}, {"period", p.period}}; }

inline json to_json(const period_report& r) {
    json subs = json::array(), coords = json::array(), reduced = json::array();
    for (const auto& s : r.sub_periods) subs.push_back(to_json(s));
    for (const auto& c : r.coord_periods) coords.push_back(to_json(c));
    for (const auto& v : r.reduced_denominators) reduced.push_back(to_json(v));
    return json{{"N_prime_abs", to_json(r.n_prime_abs)},
                {"ord", r.ord},
                {"horizon", r.horizon},
                {"sub_periods", subs},
                {"coord_periods", coords},
                {"total_period", r.total_period},
                {"detected_total", to_json(r.detected_total)},
                {"subsequences_divide_ord", r.subsequences_divide_ord},
                {"coordinates_divide_d_ord", r.coordinates_divide_d_ord},
                {"total_is_lcm", r.total_is_lcm},
                {"theorem2_ok", r.theorem2_ok},
                {"corollary1_applicable", r.corollary1_applicable},
                {"reduced_denominators", reduced}};
}

} // namespace vfcsr::json_io

#endif // VFCSR_JSON_IO_HPP
