#ifndef VFCSR_TOOLS_CLI_COMMANDS_HPP
#define VFCSR_TOOLS_CLI_COMMANDS_HPP

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <vfcsr/json_io.hpp>
#include <vfcsr/vfcsr.hpp>

namespace vfcsr::cli {

inline constexpr const char* version = "0.1.0";

enum exit_code : int {
    ok = 0,
    usage = 1,
    input_error = 2,
    memory_diverged = 3,
    undetermined = 4,
    verification_failed = 5,
    computation_error = 6,
};

struct command_config {
    std::string subcommand;
    std::string input;
    std::string output;  ///< empty = the output stream given to the command
    std::string format;  ///< csv | json | table; empty = subcommand default
    std::size_t steps = 36;
    std::optional<std::size_t> horizon;
    std::optional<int> precision;
    std::optional<std::int64_t> memory_bound;
    // search
    std::optional<std::int64_t> p;
    std::optional<int> d;
    std::vector<std::int64_t> poly;
    std::vector<std::int64_t> bounds;
    bool signed_range = false;
    search_filters filters;
    std::size_t limit = 0;
    // verify-tables
    std::string fixtures;
    bool banner = false;
};

namespace detail {

struct input_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json_io::json load_json(const std::string& path) {
    if (path.empty()) throw input_failure("--input is required");
    std::ifstream in(path);
    if (!in) throw input_failure("cannot open " + path);
    try {
        return json_io::json::parse(in);
    } catch (const json_io::json::exception& e) {
        throw input_failure(path + ": " + e.what());
    }
}

struct fixture {
    register_spec spec;
    std::optional<register_state> state;
};

inline fixture load_fixture(const std::string& path, bool need_state) {
    const auto j = load_json(path);
    try {
        fixture f{json_io::spec_from_json(json_io::field(j, "spec")), std::nullopt};
        if (j.contains("state")) f.state = json_io::state_from_json(j.at("state"), f.spec);
        if (need_state && !f.state) throw input_failure(path + ": missing \"state\"");
        return f;
    } catch (const error& e) {
        throw input_failure(path + ": " + e.what());
    }
}

// Writes to --output when given, else to `fallback`.
class sink {
public:
    sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw input_failure("cannot write " + path);
            os_ = &file_;
        }
    }
    std::ostream& get() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

inline void banner(const command_config& cfg, std::ostream& os) {
    if (cfg.banner) os << "# vfcsr " << version << '\n';
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const input_failure& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
        case errc::memory_diverged: return memory_diverged;
        case errc::undetermined: return undetermined;
        case errc::not_prime:
        case errc::not_primitive_polynomial:
        case errc::degree_zero:
        case errc::invalid_argument:
        case errc::not_congruent_minus_one: return input_error;
        default: return computation_error;
        }
    }
}

inline std::string grid_label(int k, int j) { return "qt_" + std::to_string(k) + "_" + std::to_string(j); }

} // namespace detail

/// Sequence in the row-per-stream CSV layout (or JSON with --format json).
inline int cmd_run(const command_config& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto fx = detail::load_fixture(cfg.input, true);
        run_options opts;
        if (cfg.memory_bound) opts.memory_bound = big_int(*cfg.memory_bound);
        const run_result res = run(fx.spec, *fx.state, cfg.steps, opts);
        detail::sink s(cfg.output, out);
        detail::banner(cfg, s.get());
        if (cfg.format == "json") {
            json_io::json rows = json_io::json::object();
            for (const auto& row : sequence_rows(res, fx.spec.ground)) rows[row.label] = row.cells;
            s.get() << json_io::json{{"steps", cfg.steps}, {"streams", rows}, {"final_state", json_io::to_json(res.final_state)}}.dump(2)
                    << '\n';
        } else {
            write_sequence_csv(s.get(), res, fx.spec.ground);
        }
        return static_cast<int>(ok);
    });
}

inline void render_analysis_table(std::ostream& os, const connection_analysis& a, const ground_params& g) {
    os << "q~ grid:";
    for (int j = 0; j < g.n(); ++j)
        for (int k = 0; k < g.d(); ++k) os << ' ' << detail::grid_label(k, j) << '=' << a.q_tilde_grid[g.basis_index(k, j)];
    os << "\nN (Z[pi]):";
    for (const auto& c : a.n_pi.coords) os << ' ' << c;
    os << "\nN' = " << a.n_prime << "  |N'| = " << a.n_prime_abs << "\nM':\n";
    for (std::size_t r = 0; r < a.m_prime.rows(); ++r) {
        for (std::size_t c = 0; c < a.m_prime.cols(); ++c) os << std::setw(8) << a.m_prime(r, c);
        os << '\n';
    }
}

inline int cmd_analyze(const command_config& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto fx = detail::load_fixture(cfg.input, false);
        const connection_analysis a = analyze(fx.spec);
        detail::sink s(cfg.output, out);
        detail::banner(cfg, s.get());
        if (cfg.format == "table") render_analysis_table(s.get(), a, fx.spec.ground);
        else s.get() << json_io::to_json(a).dump(2) << '\n';
        return static_cast<int>(ok);
    });
}

inline void render_period_table(std::ostream& os, const period_report& r, const ground_params& g) {
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    os << std::left << std::setw(26) << "|N'|" << r.n_prime_abs << '\n'
       << std::setw(26) << "ord_|N'|(p)" << r.ord << '\n'
       << std::setw(26) << "horizon" << r.horizon << '\n'
       << std::setw(26) << "total period" << r.total_period << '\n'
       << std::setw(26) << "detected vector period" << r.detected_total.period << " (transient "
       << r.detected_total.transient << ")\n"
       << std::setw(26) << "ord divisibility" << yes(r.theorem2_ok) << '\n'
       << std::setw(26) << "maximal-period test" << yes(r.corollary1_applicable) << "\n\n";
    os << std::setw(12) << "stream" << std::right << std::setw(12) << "transient" << std::setw(12) << "period"
       << std::setw(16) << "reduced denom" << '\n';
    for (int j = 0; j < g.n(); ++j)
        for (int k = 0; k < g.d(); ++k) {
            const std::size_t idx = g.basis_index(k, j);
            const auto& sp = r.sub_periods[idx];
            os << std::left << std::setw(12) << ("a_" + std::to_string(k) + "," + std::to_string(j)) << std::right
               << std::setw(12) << sp.transient << std::setw(12) << sp.period << std::setw(16)
               << (r.reduced_denominators.empty() ? std::string("-") : r.reduced_denominators[idx].str()) << '\n';
        }
    for (int j = 0; j < g.n(); ++j) {
        const auto& cp = r.coord_periods[j];
        os << std::left << std::setw(12) << ("a_" + std::to_string(j)) << std::right << std::setw(12) << cp.transient
           << std::setw(12) << cp.period << std::setw(16) << "" << '\n';
    }
    os << std::left;
}

inline int cmd_period(const command_config& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto fx = detail::load_fixture(cfg.input, true);
        const period_report rep = theorem2_report(fx.spec, *fx.state, cfg.horizon);
        detail::sink s(cfg.output, out);
        detail::banner(cfg, s.get());
        if (cfg.format == "json") s.get() << json_io::to_json(rep).dump(2) << '\n';
        else render_period_table(s.get(), rep, fx.spec.ground);
        return static_cast<int>(ok);
    });
}

inline int cmd_search(const command_config& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        search_config sc{cfg.input.empty() ? make_ground_params(cfg.p.value_or(2), cfg.d.value_or(2),
                                                                cfg.poly.empty() ? std::vector<std::int64_t>{-1, -1, 1} : cfg.poly)
                                           : [&] {
                                                 const auto j = detail::load_json(cfg.input);
                                                 if (j.contains("ground")) return json_io::ground_from_json(j.at("ground"));
                                                 return json_io::ground_from_json(json_io::field(json_io::field(j, "spec"), "ground"));
                                             }(),
                         cfg.bounds, cfg.signed_range, cfg.filters, cfg.limit};
        const auto& g = sc.ground;
        if (sc.bounds.empty()) throw detail::input_failure("--bounds is required");
        if (sc.bounds.size() == 1) sc.bounds.assign(static_cast<std::size_t>(g.dim()), sc.bounds[0]);
        if (sc.bounds.size() != static_cast<std::size_t>(g.dim()))
            throw detail::input_failure("--bounds needs 1 or n*d values");
        detail::sink s(cfg.output, out);
        auto& os = s.get();
        detail::banner(cfg, os);
        os << "N_prime,N_prime_abs";
        for (int j = 0; j < g.n(); ++j)
            for (int k = 0; k < g.d(); ++k) os << ',' << detail::grid_label(k, j);
        os << ",prime,ord,predicted_period\n";
        for_each_candidate(sc, [&](const candidate& c) {
            os << c.n_prime << ',' << c.n_prime_abs;
            for (auto v : c.q_tilde_grid) os << ',' << v;
            os << ',' << (c.is_prime ? 1 : 0) << ',' << c.ord << ',' << c.predicted_max_period << '\n';
            return true;
        });
        return static_cast<int>(ok);
    });
}

/// Replays both reference tables from the fixtures directory.
inline int cmd_verify_tables(const command_config& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const std::string dir = cfg.fixtures.empty() ? std::string(".") : cfg.fixtures;
        detail::sink s(cfg.output, out);
        auto& os = s.get();
        detail::banner(cfg, os);
        int failures = 0;

        std::ifstream t1(dir + "/table1.csv");
        if (!t1) throw detail::input_failure("cannot open " + dir + "/table1.csv");
        const auto rows = read_table1_csv(t1);
        std::size_t composites = 0;
        for (const auto& c : reproduce_table1(rows)) {
            const bool pass = c.det_matches && c.template_matches_general;
            if (!pass) ++failures;
            if (!c.is_prime) ++composites;
            os << (pass ? "PASS" : "FAIL") << " table1 N'=" << c.row.n_prime << " (" << c.row.x << ',' << c.row.y << ','
               << c.row.z << ',' << c.row.t << ") det=" << c.det;
            if (!c.template_matches_general) os << " template!=general";
            if (c.is_prime) {
                os << " prime";
            } else {
                os << " composite=";
                bool first = true;
                for (const auto& [q, e] : factorize(static_cast<u64>(c.row.n_prime))) {
                    os << (first ? "" : "*") << q << (e > 1 ? "^" + std::to_string(e) : "");
                    first = false;
                }
            }
            os << '\n';
        }
        os << "table1: " << rows.size() << " rows, " << (rows.size() - composites) << " prime, " << composites
           << " composite\n";

        std::ifstream t2(dir + "/table2.csv");
        if (!t2) throw detail::input_failure("cannot open " + dir + "/table2.csv");
        const auto expected = read_sequence_csv(t2);
        const auto fx = detail::load_fixture(dir + "/example1.json", true);
        const std::size_t columns = expected.empty() ? 0 : expected.front().cells.size();
        const auto actual = sequence_rows(run(fx.spec, *fx.state, columns), fx.spec.ground);
        int table2_failures = 0;
        for (const auto& want : expected) {
            const csv_row* got = nullptr;
            for (const auto& r : actual)
                if (r.label == want.label) got = &r;
            if (!got) {
                os << "FAIL table2 row " << want.label << ": no such stream\n";
                ++table2_failures;
                continue;
            }
            for (std::size_t i = 0; i < want.cells.size(); ++i)
                if (i >= got->cells.size() || got->cells[i] != want.cells[i]) {
                    os << "FAIL table2 row " << want.label << " column " << i << ": expected " << want.cells[i] << ", got "
                       << (i < got->cells.size() ? got->cells[i] : std::string("<missing>")) << '\n';
                    ++table2_failures;
                }
        }
        if (table2_failures == 0)
            os << "PASS table2 replay: " << expected.size() << " rows x " << columns << " columns match\n";
        failures += table2_failures;
        os << (failures == 0 ? "verify-tables: OK" : "verify-tables: FAILED") << '\n';
        return static_cast<int>(failures == 0 ? ok : verification_failed);
    });
}

inline int dispatch(const command_config& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.subcommand == "run") return cmd_run(cfg, out, err);
    if (cfg.subcommand == "analyze") return cmd_analyze(cfg, out, err);
    if (cfg.subcommand == "period") return cmd_period(cfg, out, err);
    if (cfg.subcommand == "search") return cmd_search(cfg, out, err);
    if (cfg.subcommand == "verify-tables") return cmd_verify_tables(cfg, out, err);
    err << "error: unknown subcommand '" << cfg.subcommand << "'\n";
    return usage;
}

} // namespace vfcsr::cli

#endif // VFCSR_TOOLS_CLI_COMMANDS_HPP
