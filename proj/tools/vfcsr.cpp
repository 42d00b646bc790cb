#include <iostream>

#include "CLI11.hpp"
#include "cli_commands.hpp"

#ifndef VFCSR_FIXTURE_DIR
#define VFCSR_FIXTURE_DIR "."
#endif

int main(int argc, char** argv) {
    using vfcsr::cli::command_config;
    command_config cfg;
    cfg.fixtures = VFCSR_FIXTURE_DIR;

    CLI::App app{"Vectorial FCSR simulator and analyzer"};
    app.set_version_flag("--version", vfcsr::cli::version);
    app.require_subcommand(1);
    app.add_flag("--banner", cfg.banner, "Prefix output with a version line");

    auto add_io = [&](CLI::App* sub, bool input_required) {
        auto* in = sub->add_option("-i,--input", cfg.input, "Register JSON (spec + state)")->check(CLI::ExistingFile);
        if (input_required) in->required();
        sub->add_option("-o,--output", cfg.output, "Write to file instead of stdout");
    };

    auto* run = app.add_subcommand("run", "Simulate and write the per-stream sequence table");
    add_io(run, true);
    run->add_option("-n,--steps", cfg.steps, "Number of output vectors")->check(CLI::NonNegativeNumber);
    run->add_option("--memory-bound", cfg.memory_bound, "Fail if any memory coordinate exceeds this magnitude");
    run->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

    auto* analyze = app.add_subcommand("analyze", "Connection integer, M', N' and the norm");
    add_io(analyze, true);
    analyze->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "table"}));

    auto* period = app.add_subcommand("period", "Measure periods and check the ord divisibility bounds");
    add_io(period, true);
    period->add_option("--horizon", cfg.horizon, "Output vectors to simulate");
    period->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "table"}));

    auto* search = app.add_subcommand("search", "Enumerate connection grids and their N'");
    add_io(search, false);
    search->add_option("--p", cfg.p, "Prime p");
    search->add_option("--d", cfg.d, "Degree d of pi");
    search->add_option("--P", cfg.poly, "Monic polynomial P, coefficients low to high")->delimiter(',');
    search->add_option("--bounds", cfg.bounds, "Max |q~| per slot (one value or n*d, basis order)")
        ->delimiter(',')
        ->required();
    search->add_flag("--signed", cfg.signed_range, "Also enumerate negative grid values");
    search->add_flag("--prime", cfg.filters.require_prime, "Keep only prime |N'|");
    search->add_flag("--primitive-root", cfg.filters.require_primitive_root, "Keep only p primitive mod |N'|");
    search->add_flag("--gcd-d", cfg.filters.require_gcd_d, "Keep only gcd(d, |N'| - 1) = 1");
    search->add_option("--limit", cfg.limit, "Stop after this many candidates (0 = all)");

    auto* verify = app.add_subcommand("verify-tables", "Replay the reference tables from the fixtures directory");
    verify->add_option("--fixtures", cfg.fixtures, "Directory holding table1.csv, table2.csv, example1.json")
        ->check(CLI::ExistingDirectory);
    verify->add_option("-o,--output", cfg.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : vfcsr::cli::usage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return vfcsr::cli::dispatch(cfg, std::cout, std::cerr);
}
