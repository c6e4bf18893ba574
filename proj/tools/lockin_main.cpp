// lockin — Floquet lock-in analysis driver.
//
// One subcommand per job kind; a line-oriented config file carries the job
// parameters, with flags overriding the three most common knobs (Hill
// truncation, worker count, output directory). Exit codes: 0 success,
// 1 usage/config, 2 numeric, 3 I/O.

#include "lockin/errors.hpp"
#include "lockin/sweep.hpp"
#include "lockin/version.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

const char* describe(lockin::JobKind k) {
    using lockin::JobKind;
    switch (k) {
        case JobKind::pendulum_map:
            return "stability map of the parametric pendulum over (T_bar/(2*pi), A_bar)";
        case JobKind::winkler_map:
            return "critical-load tongue map of the modulated Winkler beam over (lambda_bar, K_bar)";
        case JobKind::winkler_critical:
            return "critical buckling load at one (K_bar, lambda_bar) point";
        case JobKind::pendulum_point:
            return "Floquet exponents of one pendulum parameter point";
        case JobKind::reconstruct:
            return "critical mode shape sampled in real space";
        case JobKind::oracle_compare:
            return "cross-validation of the spectral path against the finite-difference oracle";
    }
    return "";
}

} // namespace

int main(int argc, char** argv) {
    using lockin::JobKind;

    CLI::App app{"Floquet exponents of linear ODEs with periodic coefficients "
                 "(parametric pendulum / modulated Winkler beam)"};
    app.set_version_flag("--version", lockin::tool_version);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int workers = 0;
    int hill_M = 0;
    std::optional<JobKind> chosen;

    for (JobKind kind : {JobKind::pendulum_map, JobKind::winkler_map,
                         JobKind::winkler_critical, JobKind::pendulum_point,
                         JobKind::reconstruct, JobKind::oracle_compare}) {
        CLI::App* sub = app.add_subcommand(lockin::to_string(kind), describe(kind));
        sub->add_option("-c,--config", config_path,
                        "configuration file (key = value sections)");
        sub->add_option("-j,--workers", workers,
                        "worker threads; overrides config and LOCKIN_WORKERS");
        sub->add_option("--hill-M", hill_M, "Hill truncation override");
        sub->add_option("-o,--out", out_dir, "output directory override");
        sub->callback([&chosen, kind] { chosen = kind; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        lockin::JobConfig cfg = config_path.empty()
                                    ? lockin::parse_config("[job]\n", chosen)
                                    : lockin::load_config_file(config_path, chosen);
        if (workers < 0)
            throw lockin::argument_error("--workers must be >= 1");
        if (hill_M != 0) {
            if (hill_M < 1 || hill_M > 64)
                throw lockin::argument_error("--hill-M must be in [1, 64]");
            cfg.hill_M = hill_M;
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        cfg.workers = lockin::resolve_workers(workers, cfg.workers);

        const lockin::RunManifest man = lockin::run_job(cfg);
        std::cout << lockin::to_string(cfg.kind) << ": " << man.status << " ("
                  << man.cells_total - man.cells_failed << "/" << man.cells_total
                  << " cells ok); outputs in " << cfg.out_dir << "\n";
        return 0;
    } catch (const lockin::argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const lockin::structural_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const lockin::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const lockin::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        // numeric_error, search_error and anything unexpected
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
