#pragma once

#include "lockin/fd_oracle.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lockin {

enum class JobKind {
    pendulum_map,
    winkler_map,
    winkler_critical,
    pendulum_point,
    reconstruct,
    oracle_compare,
};

const char* to_string(JobKind kind);
JobKind job_kind_from(const std::string& name); // throws config_error on unknown

struct AxisSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 1;
    std::string scale = "linear";
};

// Fully resolved job description: parse_config fills defaults and validates,
// so downstream code never re-checks presence.
struct JobConfig {
    JobKind kind = JobKind::winkler_critical;

    // [axes] (map jobs)
    AxisSpec x;
    AxisSpec y;

    // [job]
    int workers = 0; // 0 = unset; CLI resolves flag > config > env > 1
    double C_bar = 1e-3;
    double K_bar = 0.0;
    double lambda_bar = 0.0;
    double A_bar = 0.0;
    double Omega_bar = 0.0;           // pendulum-point drive frequency
    double re_threshold = 1e-8;       // critical-search options
    double P_lo = 0.0;
    double P_hi = 0.0;                // 0 = default 1.2 * 8 pi^2
    int coarse_steps = 200;
    double bisection_tol = 1e-8;
    int domain_periods = 10;          // reconstruct
    int samples_per_period = 64;
    std::vector<std::pair<double, double>> points; // oracle-compare (K_bar, lambda_bar)

    // [hill]
    int hill_M = 9;
    double brillouin_tolerance = 0.0; // 0 = default 10^-M
    double tol_lock = 1e-4;

    // [fd]
    double L_over_lambda = 40.0;
    int nodes_per_lambda = 200;
    FdBc bc = FdBc::pinned;
    int n_fft = 1 << 14;

    // [output]
    std::string out_dir = "out";
    std::string basename = "run";
    std::string svg_channel; // map jobs; defaulted per kind
};

// Parse the line-oriented `key = value` configuration format ('#' comments,
// [job]/[axes]/[hill]/[fd]/[output] sections). Unknown sections or keys and
// keys not applicable to the job kind are hard errors; messages carry line
// numbers. kind_hint (the CLI subcommand) supplies the job kind when the
// file omits `kind`, and must agree with it when present.
JobConfig parse_config(const std::string& text,
                       std::optional<JobKind> kind_hint = std::nullopt);

// Reads the file (io_error on failure) and parses it.
JobConfig load_config_file(const std::string& path,
                           std::optional<JobKind> kind_hint = std::nullopt);

} // namespace lockin
