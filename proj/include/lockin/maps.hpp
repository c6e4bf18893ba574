#pragma once

#include "lockin/classify.hpp"
#include "lockin/critical_load.hpp"
#include "lockin/models.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lockin {

// Rectangular parameter-grid product (the tongue-map plots). Channels are
// row-major in y then x: index iy * nx + ix. Error cells hold NaN in every
// channel and are counted by the callers that serialize the map.
struct TongueMap {
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::string x_label;
    std::string y_label;
    std::vector<std::pair<std::string, std::vector<double>>> channels;

    struct Metadata {
        int truncation = 0;
        double brillouin_tolerance = 0.0;
        double tol_lock = 0.0;
        std::string tool_version;
        std::string created_utc; // serialized only into the run manifest
    } metadata;

    std::size_t nx() const { return x_values.size(); }
    std::size_t ny() const { return y_values.size(); }
    const std::vector<double>& channel(const std::string& name) const; // argument_error if absent
    bool has_channel(const std::string& name) const;
};

// Stability result of one pendulum parameter point.
struct StabilityPoint {
    double T_bar_over_2pi = 0.0;
    double A_bar = 0.0;
    double C_bar = 0.0;
    double max_re = 0.0;          // largest Re(s)
    double max_im_fraction = 0.0; // largest folded Im(s)/Omega_bar, in [0, 1/2]
    PeriodicityClass classification{};
    bool stable = true;           // max_re <= 0
};

StabilityPoint pendulum_point(const PendulumParams& p, const HillOptions& opts = {},
                              double tol_lock = default_tol_lock);

// Map over (T_bar/(2 pi), A_bar); channels max_re, max_im_fraction, stable,
// class_code. Cells evaluate independently (parallel_for with `workers`).
TongueMap stability_map_pendulum(const std::vector<double>& T_over_2pi_grid,
                                 const std::vector<double>& A_grid,
                                 double C_bar,
                                 const HillOptions& opts = {},
                                 double tol_lock = default_tol_lock,
                                 int workers = 1);

// Map over (lambda_bar, K_bar); channels pcr_ratio (P_bar_cr / 8 pi^2),
// locked_fraction, class_code. Per-cell search errors are recorded as NaN
// cells, never aborting the sweep.
TongueMap tongue_map_winkler(const std::vector<double>& lambda_grid,
                             const std::vector<double>& K_grid,
                             const CriticalSearchOptions& opts = {},
                             int workers = 1);

// count uniformly spaced values over [lo, hi] inclusive; count >= 1.
std::vector<double> linspace(double lo, double hi, int count);

} // namespace lockin
