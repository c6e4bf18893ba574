#include "lockin/maps.hpp"

#include "lockin/errors.hpp"
#include "lockin/manifest.hpp"
#include "lockin/version.hpp"
#include "lockin/worker.hpp"

#include <cmath>
#include <limits>

namespace lockin {

namespace {
constexpr double qnan = std::numeric_limits<double>::quiet_NaN();
constexpr double p_flat = 8.0 * std::numbers::pi * std::numbers::pi; // 8 pi^2

TongueMap::Metadata make_metadata(const HillOptions& hill, double tol_lock) {
    TongueMap::Metadata meta;
    meta.truncation = hill.truncation;
    meta.brillouin_tolerance = hill.resolved_tolerance();
    meta.tol_lock = tol_lock;
    meta.tool_version = tool_version;
    meta.created_utc = utc_now_iso8601();
    return meta;
}
} // namespace

const std::vector<double>& TongueMap::channel(const std::string& name) const {
    for (const auto& [n, data] : channels)
        if (n == name) return data;
    throw argument_error("TongueMap: no channel named '" + name + "'");
}

bool TongueMap::has_channel(const std::string& name) const {
    for (const auto& [n, data] : channels)
        if (n == name) return true;
    return false;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw argument_error("linspace: count must be >= 1");
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

StabilityPoint pendulum_point(const PendulumParams& p, const HillOptions& opts,
                              double tol_lock) {
    const FloquetSpectrum spec =
        floquet_exponents(pendulum_system(p), opts, /*want_vectors=*/false);

    StabilityPoint pt;
    pt.T_bar_over_2pi = 1.0 / p.Omega_bar; // T_bar/(2 pi) = 1/Omega_bar
    pt.A_bar = p.A_bar;
    pt.C_bar = p.C_bar;
    pt.max_re = spec.max_re();
    double frac = 0.0;
    for (const auto& rec : spec.exponents)
        frac = std::max(frac, fold_fraction(rec.s.imag(), p.Omega_bar));
    pt.max_im_fraction = frac;
    // Classification follows the exponent attaining max Re.
    pt.classification = classify_fraction(
        fold_fraction(spec.leading().s.imag(), p.Omega_bar), tol_lock);
    pt.stable = pt.max_re <= 0.0;
    return pt;
}

TongueMap stability_map_pendulum(const std::vector<double>& T_over_2pi_grid,
                                 const std::vector<double>& A_grid,
                                 double C_bar,
                                 const HillOptions& opts,
                                 double tol_lock,
                                 int workers) {
    opts.validate();
    const std::size_t nx = T_over_2pi_grid.size();
    const std::size_t ny = A_grid.size();
    if (nx == 0 || ny == 0)
        throw argument_error("stability_map_pendulum: empty axis grid");

    TongueMap map;
    map.x_values = T_over_2pi_grid;
    map.y_values = A_grid;
    map.x_label = "T_bar/(2*pi)";
    map.y_label = "A_bar";
    map.metadata = make_metadata(opts, tol_lock);
    std::vector<double> max_re(nx * ny, qnan);
    std::vector<double> max_im(nx * ny, qnan);
    std::vector<double> stable(nx * ny, qnan);
    std::vector<double> code(nx * ny, qnan);

    parallel_for(nx * ny, workers, [&](std::size_t cell) {
        const std::size_t iy = cell / nx;
        const std::size_t ix = cell % nx;
        try {
            PendulumParams p;
            p.Omega_bar = 1.0 / T_over_2pi_grid[ix];
            p.A_bar = A_grid[iy];
            p.C_bar = C_bar;
            const StabilityPoint pt = pendulum_point(p, opts, tol_lock);
            max_re[cell] = pt.max_re;
            max_im[cell] = pt.max_im_fraction;
            stable[cell] = pt.stable ? 1.0 : 0.0;
            code[cell] = class_code(pt.classification.tag);
        } catch (const std::exception&) {
            // NaN cell; sweeps never abort on per-cell numeric failures.
        }
    });

    map.channels.emplace_back("max_re", std::move(max_re));
    map.channels.emplace_back("max_im_fraction", std::move(max_im));
    map.channels.emplace_back("stable", std::move(stable));
    map.channels.emplace_back("class_code", std::move(code));
    return map;
}

TongueMap tongue_map_winkler(const std::vector<double>& lambda_grid,
                             const std::vector<double>& K_grid,
                             const CriticalSearchOptions& opts,
                             int workers) {
    opts.validate();
    const std::size_t nx = lambda_grid.size();
    const std::size_t ny = K_grid.size();
    if (nx == 0 || ny == 0)
        throw argument_error("tongue_map_winkler: empty axis grid");

    TongueMap map;
    map.x_values = lambda_grid;
    map.y_values = K_grid;
    map.x_label = "lambda_bar";
    map.y_label = "K_bar";
    map.metadata = make_metadata(opts.hill, opts.tol_lock);
    std::vector<double> ratio(nx * ny, qnan);
    std::vector<double> fraction(nx * ny, qnan);
    std::vector<double> code(nx * ny, qnan);

    parallel_for(nx * ny, workers, [&](std::size_t cell) {
        const std::size_t iy = cell / nx;
        const std::size_t ix = cell % nx;
        try {
            const CriticalLoadResult res =
                critical_load(K_grid[iy], lambda_grid[ix], opts);
            ratio[cell] = res.P_bar_cr / p_flat;
            fraction[cell] = res.locked_fraction;
            code[cell] = class_code(res.classification.tag);
        } catch (const std::exception&) {
            // NaN cell; recorded by the serializing caller.
        }
    });

    map.channels.emplace_back("pcr_ratio", std::move(ratio));
    map.channels.emplace_back("locked_fraction", std::move(fraction));
    map.channels.emplace_back("class_code", std::move(code));
    return map;
}

} // namespace lockin
