#include "lockin/sweep.hpp"

#include "lockin/classify.hpp"
#include "lockin/critical_load.hpp"
#include "lockin/errors.hpp"
#include "lockin/fd_oracle.hpp"
#include "lockin/maps.hpp"
#include "lockin/mode_shape.hpp"
#include "lockin/serialize.hpp"
#include "lockin/spectral.hpp"
#include "lockin/svg.hpp"
#include "lockin/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numbers>

namespace fs = std::filesystem;

namespace lockin {

namespace {

HillOptions hill_options(const JobConfig& cfg) {
    HillOptions h;
    h.truncation = cfg.hill_M;
    h.brillouin_tolerance = cfg.brillouin_tolerance;
    return h;
}

CriticalSearchOptions search_options(const JobConfig& cfg) {
    CriticalSearchOptions s;
    s.re_threshold = cfg.re_threshold;
    s.P_lo = cfg.P_lo;
    s.P_hi = cfg.P_hi;
    s.coarse_steps = cfg.coarse_steps;
    s.bisection_tol = cfg.bisection_tol;
    s.hill = hill_options(cfg);
    s.tol_lock = cfg.tol_lock;
    return s;
}

bool is_map_kind(JobKind k) {
    return k == JobKind::pendulum_map || k == JobKind::winkler_map;
}
bool search_kind(JobKind k) {
    return k == JobKind::winkler_map || k == JobKind::winkler_critical ||
           k == JobKind::reconstruct || k == JobKind::oracle_compare;
}

// Resolved-configuration echo for the manifest. Deliberately excludes
// anything time- or machine-dependent; 'workers' appears here (and only
// here) because the manifest is the one artifact allowed to differ between
// otherwise identical runs.
ordered_json config_echo(const JobConfig& cfg) {
    ordered_json j;
    j["kind"] = to_string(cfg.kind);
    j["workers"] = cfg.workers > 0 ? cfg.workers : 1;
    if (is_map_kind(cfg.kind)) {
        ordered_json axes;
        for (const auto& [name, ax] : {std::pair{"x", &cfg.x}, {"y", &cfg.y}}) {
            ordered_json a;
            a["min"] = ax->min;
            a["max"] = ax->max;
            a["count"] = ax->count;
            a["scale"] = ax->scale;
            axes[name] = std::move(a);
        }
        j["axes"] = std::move(axes);
    }
    if (cfg.kind == JobKind::pendulum_map || cfg.kind == JobKind::pendulum_point)
        j["C_bar"] = cfg.C_bar;
    if (cfg.kind == JobKind::pendulum_point) {
        j["A_bar"] = cfg.A_bar;
        j["Omega_bar"] = cfg.Omega_bar;
    }
    if (cfg.kind == JobKind::winkler_critical || cfg.kind == JobKind::reconstruct) {
        j["K_bar"] = cfg.K_bar;
        j["lambda_bar"] = cfg.lambda_bar;
    }
    if (search_kind(cfg.kind)) {
        ordered_json s;
        s["re_threshold"] = cfg.re_threshold;
        s["P_lo"] = cfg.P_lo;
        s["P_hi"] = cfg.P_hi;
        s["coarse_steps"] = cfg.coarse_steps;
        s["bisection_tol"] = cfg.bisection_tol;
        j["search"] = std::move(s);
    }
    if (cfg.kind == JobKind::reconstruct) {
        j["domain_periods"] = cfg.domain_periods;
        j["samples_per_period"] = cfg.samples_per_period;
    }
    if (cfg.kind == JobKind::oracle_compare) {
        ordered_json pts = ordered_json::array();
        for (const auto& [K, lam] : cfg.points)
            pts.push_back(ordered_json{{"K_bar", K}, {"lambda_bar", lam}});
        j["points"] = std::move(pts);
        ordered_json fd;
        fd["L_over_lambda"] = cfg.L_over_lambda;
        fd["nodes_per_lambda"] = cfg.nodes_per_lambda;
        fd["bc"] = to_string(cfg.bc);
        fd["n_fft"] = cfg.n_fft;
        j["fd"] = std::move(fd);
    }
    if (cfg.kind == JobKind::reconstruct) j["n_fft"] = cfg.n_fft;
    ordered_json hill;
    hill["M"] = cfg.hill_M;
    hill["brillouin_tolerance"] = hill_options(cfg).resolved_tolerance();
    hill["tol_lock"] = cfg.tol_lock;
    j["hill"] = std::move(hill);
    ordered_json out;
    out["dir"] = cfg.out_dir;
    out["basename"] = cfg.basename;
    if (is_map_kind(cfg.kind)) out["svg_channel"] = cfg.svg_channel;
    j["output"] = std::move(out);
    return j;
}

ordered_json exponent_json(cxd s) {
    return ordered_json{{"re", s.real()}, {"im", s.imag()}};
}

ordered_json map_summary_json(const JobConfig& cfg, const TongueMap& map,
                              std::size_t failed) {
    ordered_json j;
    j["kind"] = to_string(cfg.kind);
    j["x_label"] = map.x_label;
    j["y_label"] = map.y_label;
    j["nx"] = map.nx();
    j["ny"] = map.ny();
    ordered_json names = ordered_json::array();
    for (const auto& [name, values] : map.channels) names.push_back(name);
    j["channels"] = std::move(names);
    j["cells_total"] = map.nx() * map.ny();
    j["cells_failed"] = failed;
    j["truncation"] = map.metadata.truncation;
    j["brillouin_tolerance"] = map.metadata.brillouin_tolerance;
    j["tol_lock"] = map.metadata.tol_lock;
    j["tool_version"] = map.metadata.tool_version;
    if (cfg.kind == JobKind::pendulum_map) j["C_bar"] = cfg.C_bar;
    return j;
}

std::size_t count_nan(const std::vector<double>& values) {
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(),
                      [](double v) { return std::isnan(v); }));
}

int next_pow2_at_least(int lo, std::size_t len) {
    int n = lo;
    while (static_cast<std::size_t>(n) < len) n *= 2;
    return n;
}

struct Artifacts {
    // name -> content, written in insertion order, all before the manifest
    std::vector<std::pair<std::string, std::string>> files;
    std::size_t cells_total = 0;
    std::size_t cells_failed = 0;
    ordered_json result; // <basename>.json content

    void add(const std::string& name, std::string content) {
        files.emplace_back(name, std::move(content));
    }
};

Artifacts run_map(const JobConfig& cfg) {
    Artifacts art;
    const int workers = cfg.workers > 0 ? cfg.workers : 1;
    TongueMap map;
    if (cfg.kind == JobKind::pendulum_map) {
        map = stability_map_pendulum(linspace(cfg.x.min, cfg.x.max, cfg.x.count),
                                     linspace(cfg.y.min, cfg.y.max, cfg.y.count),
                                     cfg.C_bar, hill_options(cfg), cfg.tol_lock,
                                     workers);
    } else {
        map = tongue_map_winkler(linspace(cfg.x.min, cfg.x.max, cfg.x.count),
                                 linspace(cfg.y.min, cfg.y.max, cfg.y.count),
                                 search_options(cfg), workers);
    }
    art.cells_total = map.nx() * map.ny();
    art.cells_failed = count_nan(map.channels.front().second);
    art.result = map_summary_json(cfg, map, art.cells_failed);
    art.add(cfg.basename + ".csv", tonguemap_csv(map));
    art.add(cfg.basename + ".svg", heatmap_svg(map, cfg.svg_channel));
    return art;
}

ordered_json critical_json(const CriticalLoadResult& res, double K_bar,
                           double lambda_bar) {
    ordered_json j;
    j["K_bar"] = K_bar;
    j["lambda_bar"] = lambda_bar;
    j["P_bar_cr"] = res.P_bar_cr;
    j["pcr_ratio"] = res.P_bar_cr / (8.0 * std::numbers::pi * std::numbers::pi);
    j["classification"] = to_string(res.classification.tag);
    j["locked_fraction"] = res.locked_fraction;
    j["truncation"] = res.truncation;
    j["coarse_evaluations"] = res.coarse_evaluations;
    j["bisection_iterations"] = res.bisection_iterations;
    j["bracket_width"] = res.bracket_width;
    j["boundary_degenerate"] = res.boundary_degenerate;
    ordered_json exps = ordered_json::array();
    for (const auto& rec : res.critical_exponents) exps.push_back(exponent_json(rec.s));
    j["critical_exponents"] = std::move(exps);
    return j;
}

Artifacts run_winkler_critical(const JobConfig& cfg) {
    Artifacts art;
    art.cells_total = 1;
    const CriticalLoadResult res =
        critical_load(cfg.K_bar, cfg.lambda_bar, search_options(cfg));
    art.result = critical_json(res, cfg.K_bar, cfg.lambda_bar);
    art.result["kind"] = to_string(cfg.kind);
    return art;
}

Artifacts run_pendulum_point(const JobConfig& cfg) {
    Artifacts art;
    art.cells_total = 1;
    PendulumParams p;
    p.A_bar = cfg.A_bar;
    p.Omega_bar = cfg.Omega_bar;
    p.C_bar = cfg.C_bar;
    const FloquetSpectrum spec =
        floquet_exponents(pendulum_system(p), hill_options(cfg), true);
    const ExponentRecord& lead = spec.leading();
    const PeriodicityClass cls =
        classify_fraction(fold_fraction(lead.s.imag(), p.Omega_bar), cfg.tol_lock);

    ordered_json j;
    j["kind"] = to_string(cfg.kind);
    j["A_bar"] = p.A_bar;
    j["Omega_bar"] = p.Omega_bar;
    j["T_bar_over_2pi"] = 1.0 / p.Omega_bar;
    j["C_bar"] = p.C_bar;
    j["max_re"] = lead.s.real();
    j["stable"] = lead.s.real() <= 0.0;
    j["classification"] = to_string(cls.tag);
    j["locked_fraction"] = cls.locked_fraction;
    j["boundary_degenerate"] = spec.boundary_degenerate;
    j["truncation"] = spec.truncation;
    ordered_json exps = ordered_json::array();
    for (const auto& rec : spec.exponents) {
        ordered_json e = exponent_json(rec.s);
        e["at_zone_boundary"] = rec.at_zone_boundary;
        exps.push_back(std::move(e));
    }
    j["exponents"] = std::move(exps);
    art.result = std::move(j);
    return art;
}

Artifacts run_reconstruct(const JobConfig& cfg) {
    Artifacts art;
    art.cells_total = 1;
    const double omega = 2.0 * std::numbers::pi / cfg.lambda_bar;
    const CriticalLoadResult res =
        critical_load(cfg.K_bar, cfg.lambda_bar, search_options(cfg));
    if (res.critical_exponents.empty())
        throw numeric_error("critical search returned no exponent records");

    // Evaluate the branch with the largest Im(s) (nonnegative wavenumber);
    // for locked classes snap the bisection-converged exponent onto the
    // zone edge so the sampled mode is exactly T- or 2T-periodic.
    ExponentRecord rec = *std::max_element(
        res.critical_exponents.begin(), res.critical_exponents.end(),
        [](const ExponentRecord& a, const ExponentRecord& b) {
            return a.s.imag() < b.s.imag();
        });
    const cxd raw = rec.s;
    rec.s = snap_locked_exponent(rec.s, omega, res.classification);

    const double xi_max = cfg.domain_periods * cfg.lambda_bar;
    const ModeShape mode =
        reconstruct_mode(rec, omega, 0.0, xi_max, cfg.samples_per_period);

    std::string csv = "xi,z_re,z_im\n";
    for (std::size_t i = 0; i < mode.xi.size(); ++i) {
        csv += format_g17(mode.xi[i]);
        csv += ',';
        csv += format_g17(mode.values[i].real());
        csv += ',';
        csv += format_g17(mode.values[i].imag());
        csv += '\n';
    }
    art.add(cfg.basename + "_mode.csv", std::move(csv));

    SampledSignal sig;
    sig.values = mode.real_part;
    sig.spacing = mode.xi.size() > 1 ? mode.xi[1] - mode.xi[0] : 1.0;
    sig.origin = mode.xi.front();
    const int n_fft = next_pow2_at_least(cfg.n_fft, sig.values.size());
    const SpectrumPeak peak = dft_peak(sig, n_fft);

    ordered_json j = critical_json(res, cfg.K_bar, cfg.lambda_bar);
    j["kind"] = to_string(cfg.kind);
    j["exponent_raw"] = exponent_json(raw);
    j["exponent_evaluated"] = exponent_json(rec.s);
    j["xi_min"] = 0.0;
    j["xi_max"] = xi_max;
    j["samples_per_period"] = cfg.samples_per_period;
    j["n_samples"] = mode.xi.size();
    ordered_json pk;
    pk["wavenumber"] = peak.wavenumber;
    pk["bin_width"] = peak.bin_width;
    pk["n_fft"] = peak.n_fft;
    j["mode_dft_peak"] = std::move(pk);
    art.result = std::move(j);
    return art;
}

Artifacts run_oracle_compare(const JobConfig& cfg) {
    Artifacts art;
    art.cells_total = cfg.points.size();
    double max_rel = 0.0;
    double max_bins = 0.0;
    ordered_json pts = ordered_json::array();
    for (const auto& [K, lam] : cfg.points) {
        const CriticalLoadResult hill = critical_load(K, lam, search_options(cfg));

        FdProblem prob;
        prob.K_bar = K;
        prob.lambda_bar = lam;
        prob.domain_length = cfg.L_over_lambda * lam;
        prob.nodes = static_cast<int>(std::lround(
            cfg.L_over_lambda * static_cast<double>(cfg.nodes_per_lambda)));
        prob.bc = cfg.bc;
        const FdBucklingResult fd = fd_buckling(prob);

        const double rel = std::abs(fd.P_bar_cr - hill.P_bar_cr) / hill.P_bar_cr;
        max_rel = std::max(max_rel, rel);

        SampledSignal sig;
        sig.values = fd.mode;
        sig.spacing = prob.spacing();
        sig.origin = prob.spacing();
        const int n_fft = next_pow2_at_least(cfg.n_fft, sig.values.size());
        const SpectrumPeak peak = dft_peak(sig, n_fft);

        // Dominant FD wavenumber must land on the extended spectrum
        // {n/lambda_bar +- nu} of the Hill critical exponent.
        double nu = 0.0;
        for (const auto& recd : hill.critical_exponents)
            nu = std::max(nu, std::abs(recd.s.imag()) / (2.0 * std::numbers::pi));
        double dist = std::numeric_limits<double>::infinity();
        for (double w : extended_spectrum(nu, lam, 0, 8))
            dist = std::min(dist, std::abs(peak.wavenumber - w));
        const double bins = dist / peak.bin_width;
        max_bins = std::max(max_bins, bins);

        ordered_json pj;
        pj["K_bar"] = K;
        pj["lambda_bar"] = lam;
        pj["P_bar_cr_hill"] = hill.P_bar_cr;
        pj["P_bar_cr_fd"] = fd.P_bar_cr;
        pj["rel_discrepancy"] = rel;
        pj["classification"] = to_string(hill.classification.tag);
        pj["locked_fraction"] = hill.locked_fraction;
        pj["fd_residual"] = fd.residual;
        pj["fd_nodes"] = prob.nodes;
        pj["mode_peak_wavenumber"] = peak.wavenumber;
        pj["nu"] = nu;
        pj["peak_distance_bins"] = bins;
        pts.push_back(std::move(pj));
    }
    ordered_json j;
    j["kind"] = to_string(cfg.kind);
    j["points"] = std::move(pts);
    j["max_rel_discrepancy"] = max_rel;
    j["max_peak_distance_bins"] = max_bins;
    j["bc"] = to_string(cfg.bc);
    j["L_over_lambda"] = cfg.L_over_lambda;
    j["nodes_per_lambda"] = cfg.nodes_per_lambda;
    art.result = std::move(j);
    return art;
}

} // namespace

int resolve_workers(int cli_flag, int config_value) {
    if (cli_flag > 0) return cli_flag;
    if (config_value > 0) return config_value;
    if (const char* env = std::getenv("LOCKIN_WORKERS")) {
        const std::string s(env);
        try {
            std::size_t pos = 0;
            const int v = std::stoi(s, &pos);
            if (pos != s.size() || v < 1)
                throw config_error("");
            return v;
        } catch (const std::exception&) {
            throw config_error("LOCKIN_WORKERS must be a positive integer, got '" +
                               s + "'");
        }
    }
    return 1;
}

RunManifest run_job(const JobConfig& cfg) {
    RunManifest manifest;
    manifest.tool_version = tool_version;
    manifest.config_echo = config_echo(cfg);
    manifest.started_utc = utc_now_iso8601();

    // Compute phase (the only parallel part), then a single-threaded write
    // phase: every data artifact lands atomically before the manifest, so
    // an interrupted run leaves no manifest behind.
    Artifacts art;
    switch (cfg.kind) {
        case JobKind::pendulum_map:
        case JobKind::winkler_map: art = run_map(cfg); break;
        case JobKind::winkler_critical: art = run_winkler_critical(cfg); break;
        case JobKind::pendulum_point: art = run_pendulum_point(cfg); break;
        case JobKind::reconstruct: art = run_reconstruct(cfg); break;
        case JobKind::oracle_compare: art = run_oracle_compare(cfg); break;
    }

    art.result["tool_version"] = tool_version;
    art.files.emplace_back(cfg.basename + ".json", art.result.dump(2) + "\n");

    const fs::path dir(cfg.out_dir);
    for (const auto& [name, content] : art.files) {
        write_text_atomic((dir / name).string(), content);
        manifest.outputs.push_back(describe_output(cfg.out_dir, name));
    }

    manifest.cells_total = art.cells_total;
    manifest.cells_failed = art.cells_failed;
    manifest.status =
        art.cells_failed > 0 ? "complete-with-cell-errors" : "complete";
    manifest.finished_utc = utc_now_iso8601();
    write_manifest(manifest, (dir / (cfg.basename + ".manifest.json")).string());
    return manifest;
}

} // namespace lockin
