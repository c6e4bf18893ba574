#include "lockin/config.hpp"

#include "lockin/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

namespace lockin {

const char* to_string(JobKind kind) {
    switch (kind) {
        case JobKind::pendulum_map: return "pendulum-map";
        case JobKind::winkler_map: return "winkler-map";
        case JobKind::winkler_critical: return "winkler-critical";
        case JobKind::pendulum_point: return "pendulum-point";
        case JobKind::reconstruct: return "reconstruct";
        case JobKind::oracle_compare: return "oracle-compare";
    }
    return "unknown";
}

JobKind job_kind_from(const std::string& name) {
    if (name == "pendulum-map") return JobKind::pendulum_map;
    if (name == "winkler-map") return JobKind::winkler_map;
    if (name == "winkler-critical") return JobKind::winkler_critical;
    if (name == "pendulum-point") return JobKind::pendulum_point;
    if (name == "reconstruct") return JobKind::reconstruct;
    if (name == "oracle-compare") return JobKind::oracle_compare;
    throw config_error("unknown job kind '" + name +
                       "' (expected pendulum-map, winkler-map, winkler-critical, "
                       "pendulum-point, reconstruct or oracle-compare)");
}

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const Entry& en) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(en.value, &pos);
        if (pos != en.value.size())
            fail(en.line, "trailing characters after number in '" + en.key +
                          " = " + en.value + "'");
        return v;
    } catch (const config_error&) {
        throw;
    } catch (const std::exception&) {
        fail(en.line, "expected a number for key '" + en.key + "', got '" +
                      en.value + "'");
    }
}

int to_int(const Entry& en) {
    const double v = to_double(en);
    if (std::floor(v) != v || std::abs(v) > 2e9)
        fail(en.line, "expected an integer for key '" + en.key + "', got '" +
                      en.value + "'");
    return static_cast<int>(v);
}

std::vector<std::pair<double, double>> to_points(const Entry& en) {
    // "K:lambda, K:lambda, ..."
    std::vector<std::pair<double, double>> pts;
    std::stringstream ss(en.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            fail(en.line, "points entries take the form K_bar:lambda_bar, got '" +
                          item + "'");
        try {
            pts.emplace_back(std::stod(item.substr(0, colon)),
                             std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            fail(en.line, "could not parse point '" + item + "'");
        }
    }
    if (pts.empty()) fail(en.line, "points list is empty");
    return pts;
}

std::vector<Entry> tokenize(const std::string& text) {
    std::vector<Entry> entries;
    std::set<std::string> seen;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    static const std::set<std::string> known_sections = {"job", "axes", "hill",
                                                         "fd", "output"};
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                fail(line, "malformed section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (known_sections.find(section) == known_sections.end())
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            fail(line, "expected 'key = value', got '" + s + "'");
        if (section.empty())
            fail(line, "key outside a [section]");
        Entry en;
        en.section = section;
        en.key = trim(s.substr(0, eq));
        en.value = trim(s.substr(eq + 1));
        en.line = line;
        if (en.key.empty()) fail(line, "empty key");
        if (en.value.empty()) fail(line, "empty value for key '" + en.key + "'");
        if (!seen.insert(section + "." + en.key).second)
            fail(line, "duplicate key '" + en.key + "' in [" + section + "]");
        entries.push_back(std::move(en));
    }
    return entries;
}

bool is_map(JobKind k) {
    return k == JobKind::pendulum_map || k == JobKind::winkler_map;
}
bool uses_search(JobKind k) {
    return k == JobKind::winkler_map || k == JobKind::winkler_critical ||
           k == JobKind::reconstruct || k == JobKind::oracle_compare;
}

// The closed key table: which [section].key is legal for which job kind.
bool key_applies(JobKind k, const std::string& section, const std::string& key) {
    if (section == "job") {
        if (key == "kind" || key == "workers") return true;
        if (key == "C_bar")
            return k == JobKind::pendulum_map || k == JobKind::pendulum_point;
        if (key == "K_bar" || key == "lambda_bar")
            return k == JobKind::winkler_critical || k == JobKind::reconstruct;
        if (key == "A_bar" || key == "Omega_bar" || key == "T_over_2pi")
            return k == JobKind::pendulum_point;
        if (key == "re_threshold" || key == "P_lo" || key == "P_hi" ||
            key == "coarse_steps" || key == "bisection_tol")
            return uses_search(k);
        if (key == "domain_periods" || key == "samples_per_period")
            return k == JobKind::reconstruct;
        if (key == "points") return k == JobKind::oracle_compare;
        return false;
    }
    if (section == "axes")
        return is_map(k) &&
               (key == "x_min" || key == "x_max" || key == "x_count" ||
                key == "x_scale" || key == "y_min" || key == "y_max" ||
                key == "y_count" || key == "y_scale");
    if (section == "hill")
        return key == "M" || key == "brillouin_tolerance" || key == "tol_lock";
    if (section == "fd") {
        if (key == "n_fft")
            return k == JobKind::oracle_compare || k == JobKind::reconstruct;
        return k == JobKind::oracle_compare &&
               (key == "L_over_lambda" || key == "nodes_per_lambda" || key == "bc");
    }
    if (section == "output") {
        if (key == "dir" || key == "basename") return true;
        if (key == "svg_channel") return is_map(k);
        return false;
    }
    return false;
}

void apply_axis_defaults(JobConfig& cfg) {
    if (cfg.kind == JobKind::pendulum_map) {
        cfg.x = {0.1, 2.0, 96, "linear"};
        cfg.y = {0.0, 1.0, 51, "linear"};
    } else if (cfg.kind == JobKind::winkler_map) {
        cfg.x = {0.01, 2.0, 100, "linear"};
        cfg.y = {0.0, 0.5, 26, "linear"};
    }
}

} // namespace

JobConfig parse_config(const std::string& text, std::optional<JobKind> kind_hint) {
    const std::vector<Entry> entries = tokenize(text);

    // The job kind gates the key table, so resolve it first.
    JobConfig cfg;
    bool kind_from_file = false;
    for (const auto& en : entries) {
        if (en.section == "job" && en.key == "kind") {
            JobKind k;
            try {
                k = job_kind_from(en.value);
            } catch (const config_error& e) {
                fail(en.line, e.what());
            }
            cfg.kind = k;
            kind_from_file = true;
        }
    }
    if (!kind_from_file) {
        if (!kind_hint)
            throw config_error("config: missing required key 'kind' in [job] "
                               "(and no subcommand supplied it)");
        cfg.kind = *kind_hint;
    } else if (kind_hint && cfg.kind != *kind_hint) {
        throw config_error(std::string("config: [job] kind '") + to_string(cfg.kind) +
                           "' does not match the requested subcommand '" +
                           to_string(*kind_hint) + "'");
    }

    apply_axis_defaults(cfg);
    cfg.P_hi = 1.2 * 8.0 * std::numbers::pi * std::numbers::pi;

    bool has_K = false, has_lambda = false, has_A = false;
    bool has_Omega = false, has_T = false;
    double T_over_2pi = 0.0;

    for (const auto& en : entries) {
        if (!key_applies(cfg.kind, en.section, en.key))
            fail(en.line, "unknown or inapplicable key '" + en.key + "' in [" +
                          en.section + "] for job kind '" + to_string(cfg.kind) + "'");

        if (en.section == "job") {
            if (en.key == "kind") continue;
            if (en.key == "workers") {
                cfg.workers = to_int(en);
                if (cfg.workers < 1) fail(en.line, "workers must be >= 1");
            } else if (en.key == "C_bar") {
                cfg.C_bar = to_double(en);
                if (cfg.C_bar < 0.0) fail(en.line, "C_bar must be >= 0");
            } else if (en.key == "K_bar") {
                cfg.K_bar = to_double(en);
                has_K = true;
                if (cfg.K_bar < 0.0 || cfg.K_bar >= 1.0)
                    fail(en.line, "K_bar must satisfy 0 <= K_bar < 1 (got " +
                                  en.value + ")");
            } else if (en.key == "lambda_bar") {
                cfg.lambda_bar = to_double(en);
                has_lambda = true;
                if (!(cfg.lambda_bar > 0.0)) fail(en.line, "lambda_bar must be > 0");
            } else if (en.key == "A_bar") {
                cfg.A_bar = to_double(en);
                has_A = true;
                if (cfg.A_bar < 0.0) fail(en.line, "A_bar must be >= 0");
            } else if (en.key == "Omega_bar") {
                cfg.Omega_bar = to_double(en);
                has_Omega = true;
                if (!(cfg.Omega_bar > 0.0)) fail(en.line, "Omega_bar must be > 0");
            } else if (en.key == "T_over_2pi") {
                T_over_2pi = to_double(en);
                has_T = true;
                if (!(T_over_2pi > 0.0)) fail(en.line, "T_over_2pi must be > 0");
            } else if (en.key == "re_threshold") {
                cfg.re_threshold = to_double(en);
                if (!(cfg.re_threshold > 0.0)) fail(en.line, "re_threshold must be > 0");
            } else if (en.key == "P_lo") {
                cfg.P_lo = to_double(en);
                if (cfg.P_lo < 0.0) fail(en.line, "P_lo must be >= 0");
            } else if (en.key == "P_hi") {
                cfg.P_hi = to_double(en);
                if (!(cfg.P_hi > 0.0)) fail(en.line, "P_hi must be > 0");
            } else if (en.key == "coarse_steps") {
                cfg.coarse_steps = to_int(en);
                if (cfg.coarse_steps < 2) fail(en.line, "coarse_steps must be >= 2");
            } else if (en.key == "bisection_tol") {
                cfg.bisection_tol = to_double(en);
                if (!(cfg.bisection_tol > 0.0))
                    fail(en.line, "bisection_tol must be > 0");
            } else if (en.key == "domain_periods") {
                cfg.domain_periods = to_int(en);
                if (cfg.domain_periods < 2) fail(en.line, "domain_periods must be >= 2");
            } else if (en.key == "samples_per_period") {
                cfg.samples_per_period = to_int(en);
                if (cfg.samples_per_period < 8)
                    fail(en.line, "samples_per_period must be >= 8");
            } else if (en.key == "points") {
                cfg.points = to_points(en);
                for (const auto& [K, lam] : cfg.points) {
                    if (K < 0.0 || K >= 1.0)
                        fail(en.line, "points: K_bar must satisfy 0 <= K_bar < 1");
                    if (!(lam > 0.0)) fail(en.line, "points: lambda_bar must be > 0");
                }
            }
        } else if (en.section == "axes") {
            AxisSpec& ax = en.key.front() == 'x' ? cfg.x : cfg.y;
            const std::string field = en.key.substr(2);
            if (field == "min") ax.min = to_double(en);
            else if (field == "max") ax.max = to_double(en);
            else if (field == "count") {
                ax.count = to_int(en);
                if (ax.count < 1) fail(en.line, en.key + " must be >= 1");
            } else if (field == "scale") {
                ax.scale = en.value;
                if (ax.scale != "linear")
                    fail(en.line, "only scale = linear is supported, got '" +
                                  en.value + "'");
            }
        } else if (en.section == "hill") {
            if (en.key == "M") {
                cfg.hill_M = to_int(en);
                if (cfg.hill_M < 1 || cfg.hill_M > 64)
                    fail(en.line, "M must be in [1, 64]");
            } else if (en.key == "brillouin_tolerance") {
                cfg.brillouin_tolerance = to_double(en);
                if (!(cfg.brillouin_tolerance > 0.0))
                    fail(en.line, "brillouin_tolerance must be > 0");
            } else if (en.key == "tol_lock") {
                cfg.tol_lock = to_double(en);
                if (!(cfg.tol_lock > 0.0)) fail(en.line, "tol_lock must be > 0");
            }
        } else if (en.section == "fd") {
            if (en.key == "L_over_lambda") {
                cfg.L_over_lambda = to_double(en);
                if (cfg.L_over_lambda < 20.0)
                    fail(en.line, "L_over_lambda must be >= 20");
            } else if (en.key == "nodes_per_lambda") {
                cfg.nodes_per_lambda = to_int(en);
                if (cfg.nodes_per_lambda < 50)
                    fail(en.line, "nodes_per_lambda must be >= 50");
            } else if (en.key == "bc") {
                try {
                    cfg.bc = fd_bc_from(en.value);
                } catch (const argument_error& e) {
                    fail(en.line, e.what());
                }
            } else if (en.key == "n_fft") {
                cfg.n_fft = to_int(en);
                if (cfg.n_fft < 16 || (cfg.n_fft & (cfg.n_fft - 1)) != 0)
                    fail(en.line, "n_fft must be a power of two >= 16");
            }
        } else if (en.section == "output") {
            if (en.key == "dir") cfg.out_dir = en.value;
            else if (en.key == "basename") cfg.basename = en.value;
            else if (en.key == "svg_channel") cfg.svg_channel = en.value;
        }
    }

    // Cross-field checks and per-kind required keys.
    if (is_map(cfg.kind)) {
        for (const AxisSpec* ax : {&cfg.x, &cfg.y})
            if (ax->count > 1 && !(ax->min < ax->max))
                throw config_error("config: axis min must be < max when count > 1");
        if (cfg.kind == JobKind::winkler_map) {
            if (!(cfg.x.min > 0.0))
                throw config_error("config: lambda_bar axis must be > 0");
            if (cfg.y.min < 0.0 || cfg.y.max >= 1.0)
                throw config_error(
                    "config: K_bar axis must satisfy 0 <= K_bar < 1");
        }
        if (cfg.kind == JobKind::pendulum_map && !(cfg.x.min > 0.0))
            throw config_error("config: T_over_2pi axis must be > 0");
        if (cfg.svg_channel.empty())
            cfg.svg_channel = cfg.kind == JobKind::pendulum_map ? "max_im_fraction"
                                                                : "locked_fraction";
    }
    if (cfg.kind == JobKind::winkler_critical || cfg.kind == JobKind::reconstruct) {
        if (!has_K)
            throw config_error("config: missing required key 'K_bar' for job kind '" +
                               std::string(to_string(cfg.kind)) + "'");
        if (!has_lambda)
            throw config_error("config: missing required key 'lambda_bar' for job "
                               "kind '" + std::string(to_string(cfg.kind)) + "'");
    }
    if (cfg.kind == JobKind::pendulum_point) {
        if (!has_A)
            throw config_error("config: missing required key 'A_bar' for "
                               "pendulum-point");
        if (has_Omega == has_T)
            throw config_error("config: pendulum-point needs exactly one of "
                               "'Omega_bar' or 'T_over_2pi'");
        if (has_T) cfg.Omega_bar = 1.0 / T_over_2pi;
    }
    if (cfg.kind == JobKind::oracle_compare && cfg.points.empty()) {
        cfg.points = {{0.0, 1.0}, {0.4, 0.42}, {0.4, 0.57}, {0.2, 1.0}, {0.3, 0.5}};
    }
    if (uses_search(cfg.kind) && !(cfg.P_lo < cfg.P_hi))
        throw config_error("config: require P_lo < P_hi");
    return cfg;
}

JobConfig load_config_file(const std::string& path,
                           std::optional<JobKind> kind_hint) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), kind_hint);
}

} // namespace lockin
