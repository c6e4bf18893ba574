#include "lockin/manifest.hpp"

#include "lockin/errors.hpp"

#include <ctime>
#include <filesystem>

namespace lockin {

std::string utc_now_iso8601() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json manifest_json(const RunManifest& m) {
    ordered_json j;
    j["tool"] = "lockin";
    j["version"] = m.tool_version;
    j["status"] = m.status;
    j["started_utc"] = m.started_utc;
    j["finished_utc"] = m.finished_utc;
    j["cells_total"] = m.cells_total;
    j["cells_failed"] = m.cells_failed;
    j["config"] = m.config_echo;
    ordered_json outs = ordered_json::array();
    for (const auto& o : m.outputs) {
        ordered_json rec;
        rec["path"] = o.path;
        rec["bytes"] = o.bytes;
        rec["fnv1a64"] = o.fnv1a64;
        outs.push_back(std::move(rec));
    }
    j["outputs"] = std::move(outs);
    return j;
}

void write_manifest(const RunManifest& m, const std::string& path) {
    write_json_atomic(manifest_json(m), path);
}

RunManifest::OutputRecord describe_output(const std::string& dir,
                                          const std::string& filename) {
    const std::filesystem::path full = std::filesystem::path(dir) / filename;
    std::error_code ec;
    const std::uintmax_t bytes = std::filesystem::file_size(full, ec);
    if (ec)
        throw io_error("cannot stat '" + full.string() + "': " + ec.message());
    RunManifest::OutputRecord rec;
    rec.path = filename;
    rec.bytes = static_cast<std::uint64_t>(bytes);
    rec.fnv1a64 = fnv1a64_hex(fnv1a64_file(full.string()));
    return rec;
}

} // namespace lockin
