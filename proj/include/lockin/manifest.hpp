#pragma once

#include "lockin/serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lockin {

// Written once, after every other artifact, if and only if the run
// completed (possibly with per-cell failures); a crash leaves no manifest.
struct RunManifest {
    std::string tool_version;
    ordered_json config_echo;  // resolved configuration, no timestamps
    std::string started_utc;   // ISO 8601
    std::string finished_utc;
    std::size_t cells_total = 0;
    std::size_t cells_failed = 0;
    std::string status; // "complete" | "complete-with-cell-errors"

    struct OutputRecord {
        std::string path;           // relative to the manifest directory
        std::uint64_t bytes = 0;
        std::string fnv1a64;        // hex checksum of the file content
    };
    std::vector<OutputRecord> outputs;
};

std::string utc_now_iso8601();

ordered_json manifest_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& path);

// Convenience: stat + checksum an already-written artifact.
RunManifest::OutputRecord describe_output(const std::string& dir,
                                          const std::string& filename);

} // namespace lockin
