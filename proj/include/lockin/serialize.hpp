#pragma once

#include "lockin/maps.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace lockin {

using ordered_json = nlohmann::ordered_json;

// %.17g rendering (round-trips doubles exactly; "nan"/"inf" for specials).
std::string format_g17(double v);

// Write content to path atomically: temp file in the same directory, then
// rename. Parent directories are created. Throws io_error.
void write_text_atomic(const std::string& path, const std::string& content);

// CSV with header "x,y,<channel>,..." and one row per cell, row-major in y
// then x (outer y, inner x), all floats %.17g. No comment or metadata lines.
std::string tonguemap_csv(const TongueMap& map);
void write_tonguemap_csv(const TongueMap& map, const std::string& path);

// Re-parse of tonguemap_csv output. Axis values are recovered from the x/y
// columns in order; channel values parse back to bit-identical doubles
// (NaN compares as NaN). Used by round-trip tests and downstream readers.
TongueMap read_tonguemap_csv(const std::string& path);

// FNV-1a 64-bit checksums (manifest file fingerprints).
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64_file(const std::string& path); // io_error on read failure
std::string fnv1a64_hex(std::uint64_t h);

void write_json_atomic(const ordered_json& j, const std::string& path);

} // namespace lockin
