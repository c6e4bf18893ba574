#include "lockin/serialize.hpp"

#include "lockin/errors.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace lockin {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec)
            throw io_error("cannot create directory '" +
                           target.parent_path().string() + "': " + ec.message());
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw io_error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw io_error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw io_error("cannot rename '" + tmp.string() + "' to '" + path +
                       "': " + ec.message());
    }
}

std::string tonguemap_csv(const TongueMap& map) {
    std::string out = "x,y";
    for (const auto& [name, values] : map.channels) {
        out += ',';
        out += name;
    }
    out += '\n';
    const std::size_t nx = map.nx();
    for (std::size_t iy = 0; iy < map.ny(); ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            out += format_g17(map.x_values[ix]);
            out += ',';
            out += format_g17(map.y_values[iy]);
            for (const auto& [name, values] : map.channels) {
                out += ',';
                out += format_g17(values[iy * nx + ix]);
            }
            out += '\n';
        }
    }
    return out;
}

void write_tonguemap_csv(const TongueMap& map, const std::string& path) {
    write_text_atomic(path, tonguemap_csv(map));
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_csv_double(const std::string& s, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw io_error("csv line " + std::to_string(line_no) +
                           ": malformed number '" + s + "'");
        return v;
    } catch (const io_error&) {
        throw;
    } catch (const std::exception&) {
        throw io_error("csv line " + std::to_string(line_no) +
                       ": malformed number '" + s + "'");
    }
}

} // namespace

TongueMap read_tonguemap_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw io_error("'" + path + "': empty file");
    const std::vector<std::string> header = split_commas(line);
    if (header.size() < 3 || header[0] != "x" || header[1] != "y")
        throw io_error("'" + path + "': header must start with x,y");

    TongueMap map;
    for (std::size_t c = 2; c < header.size(); ++c)
        map.channels.emplace_back(header[c], std::vector<double>{});

    // Rows are emitted y-outer x-inner, so x values repeat with period nx and
    // the first row of each y-band carries a new y value.
    std::vector<double> xs, ys;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_commas(line);
        if (fields.size() != header.size())
            throw io_error("csv line " + std::to_string(line_no) + ": expected " +
                           std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()));
        const double x = parse_csv_double(fields[0], line_no);
        const double y = parse_csv_double(fields[1], line_no);
        if (ys.empty() || y != ys.back()) ys.push_back(y);
        if (ys.size() == 1) xs.push_back(x);
        for (std::size_t c = 2; c < fields.size(); ++c)
            map.channels[c - 2].second.push_back(parse_csv_double(fields[c], line_no));
    }
    if (xs.empty())
        throw io_error("'" + path + "': no data rows");
    map.x_values = std::move(xs);
    map.y_values = std::move(ys);
    const std::size_t cells = map.nx() * map.ny();
    for (const auto& [name, values] : map.channels)
        if (values.size() != cells)
            throw io_error("'" + path + "': channel '" + name + "' has " +
                           std::to_string(values.size()) + " cells, expected " +
                           std::to_string(cells));
    return map;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path + "' for checksumming");
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

std::string fnv1a64_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_json_atomic(const ordered_json& j, const std::string& path) {
    write_text_atomic(path, j.dump(2) + "\n");
}

} // namespace lockin
