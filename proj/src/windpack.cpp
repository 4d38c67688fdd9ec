#include "windcast/windpack.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "windcast/errors.hpp"
#include "windcast/timeutil.hpp"

namespace windcast {

namespace {

constexpr char kMagic[8] = {'W', 'N', 'D', 'P', 'A', 'C', 'K', '1'};

void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_f32le(std::string& out, float f) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32le(out, bits);
}

std::uint32_t get_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

float get_f32le(const unsigned char* p) {
    const std::uint32_t bits = get_u32le(p);
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
}

nlohmann::json read_header(const std::string& path, std::string& raw, std::size_t& payload_off) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open windpack file: " + path);
    raw.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    if (raw.size() < 12 || std::memcmp(raw.data(), kMagic, 8) != 0) {
        throw validation_error("windpack " + path + ": bad magic (expected WNDPACK1)");
    }
    const std::uint32_t hlen = get_u32le(reinterpret_cast<const unsigned char*>(raw.data()) + 8);
    if (raw.size() < 12 + static_cast<std::size_t>(hlen)) {
        throw validation_error("windpack " + path + ": header length " + std::to_string(hlen) +
                               " exceeds file size " + std::to_string(raw.size()));
    }
    payload_off = 12 + hlen;
    try {
        return nlohmann::json::parse(raw.substr(12, hlen));
    } catch (const std::exception& e) {
        throw validation_error("windpack " + path + ": malformed JSON header: " + e.what());
    }
}

}  // namespace

WindFieldSeries read_windpack(const std::string& path) {
    std::string raw;
    std::size_t off = 0;
    const nlohmann::json h = read_header(path, raw, off);

    WindFieldSeries s;
    try {
        s.grid = GridSpec::from_bounds(h.at("lat_min"), h.at("lat_max"), h.at("lon_min"),
                                       h.at("lon_max"), h.at("d_lat"), h.at("d_lon"),
                                       h.at("prediction_point")[0], h.at("prediction_point")[1]);
        const int n_lat = h.at("n_lat");
        const int n_lon = h.at("n_lon");
        if (n_lat != s.grid.n_lat || n_lon != s.grid.n_lon) {
            throw validation_error("windpack " + path + ": header n_lat/n_lon " +
                                   std::to_string(n_lat) + "x" + std::to_string(n_lon) +
                                   " inconsistent with bounds");
        }
        s.n_time = h.at("n_time");
        s.start_time = parse_iso8601_utc(h.at("start_time"));
        s.step_seconds = h.at("step_seconds");
        s.altitude_m = h.at("altitude_m");
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("windpack " + path + ": header field error: " + e.what());
    }
    if (s.n_time < 1) throw validation_error("windpack " + path + ": n_time must be >= 1");

    const std::size_t n_vals = static_cast<std::size_t>(s.n_time) * 2u * s.grid.points();
    const std::size_t want_bytes = n_vals * 4u;
    const std::size_t got_bytes = raw.size() - off;
    if (got_bytes != want_bytes) {
        throw validation_error("windpack " + path + ": payload size mismatch: expected " +
                               std::to_string(want_bytes) + " bytes, got " +
                               std::to_string(got_bytes));
    }

    s.u.resize(n_vals / 2);
    s.v.resize(n_vals / 2);
    const unsigned char* p = reinterpret_cast<const unsigned char*>(raw.data()) + off;
    const std::size_t plane = static_cast<std::size_t>(s.grid.points());
    for (std::int64_t t = 0; t < s.n_time; ++t) {
        for (std::size_t i = 0; i < plane; ++i, p += 4)
            s.u[static_cast<std::size_t>(t) * plane + i] = get_f32le(p);
        for (std::size_t i = 0; i < plane; ++i, p += 4)
            s.v[static_cast<std::size_t>(t) * plane + i] = get_f32le(p);
    }
    s.validate();  // rejects non-finite payload values
    return s;
}

void write_windpack(const WindFieldSeries& series, const std::string& path) {
    series.validate();

    nlohmann::json h{{"lat_min", series.grid.lat_min},
                     {"lat_max", series.grid.lat_max},
                     {"lon_min", series.grid.lon_min},
                     {"lon_max", series.grid.lon_max},
                     {"d_lat", series.grid.d_lat},
                     {"d_lon", series.grid.d_lon},
                     {"n_lat", series.grid.n_lat},
                     {"n_lon", series.grid.n_lon},
                     {"n_time", series.n_time},
                     {"start_time", format_iso8601_utc(series.start_time)},
                     {"step_seconds", series.step_seconds},
                     {"altitude_m", series.altitude_m},
                     {"prediction_point", {series.grid.pred_row, series.grid.pred_col}}};
    const std::string header = h.dump();

    std::string out;
    const std::size_t plane = static_cast<std::size_t>(series.grid.points());
    out.reserve(12 + header.size() + static_cast<std::size_t>(series.n_time) * 2 * plane * 4);
    out.append(kMagic, 8);
    put_u32le(out, static_cast<std::uint32_t>(header.size()));
    out += header;
    for (std::int64_t t = 0; t < series.n_time; ++t) {
        for (std::size_t i = 0; i < plane; ++i)
            put_f32le(out, static_cast<float>(series.u[static_cast<std::size_t>(t) * plane + i]));
        for (std::size_t i = 0; i < plane; ++i)
            put_f32le(out, static_cast<float>(series.v[static_cast<std::size_t>(t) * plane + i]));
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open for write: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw io_error("write failed: " + path);
}

std::string windpack_header_text(const std::string& path) {
    std::string raw;
    std::size_t off = 0;
    const nlohmann::json h = read_header(path, raw, off);
    return h.dump(2);
}

}  // namespace windcast
