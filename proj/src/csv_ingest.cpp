#include "windcast/csv_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "windcast/errors.hpp"
#include "windcast/timeutil.hpp"

namespace fs = std::filesystem;

namespace windcast {

namespace {

constexpr double kCoordTol = 1e-6;

bool parse_hour_name(const std::string& stem, std::int64_t& ts) {
    // YYYYMMDDTHH
    if (stem.size() != 11 || stem[8] != 'T') return false;
    for (std::size_t i = 0; i < stem.size(); ++i) {
        if (i == 8) continue;
        if (!std::isdigit(static_cast<unsigned char>(stem[i]))) return false;
    }
    const int y = std::stoi(stem.substr(0, 4));
    const int mo = std::stoi(stem.substr(4, 2));
    const int d = std::stoi(stem.substr(6, 2));
    const int h = std::stoi(stem.substr(9, 2));
    ts = utc_timestamp(y, mo, d, h);
    return true;
}

int coord_index(double value, double origin, double step, int count) {
    const double pos = (value - origin) / step;
    const int i = static_cast<int>(std::llround(pos));
    if (i < 0 || i >= count) return -1;
    if (std::fabs(value - (origin + step * i)) > kCoordTol) return -1;
    return i;
}

std::string fmt_coord(double lat, double lon) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6f, %.6f)", lat, lon);
    return buf;
}

}  // namespace

WindFieldSeries ingest_csv(const std::string& dir, const GridSpec& grid, double altitude_m) {
    grid.validate();
    if (!fs::is_directory(dir)) throw io_error("ingest_csv: not a directory: " + dir);

    std::vector<std::pair<std::int64_t, fs::path>> hours;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
        std::int64_t ts;
        if (parse_hour_name(entry.path().stem().string(), ts)) hours.emplace_back(ts, entry.path());
    }
    if (hours.empty()) throw validation_error("ingest_csv: no YYYYMMDDTHH.csv files in " + dir);
    std::sort(hours.begin(), hours.end());

    for (std::size_t i = 1; i < hours.size(); ++i) {
        if (hours[i].first != hours[i - 1].first + 3600) {
            throw validation_error("ingest_csv: missing hour between " +
                                   format_iso8601_utc(hours[i - 1].first) + " and " +
                                   format_iso8601_utc(hours[i].first));
        }
    }

    WindFieldSeries s;
    s.grid = grid;
    s.start_time = hours.front().first;
    s.step_seconds = 3600;
    s.altitude_m = altitude_m;
    s.resize(static_cast<std::int64_t>(hours.size()));

    std::vector<char> seen(static_cast<std::size_t>(grid.points()));
    for (std::size_t hi = 0; hi < hours.size(); ++hi) {
        const std::string fname = hours[hi].second.string();
        std::ifstream in(fname);
        if (!in) throw io_error("ingest_csv: cannot open " + fname);

        std::fill(seen.begin(), seen.end(), 0);
        std::string line;
        if (!std::getline(in, line)) throw validation_error("ingest_csv: empty file " + fname);
        // header row "lat,lon,u,v" tolerated with whitespace
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            double lat, lon, uu, vv;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &lat, &lon, &uu, &vv) != 4) {
                throw validation_error("ingest_csv: " + fname + ":" + std::to_string(lineno) +
                                       ": expected lat,lon,u,v");
            }
            const int r = coord_index(lat, grid.lat_min, grid.d_lat, grid.n_lat);
            const int c = coord_index(lon, grid.lon_min, grid.d_lon, grid.n_lon);
            if (r < 0 || c < 0) {
                throw validation_error("ingest_csv: " + fname + ":" + std::to_string(lineno) +
                                       ": unknown coordinate " + fmt_coord(lat, lon) +
                                       " not on grid");
            }
            const std::size_t flat = static_cast<std::size_t>(r) * grid.n_lon + c;
            if (seen[flat]) {
                throw validation_error("ingest_csv: " + fname + ": duplicate coordinate " +
                                       fmt_coord(lat, lon));
            }
            seen[flat] = 1;
            s.u_ref(static_cast<std::int64_t>(hi), r, c) = uu;
            s.v_ref(static_cast<std::int64_t>(hi), r, c) = vv;
        }
        for (int r = 0; r < grid.n_lat; ++r) {
            for (int c = 0; c < grid.n_lon; ++c) {
                if (!seen[static_cast<std::size_t>(r) * grid.n_lon + c]) {
                    throw validation_error("ingest_csv: " + fname + ": missing grid point " +
                                           fmt_coord(grid.lat_at(r), grid.lon_at(c)));
                }
            }
        }
    }
    s.validate();
    return s;
}

}  // namespace windcast
