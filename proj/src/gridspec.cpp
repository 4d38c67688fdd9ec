#include "windcast/gridspec.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "windcast/errors.hpp"

namespace windcast {

GridSpec GridSpec::from_bounds(double lat_min, double lat_max, double lon_min, double lon_max,
                               double d_lat, double d_lon, int pred_row, int pred_col) {
    GridSpec g;
    g.lat_min = lat_min;
    g.lat_max = lat_max;
    g.lon_min = lon_min;
    g.lon_max = lon_max;
    g.d_lat = d_lat;
    g.d_lon = d_lon;
    if (d_lat <= 0.0 || d_lon <= 0.0) throw validation_error("GridSpec: increments must be > 0");
    g.n_lat = static_cast<int>(std::llround((lat_max - lat_min) / d_lat)) + 1;
    g.n_lon = static_cast<int>(std::llround((lon_max - lon_min) / d_lon)) + 1;
    g.pred_row = pred_row;
    g.pred_col = pred_col;
    g.validate();
    return g;
}

GridSpec GridSpec::synthetic(int n) {
    if (n < 1) throw validation_error("GridSpec::synthetic: n must be >= 1");
    return from_bounds(35.0, 35.0 + 0.5 * (n - 1), 125.0, 125.0 + 0.625 * (n - 1), 0.5, 0.625,
                       n / 2, n / 2);
}

void GridSpec::validate() const {
    if (d_lat <= 0.0 || d_lon <= 0.0) throw validation_error("GridSpec: increments must be > 0");
    const int want_lat = static_cast<int>(std::llround((lat_max - lat_min) / d_lat)) + 1;
    const int want_lon = static_cast<int>(std::llround((lon_max - lon_min) / d_lon)) + 1;
    if (n_lat != want_lat || n_lon != want_lon || n_lat < 1 || n_lon < 1) {
        throw validation_error("GridSpec: point counts " + std::to_string(n_lat) + "x" +
                               std::to_string(n_lon) + " do not match bounds/increments (want " +
                               std::to_string(want_lat) + "x" + std::to_string(want_lon) + ")");
    }
    if (pred_row < 0 || pred_row >= n_lat || pred_col < 0 || pred_col >= n_lon) {
        throw validation_error("GridSpec: prediction point (" + std::to_string(pred_row) + "," +
                               std::to_string(pred_col) + ") outside grid " +
                               std::to_string(n_lat) + "x" + std::to_string(n_lon));
    }
}

GridSpec grid_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open grid file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw validation_error("grid file " + path + ": " + e.what());
    }
    try {
        GridSpec g = GridSpec::from_bounds(j.at("lat_min"), j.at("lat_max"), j.at("lon_min"),
                                           j.at("lon_max"), j.value("d_lat", 0.5),
                                           j.value("d_lon", 0.625), j.at("prediction_point")[0],
                                           j.at("prediction_point")[1]);
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("grid file " + path + ": " + e.what());
    }
}

void grid_to_json_file(const GridSpec& grid, const std::string& path) {
    nlohmann::json j{{"lat_min", grid.lat_min},
                     {"lat_max", grid.lat_max},
                     {"lon_min", grid.lon_min},
                     {"lon_max", grid.lon_max},
                     {"d_lat", grid.d_lat},
                     {"d_lon", grid.d_lon},
                     {"prediction_point", {grid.pred_row, grid.pred_col}}};
    std::ofstream out(path);
    if (!out) throw io_error("cannot write grid file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace windcast
