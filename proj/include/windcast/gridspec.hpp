#ifndef WINDCAST_GRIDSPEC_HPP
#define WINDCAST_GRIDSPEC_HPP

#include <string>

namespace windcast {

/// Rectangular latitude/longitude grid with constant increments and a single
/// prediction point (the wind-farm site whose next-hour wind is forecast).
struct GridSpec {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;
    double d_lat = 0.5;
    double d_lon = 0.625;
    int n_lat = 0;
    int n_lon = 0;
    int pred_row = 0;
    int pred_col = 0;

    /// Derives n_lat/n_lon from the bounds and increments.
    static GridSpec from_bounds(double lat_min, double lat_max, double lon_min, double lon_max,
                                double d_lat, double d_lon, int pred_row, int pred_col);

    /// Convenience square grid for synthetic sites: n x n cells centered on
    /// (n/2, n/2), default increments.
    static GridSpec synthetic(int n);

    double lat_at(int row) const { return lat_min + d_lat * row; }
    double lon_at(int col) const { return lon_min + d_lon * col; }
    int points() const { return n_lat * n_lon; }

    /// Checks the count/bounds relation and that the prediction point lies
    /// strictly inside the grid. Throws validation_error.
    void validate() const;

    bool operator==(const GridSpec&) const = default;
};

GridSpec grid_from_json_file(const std::string& path);
void grid_to_json_file(const GridSpec& grid, const std::string& path);

}  // namespace windcast

#endif
