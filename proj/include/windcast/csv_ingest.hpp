#ifndef WINDCAST_CSV_INGEST_HPP
#define WINDCAST_CSV_INGEST_HPP

#include <string>

#include "windcast/wind_series.hpp"

namespace windcast {

/// Assembles a series from a directory of per-hour CSV files named
/// YYYYMMDDTHH.csv, each with a header row `lat,lon,u,v` and one row per grid
/// point. Hours must be consecutive; grid points are matched within 1e-6 deg.
WindFieldSeries ingest_csv(const std::string& dir, const GridSpec& grid,
                           double altitude_m = 50.0);

}  // namespace windcast

#endif
