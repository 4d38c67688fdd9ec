#ifndef WINDCAST_WINDPACK_HPP
#define WINDCAST_WINDPACK_HPP

#include <string>

#include "windcast/wind_series.hpp"

namespace windcast {

/// windpack: portable binary container for gridded (u, v) series.
///
///   bytes 0..7   magic "WNDPACK1"
///   bytes 8..11  header length N, little-endian uint32
///   bytes 12..   UTF-8 JSON header of N bytes with keys: lat_min, lat_max,
///                lon_min, lon_max, d_lat, d_lon, n_lat, n_lon, n_time,
///                start_time (ISO-8601 UTC), step_seconds, altitude_m,
///                prediction_point ([row, col])
///   then         payload: float32 little-endian, layout
///                [time][variable: u then v][lat ascending][lon ascending]
///
/// Values are quantized to float32 on write; reading a written file and
/// writing it again is byte-identical.
WindFieldSeries read_windpack(const std::string& path);
void write_windpack(const WindFieldSeries& series, const std::string& path);

/// Header as pretty JSON text, for `inspect`.
std::string windpack_header_text(const std::string& path);

}  // namespace windcast

#endif
