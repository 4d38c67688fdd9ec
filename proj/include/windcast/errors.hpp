#ifndef WINDCAST_ERRORS_HPP
#define WINDCAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace windcast {

/// File or stream level failure (missing file, short read, write error).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that is syntactically readable but violates a documented contract
/// (bad shapes, out-of-range values, inconsistent headers, degenerate data).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace windcast

#endif
