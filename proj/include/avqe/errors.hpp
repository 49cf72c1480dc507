#pragma once

#include <stdexcept>
#include <string>

namespace avqe {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A determinant produced by an operator fell outside the working sector.
struct SectorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace avqe
