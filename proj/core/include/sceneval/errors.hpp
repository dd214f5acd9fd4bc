#pragma once

#include <stdexcept>
#include <string>

namespace sceneval {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: missing or malformed files, out-of-range parameters,
// violated operation preconditions. Maps to CLI exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

// Two rasters (or a raster and a grid) do not share a compatible
// georeferencing or pixel layout. Maps to CLI exit code 3.
class GeorefMismatchError : public Error {
public:
    using Error::Error;
};

} // namespace sceneval
