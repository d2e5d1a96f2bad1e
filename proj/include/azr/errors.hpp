#ifndef AZR_ERRORS_HPP
#define AZR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace azr {

// Base class for all data-dependent failures raised by the library.
// Programming errors (bad call arguments) use std::invalid_argument instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
    using Error::Error;
};
struct NotPsd : Error {
    using Error::Error;
};
struct SupportViolation : Error {
    using Error::Error;
};
struct SupportMismatch : Error {
    using Error::Error;
};
struct SigmaNotPositiveDefinite : Error {
    using Error::Error;
};
struct ZeroZ : Error {
    using Error::Error;
};
struct DegenerateExponent : Error {
    using Error::Error;
};
struct SpectrumOnCut : Error {
    using Error::Error;
};
struct QuadratureNotConverged : Error {
    using Error::Error;
};
struct DegenerateTopEigenvalue : Error {
    using Error::Error;
};
struct InvalidSegmentSum : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct Unsupported : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

} // namespace azr

#endif
