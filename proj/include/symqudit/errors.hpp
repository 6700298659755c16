#pragma once

#include <stdexcept>
#include <string>

namespace symqudit {

/// Requested (N, D) does not fit the supported index range.
class CapacityError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A parity projection removed every component of the state.
class EmptySectorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed quantity violated a mathematical invariant (e.g. a density
/// matrix with a clearly negative eigenvalue). Indicates a formula bug or
/// corrupted input rather than roundoff.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace symqudit
