#pragma once

#include <stdexcept>
#include <string>

namespace fss {

// Bad input data or configuration: malformed CSV, failed dataset invariants,
// unknown method names. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure during fitting or search (singular system, divergence,
// stepwise cycling). The CLI maps this to exit code 3.
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fss
