#pragma once

#include <stdexcept>
#include <string>

namespace spikecount {

/// Malformed or unusable input data (exit code 2 at the CLI).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its accuracy target (exit code 3).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spikecount
