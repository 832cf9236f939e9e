#pragma once

#include <stdexcept>
#include <string>

namespace extremes {

// Caller passed arguments that violate a precondition (bad order, alpha
// outside (0,1), too-short series for the requested lag, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input data is malformed: empty series, duplicate indices, bad CSV rows.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation could not be carried out on otherwise valid input, e.g. a
// rank-deficient design matrix.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace extremes
