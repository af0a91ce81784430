#pragma once

#include <stdexcept>

namespace fedcontrib {

// Invalid user-supplied configuration (architecture, hyperparameters, config file).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Matrix/vector dimension mismatch.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A caller broke a documented precondition (empty dataset, missing tracking, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Malformed input data file; the message names the offending field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A partition request exceeds what the data pool can provide.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fedcontrib
