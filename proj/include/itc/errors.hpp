#pragma once

#include <stdexcept>
#include <string>

namespace itc {

// Violated precondition or contract in the geometric/graph model.
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad experiment configuration (CLI flags, config file, trace selection).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed external input (trace files, CSV); message names the line.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Statistics over records could not be computed (too few cells, unpaired rows).
struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Brute-force reference asked for an instance outside its feasible range.
struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace itc
