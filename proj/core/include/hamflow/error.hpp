#pragma once

#include <stdexcept>
#include <string>

namespace hamflow {

// Unreadable files, malformed formats, inconsistent inputs. Maps to CLI
// exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate geometry or a numeric operation outside its domain. Maps to
// CLI exit code 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hamflow
