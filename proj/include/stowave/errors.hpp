#pragma once

#include <stdexcept>

namespace stowave {

/// Bad or inconsistent configuration input (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An experiment ran to completion but its verdict failed (CLI exit code 4).
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stowave
