#pragma once

#include <stdexcept>
#include <string>

namespace deid {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace deid
