#pragma once

#include <stdexcept>
#include <string>

namespace iipg {

// Bad arguments or malformed input data. CLI maps this to exit code 2.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal guarantee (a bug), never a user error.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace iipg
