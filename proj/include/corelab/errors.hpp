#pragma once

#include <stdexcept>
#include <string>

namespace corelab {

// Retry-capped random generation gave up (e.g. conditioned rejection sampling
// or simplicity rejection exceeded its cap). CLI maps this to exit code 3.
struct generation_error : std::runtime_error {
    explicit generation_error(const std::string& what) : std::runtime_error(what) {}
};

// A numeric routine left its validity domain (no root, non-finite value).
// CLI maps this to exit code 4.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace corelab
