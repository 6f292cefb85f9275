#pragma once

#include <stdexcept>
#include <string>

namespace skeleta {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejected input: parse failure, invariant violation, unmet precondition.
struct invalid_input : error {
    using error::error;
};

// A contract the library itself guarantees was broken; always a bug.
struct internal_error : error {
    using error::error;
};

// Linear system a·x = b has no solution.
struct inconsistent_system : error {
    using error::error;
};

// Solution exists but is not unique (a lacks full column rank).
struct rank_deficient : error {
    using error::error;
};

}  // namespace skeleta
