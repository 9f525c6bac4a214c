#pragma once

#include <stdexcept>

namespace rpng {

// A run left its validity envelope (boundary contact under --strict,
// every replica excluded, ...). CLI exit code 3.
struct ValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant failed (negative height, bookkeeping mismatch,
// out-of-order marks). Always a bug or a corrupt input. CLI exit code 4.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace rpng
