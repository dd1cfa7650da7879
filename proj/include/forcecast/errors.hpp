#pragma once

#include <stdexcept>

namespace forcecast {

// Asked for a result before enough samples were ingested (e.g. window not full).
struct not_ready_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Signal has no usable variance (constant window) or the fit produced
// non-finite output; callers fall back to previously valid coefficients.
struct degenerate_signal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace forcecast
