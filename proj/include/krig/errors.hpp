#pragma once

#include <stdexcept>

namespace krig {

struct DegenerateSeries : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CorrelationNotPD : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedCsv : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoRootInRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace krig
