#pragma once

#include <stdexcept>
#include <string>

namespace cubeplan {

/// Thrown when an enumeration or exploration would exceed its configured cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a requested metric is recognized but not implemented.
struct UnsupportedMetric : std::runtime_error {
    explicit UnsupportedMetric(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cubeplan
