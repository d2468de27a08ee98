#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbfdd {

/// Raised when an LU pivot falls below the singularity threshold.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an MLS stencil cannot determine Laplacian weights.
class DegenerateStencilError : public std::runtime_error {
public:
    DegenerateStencilError(std::size_t node, const std::string& what)
        : std::runtime_error("degenerate stencil at node " + std::to_string(node) + ": " + what),
          node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

} // namespace rbfdd
