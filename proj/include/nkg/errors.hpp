#pragma once

#include <stdexcept>
#include <string>

namespace nkg {

/// Thrown by the banded factorization when a pivot falls below the
/// singularity threshold. Carries the offending pivot row.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(int pivot_row, const std::string& msg)
        : std::runtime_error(msg), pivot_row_(pivot_row) {}

    int pivot_row() const noexcept { return pivot_row_; }

private:
    int pivot_row_;
};

/// Thrown by the lambda scan when every sampled value fails to produce
/// a usable solution.
class ScanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nkg
