#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace weldsim {

/// Exact singularity detected during a direct factorization.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(int pivot_index, const std::string& what)
        : std::runtime_error(what), pivot_index_(pivot_index) {}
    int pivot_index() const noexcept { return pivot_index_; }

private:
    int pivot_index_;
};

/// Arnoldi breakdown with a residual that has not reached the tolerance.
class GmresBreakdownError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// NaN/Inf detected inside an iterative solve.
class NumericalFailureError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element with a non-positive Jacobian determinant.
class DegenerateElementError : public std::runtime_error {
public:
    DegenerateElementError(int element, const std::string& what)
        : std::runtime_error(what), element_(element) {}
    int element() const noexcept { return element_; }

private:
    int element_ = -1;
};

/// Invalid run configuration; collects every issue found in one pass.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid configuration:";
        for (const auto& i : v) { s += "\n  - " + i; }
        return s;
    }
    std::vector<std::string> issues_;
};

/// Malformed geometry input (STL surface, degenerate triangles, ...).
class InvalidShapeError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace weldsim
