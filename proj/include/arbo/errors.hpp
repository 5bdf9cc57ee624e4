#pragma once

#include <stdexcept>
#include <string>

namespace arbo {

enum class ErrorKind {
    parse,
    invalid_params,
    zero_population,
    threshold,
    precondition,
    numeric,
    residual,
    kernel_dimension,
    nonconvergence,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// CLI exit code for an error class: 2 parse, 3 numeric, 4 non-convergence.
inline int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::parse:
    case ErrorKind::invalid_params:
        return 2;
    case ErrorKind::nonconvergence:
        return 4;
    default:
        return 3;
    }
}

}  // namespace arbo
