#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lasuscc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: job files, layouts, geometries, CLI arguments.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Array or matrix dimensions do not agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

class UnsupportedElementError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DegenerateGeometryError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IllConditionedBasisError : public Error {
public:
    using Error::Error;
};

/// Malformed FCIDUMP or job file. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An iterative numerical method ran out of iterations.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history = {})
        : Error(what), history_(std::move(history)) {}
    /// Energy changes, residual norms or energies, depending on the raising solver.
    const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

/// An observable that should be real had a significant imaginary part.
class HermiticityError : public Error {
public:
    using Error::Error;
};

} // namespace lasuscc
