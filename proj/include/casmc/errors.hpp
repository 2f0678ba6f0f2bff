#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace casmc {

// Base class of everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A set or point was used outside the carrier it belongs to.
class DomainError : public Error {
public:
    using Error::Error;
};

// A model file or in-memory model violates a structural invariant.
// `line` is 1-based when the error originates from a text file.
class ModelError : public Error {
public:
    explicit ModelError(const std::string& what, std::optional<std::size_t> line = std::nullopt)
        : Error(line ? "line " + std::to_string(*line) + ": " + what : what), line_(line) {}

    std::optional<std::size_t> line() const { return line_; }

private:
    std::optional<std::size_t> line_;
};

// Syntax error in a formula or expression, with caret-friendly position info.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column, std::string source_line = "")
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column), source_line_(std::move(source_line)) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& source_line() const { return source_line_; }

    // Two-line diagnostic: the offending line and a caret under the column.
    std::string caret_diagnostic() const {
        if (source_line_.empty()) return {};
        std::string out = source_line_;
        out += '\n';
        out += std::string(column_ > 0 ? column_ - 1 : 0, ' ');
        out += '^';
        return out;
    }

private:
    std::size_t line_;
    std::size_t column_;
    std::string source_line_;
};

// Formula is well-formed syntactically but invalid for the model at hand
// (undeclared atom, temporal operator fed to the purely spatial engine, ...).
class FormulaError : public Error {
public:
    using Error::Error;
};

// A kernel entry or row failed validation at some encountered measure.
class KernelError : public ModelError {
public:
    KernelError(const std::string& what, std::string from_state, std::string to_state,
                double value, std::optional<std::size_t> step = std::nullopt)
        : ModelError(what + " [" + from_state + " -> " + to_state + ", value " +
                     std::to_string(value) + (step ? ", step " + std::to_string(*step) : "") + "]"),
          from_state_(std::move(from_state)), to_state_(std::move(to_state)),
          value_(value), step_(step) {}

    const std::string& from_state() const { return from_state_; }
    const std::string& to_state() const { return to_state_; }
    double value() const { return value_; }
    std::optional<std::size_t> step() const { return step_; }

private:
    std::string from_state_;
    std::string to_state_;
    double value_;
    std::optional<std::size_t> step_;
};

// An exhaustive oracle was asked for more work than its configured cap.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// Broken internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace casmc
