#pragma once

#include <stdexcept>
#include <string>

namespace emortal {

/// Syntax error with input position. line/column are 1-based; column 0 means
/// "whole line".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column = 0)
        : std::runtime_error(format(message, line, column)),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column) {
        std::string s = "line " + std::to_string(line);
        if (column > 0) s += ", column " + std::to_string(column);
        return s + ": " + message;
    }
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

/// Graph-level defects discovered after parsing (validation report rendered
/// into one message).
class SemanticError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a chord's stress-difference residual exceeds tolerance: the
/// supplied currents are not derivable from node potentials, so the
/// spanning-tree reduction premise does not hold.
class ChordInconsistencyError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace emortal
