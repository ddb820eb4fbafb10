#pragma once

#include <stdexcept>
#include <string>

namespace trendsolve {

// Syntax or well-formedness failure in an input document.
// Positions are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                             ": " + message),
          line_(line), column_(column), message_(message) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

// Input is well-formed but violates a semantic requirement
// (non-positive variable in a relation, unknown scenario id, ...).
class SemanticError : public std::runtime_error {
public:
    explicit SemanticError(const std::string& message)
        : std::runtime_error(message) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& message)
        : std::runtime_error(message) {}
};

}  // namespace trendsolve
