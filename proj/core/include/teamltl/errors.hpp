#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace teamltl {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input. Line and column are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// The formula lies outside the fragment an operation accepts.
class UnsupportedFragment : public Error {
public:
    using Error::Error;
};

// Synchronous team model checking with splitjunctions has no known algorithm.
class UnsupportedOpenProblem : public UnsupportedFragment {
public:
    using UnsupportedFragment::UnsupportedFragment;
};

class NameCollision : public Error {
public:
    using Error::Error;
};

class UnknownAtom : public Error {
public:
    using Error::Error;
};

class DuplicateName : public Error {
public:
    using Error::Error;
};

// A configured resource budget would be exceeded.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

class VectorSpaceExceeded : public BoundExceeded {
public:
    using BoundExceeded::BoundExceeded;
};

class MalformedStructure : public Error {
public:
    using Error::Error;
};

class NotForallFragment : public Error {
public:
    using Error::Error;
};

class NonPropositional : public Error {
public:
    using Error::Error;
};

// Semantically invalid input that parsed fine (e.g. uncovered QBF variables).
class InvalidInput : public Error {
public:
    using Error::Error;
};

}  // namespace teamltl
