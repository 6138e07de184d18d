#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmat {

// Root of the library's exception hierarchy.  Anything thrown on a
// contract violation or unrecoverable arithmetic condition derives from
// this; recoverable "no result" outcomes are returned as values instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

// Substituting q = 0 is never allowed: the relations need q invertible.
struct ZeroSpecialization : Error {
    ZeroSpecialization() : Error("cannot specialize q at 0") {}
};

// Substituting q = v where the denominator of some coefficient vanishes.
struct PoleAtSpecialization : Error {
    explicit PoleAtSpecialization(const std::string& what) : Error(what) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct InvalidIndexSet : Error {
    explicit InvalidIndexSet(const std::string& what) : Error(what) {}
};

// Elements of algebras with different shapes were combined.
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

struct SizeMismatch : Error {
    explicit SizeMismatch(const std::string& what) : Error(what) {}
};

// Linear spaces over different coordinate systems were compared.
struct AmbientMismatch : Error {
    explicit AmbientMismatch(const std::string& what) : Error(what) {}
};

// Expression evaluated in a context where it has no meaning, e.g. a
// negative power of a non-scalar element.
struct EvalError : Error {
    explicit EvalError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    std::size_t position;  // 1-based character position of the offending token
    std::string expected;

    ParseError(std::size_t pos, std::string expected_what)
        : Error("syntax error at position " + std::to_string(pos) +
                ": expected " + expected_what),
          position(pos),
          expected(std::move(expected_what)) {}
};

}  // namespace qmat
