#pragma once

// Exact integer and rational arithmetic used throughout the library.
// Thin aliases over boost::multiprecision plus string helpers for the
// "a/b" wire format used by the JSON schemas.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace starlim {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Base class for every error the library raises on bad input documents.
// The CLI maps SchemaError to exit code 2.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an iterative construction hits its configured index cap.
struct DepthExceeded : std::runtime_error {
    explicit DepthExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline std::string rat_str(const Rat& q) { return q.str(); }

// Accepts "a" or "a/b" with optional sign; b must be nonzero.
inline Rat rat_parse(const std::string& s) {
    try {
        Rat q(s);
        return q;
    } catch (const std::exception&) {
        throw SchemaError("not a rational: '" + s + "'");
    }
}

inline std::string int_str(const Int& n) { return n.str(); }

}  // namespace starlim
