#pragma once

#include <stdexcept>
#include <string>

namespace hypsum {

// Base for every domain error raised by the engine.  Callers that only care
// about "this input was rejected" can catch MathError; tests catch the
// concrete types.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : MathError {
    DivisionByZero() : MathError("division by zero") {}
};

// Gamma evaluated at a nonpositive integer, or a closed form whose
// denominator Pochhammer vanishes.
struct PoleError : MathError {
    explicit PoleError(const std::string& what) : MathError(what) {}
};

struct DomainError : MathError {
    explicit DomainError(const std::string& what) : MathError(what) {}
};

struct NotTerminating : MathError {
    NotTerminating() : MathError("series does not terminate") {}
};

struct Divergent : MathError {
    explicit Divergent(const std::string& what = "series diverges") : MathError(what) {}
};

struct NotHypergeometric : MathError {
    explicit NotHypergeometric(const std::string& what) : MathError(what) {}
};

// Term ratio factored over Q left a nontrivial residual polynomial.
struct IrrationalRoots : MathError {
    explicit IrrationalRoots(const std::string& what) : MathError(what) {}
};

// Closed form exists but is not a rational number (e.g. (1-z)^{-a} with
// fractional a).
struct IrrationalResult : MathError {
    explicit IrrationalResult(const std::string& what) : MathError(what) {}
};

struct NotApplicable : MathError {
    explicit NotApplicable(const std::string& what) : MathError(what) {}
};

struct NotAlternating : MathError {
    explicit NotAlternating(const std::string& what) : MathError(what) {}
};

struct MaxTermsExceeded : MathError {
    explicit MaxTermsExceeded(const std::string& what) : MathError(what) {}
};

struct RootNotFound : MathError {
    explicit RootNotFound(const std::string& what) : MathError(what) {}
};

struct UnknownId : MathError {
    explicit UnknownId(const std::string& what) : MathError(what) {}
};

// Text input errors carry the offset of the offending character.
struct SyntaxError : MathError {
    std::size_t position;
    SyntaxError(const std::string& what, std::size_t pos)
        : MathError(what + " at position " + std::to_string(pos)), position(pos) {}
};

struct UnknownSymbol : SyntaxError {
    UnknownSymbol(const std::string& sym, std::size_t pos)
        : SyntaxError("unknown symbol '" + sym + "'", pos) {}
};

}  // namespace hypsum
