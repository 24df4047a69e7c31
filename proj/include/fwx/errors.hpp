#pragma once

#include <stdexcept>
#include <string>

namespace fwx {

// Base class for all library failures. `code()` is a stable kebab-case
// identifier suitable for machine-readable error records.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Gamma-family argument within pole tolerance of a non-positive integer.
struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error("pole", what) {}
};

// Parameter balance differs from the supported boundary value.
struct DeltaError : Error {
    explicit DeltaError(const std::string& what) : Error("delta-mismatch", what) {}
};

// Input outside the region where the requested representation is valid.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

// Parameter list lengths inconsistent or empty where forbidden.
struct ShapeError : Error {
    explicit ShapeError(const std::string& what) : Error("shape-mismatch", what) {}
};

// Requested sigma non-positive or incompatible with the parameter set.
struct SigmaError : Error {
    explicit SigmaError(const std::string& what) : Error("sigma-invalid", what) {}
};

// A scale entry at or below 1/6 where the expansion machinery needs more.
struct ScaleError : Error {
    explicit ScaleError(const std::string& what) : Error("scale-too-small", what) {}
};

// mu lies (numerically) in the integers where the formula has a pole,
// or an integer-mu expansion was requested for non-integer mu.
struct IntegerMuError : Error {
    explicit IntegerMuError(const std::string& what) : Error("integer-mu", what) {}
};

// Two residue-series exponents coincide: the simple-pole form is invalid.
struct PoleCollisionError : Error {
    explicit PoleCollisionError(const std::string& what) : Error("pole-collision", what) {}
};

// Requested accuracy not certifiable within the term budget.
struct ToleranceError : Error {
    explicit ToleranceError(const std::string& what) : Error("tolerance-exceeded", what) {}
};

// Evaluation point lies on the branch cut.
struct CutError : Error {
    explicit CutError(const std::string& what) : Error("on-branch-cut", what) {}
};

// Sequence index outside its admissible range.
struct IndexError : Error {
    explicit IndexError(const std::string& what) : Error("index", what) {}
};

// Command-line / literal parsing failure.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse", what) {}
};

} // namespace fwx
