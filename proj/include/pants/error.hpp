#pragma once

#include <stdexcept>
#include <string>

namespace pants {

// Failure kinds surfaced by the library. The CLI maps these onto exit codes:
// parse errors -> 1, match/search failures -> 3, everything else -> 2.
enum class Err {
    Parse,
    NotDecomposable,
    UnsupportedSurface,
    IllegalMove,
    NoMatch,
    NotAPath,
    NotAdjacent,
    NotABijection,
    InvalidIncidence,
    InvalidTags,
    NotEligible,
    InvalidDecomposition,
    InvalidComplex,
    Stuck,
    UnannotatedCrossing,
    ReplayMismatch,
    VerificationFailed,
    InvalidSite,
    OutOfRange,
};

const char* to_string(Err e);

class Error : public std::runtime_error {
public:
    Error(Err kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

    Err kind() const { return kind_; }

    int exit_code() const {
        switch (kind_) {
        case Err::Parse: return 1;
        case Err::NoMatch:
        case Err::Stuck: return 3;
        default: return 2;
        }
    }

private:
    Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace pants
