#pragma once

#include <stdexcept>
#include <string>

namespace wvg {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad player index, k out of
/// range, coalition containing the queried player, ...).
struct InvalidArgumentError : Error {
    using Error::Error;
};

/// Structured rejection reasons for DIMACS input.
enum class ParseErrorKind {
    MalformedHeader,
    LiteralOutOfRange,
    TautologicalClause,
    EmptyClause,
    UnusedVariable,
    TrailingGarbage,
    BadNumber,
};

struct ParseError : Error {
    ParseError(ParseErrorKind k, const std::string& what) : Error(what), kind(k) {}
    ParseErrorKind kind;
};

/// The requested computation exceeds a configured engine cap (too many
/// players for exhaustive enumeration, instance too large to verify, ...).
struct CapabilityError : Error {
    using Error::Error;
};

/// An instance construction produced values that violate its own documented
/// side conditions; the builder refuses to emit a silently broken instance.
struct InfeasibleError : Error {
    using Error::Error;
};

} // namespace wvg
