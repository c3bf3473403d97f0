#ifndef IVMC_ERRORS_HPP
#define IVMC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ivmc {

/// Base class for every error thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Construction of an interval with lo > hi or a NaN endpoint.
struct invalid_interval : error {
    using error::error;
};

/// Division by an interval containing zero (the natural extension is
/// undefined there).
struct division_by_zero_interval : error {
    using error::error;
};

/// A standard function was applied to an interval outside its real domain,
/// e.g. log of an interval reaching below zero.
struct interval_domain_error : error {
    using error::error;
};

/// An infinite endpoint reached a volume/weight computation.
struct unbounded_enclosure : error {
    using error::error;
};

/// Formula text could not be parsed; `position` is the byte offset of the
/// offending token.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

struct unknown_function : parse_error {
    using parse_error::parse_error;
};

struct variable_out_of_range : parse_error {
    using parse_error::parse_error;
};

/// Point evaluation hit a singularity (division by zero, log of a
/// nonpositive value, ...).
struct eval_domain_error : error {
    using error::error;
};

/// The natural interval extension is not well-defined on the given box.
struct extension_undefined : error {
    using error::error;
};

/// Query point lies outside the partitioned domain.
struct out_of_domain : error {
    using error::error;
};

/// Envelope mass is zero; no proposal distribution exists.
struct degenerate_mass : error {
    using error::error;
};

struct insufficient_chains : error {
    using error::error;
};

struct dimension_too_large : error {
    using error::error;
};

struct invalid_spec : error {
    using error::error;
};

/// A drawn point evaluated above its envelope. This indicates a broken
/// enclosure and is always a bug, never a recoverable condition.
struct envelope_violation : error {
    using error::error;
};

} // namespace ivmc

#endif
