#pragma once

#include <stdexcept>
#include <string>

namespace linkcensus {

/// Images that do not form a bijection, or that leave the target face.
class InvalidPermutation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed `.tri`, pairing, job or result text.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called on input it does not accept (incomplete,
/// disconnected, out of range).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Internal protocol misuse: gluing an internal edge, undoing out of order.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A job prefix that cannot be replayed against its own pruning tests.
class CorruptJob : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace linkcensus
