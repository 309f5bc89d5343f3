#pragma once

#include <stdexcept>
#include <string>

namespace fermat3p {

/// Bad caller-supplied data (unparsable model, composite modulus, residue
/// out of range, ...). The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical verification did not hold (lemma clause violated, pairing
/// oracle mismatch, automorphism count wrong, ...). The CLI maps this to
/// exit code 1.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured resource cap was exceeded (group closure too large,
/// enumeration modulus too big, field too large).
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fermat3p
