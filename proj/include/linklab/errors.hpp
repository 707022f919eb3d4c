// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace linklab {

/// Input rejected by an encoder precondition (out-of-range field, illegal
/// character, bad identity width). Raw/override paths bypass these on purpose.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Value outside the encodable range of a wire field.
class RangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Bit/byte count does not match what the operation requires.
class LengthError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed textual or binary input (hex lines, sentences, IQ files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CPR global decode cannot resolve a position (even/odd latitude-zone
/// mismatch or out-of-range intermediate). Never silently wrong, always thrown.
class CprAmbiguityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem-level failure distinct from malformed content.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace linklab
