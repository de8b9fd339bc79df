#pragma once

#include <stdexcept>

namespace tubal {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions disagree, or an operation rejects the given shape.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Conjugate symmetry of a Fourier-domain tensor is broken beyond
/// tolerance; the inverse transform would not be real.
class SymmetryError : public Error {
public:
    using Error::Error;
};

/// Requested rank is outside [1, min(n1, n2)].
class RankError : public Error {
public:
    using Error::Error;
};

/// Non-finite values where finite ones are required.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A reference (oracle) routine was asked for a problem larger than its
/// deliberate size cap.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// A scalar argument is outside its documented range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Invalid solver configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Observation mask contains no observed entries.
class EmptyMaskError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Filesystem-level failure (open, read, write).
class IoError : public Error {
public:
    using Error::Error;
};

/// File contents do not match the expected format.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A frame directory holds no readable frames.
class EmptyDirError : public IoError {
public:
    using IoError::IoError;
};

}  // namespace tubal
