#pragma once

/**
 * @file Error.h
 * @brief Exception hierarchy used across the SDPF library
 */

#include <stdexcept>
#include <string>

namespace Sdpf {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or precondition violation (bad sizes, empty sets, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The file does not exist or cannot be opened for reading.
class FileNotFound : public Error {
public:
    using Error::Error;
};

/// The file is recognized but its content is corrupt or truncated.
class MalformedFile : public Error {
public:
    using Error::Error;
};

/// The file is well-formed but uses a format or variant we do not handle.
class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

/// Writing failed.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace Sdpf
