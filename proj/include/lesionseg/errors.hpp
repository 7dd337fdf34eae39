#pragma once

#include <stdexcept>
#include <string>

namespace lesionseg {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable file.
class IoError : public Error {
public:
    using Error::Error;
};

/// File exists but cannot be decoded.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Invalid argument value (dimensions, ranges, weights).
class ParamError : public Error {
public:
    using Error::Error;
};

/// Input carries the wrong semantics (e.g. a non-RGB raster where RGB is required).
class SemanticError : public Error {
public:
    using Error::Error;
};

/// Inpainting cannot proceed (no donor pixels available).
class InpaintError : public Error {
public:
    using Error::Error;
};

/// Background model cannot be built (too few patches).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Degenerate input with no usable signal (e.g. constant map given to Otsu).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Dataset ingestion produced no usable pairs.
class IngestError : public Error {
public:
    using Error::Error;
};

/// A pipeline stage failed; carries the stage name for diagnostics.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace lesionseg
