#pragma once

#include <stdexcept>
#include <string>

namespace anisoq {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller passed a value outside an operation's domain (even kernel size,
/// alpha <= 0, dimension mismatch, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// File system failure: missing input, unwritable output.
class IoError : public Error {
public:
    using Error::Error;
};

/// Input file exists but its contents cannot be decoded.
class FormatError : public Error {
public:
    enum class Kind { MalformedHeader, UnsupportedSubtype, UnsupportedMaxval, TruncatedRaster };

    FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// An analysis precondition failed on otherwise valid data, e.g. the image is
/// smaller than the directional kernel.
class AnalysisError : public Error {
public:
    using Error::Error;
};

/// A bit-plane stack violates the nesting property.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// PSNR calibration could not reach its target.
class CalibrationError : public Error {
public:
    CalibrationError(const std::string& what, double best_param, double best_psnr_db)
        : Error(what), best_param_(best_param), best_psnr_db_(best_psnr_db) {}
    double best_param() const noexcept { return best_param_; }
    double best_psnr_db() const noexcept { return best_psnr_db_; }

private:
    double best_param_;
    double best_psnr_db_;
};

}  // namespace anisoq
