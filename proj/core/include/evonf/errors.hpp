#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evonf {

/// Base class for all library errors. Messages are single-line and start
/// with a stable category token ("parse-error: ...") so callers can route
/// them without string surgery.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
  public:
    explicit InvalidParameter(const std::string& detail)
        : Error("invalid-parameter: " + detail) {}
};

class DimensionMismatch : public Error {
  public:
    explicit DimensionMismatch(const std::string& detail)
        : Error("dimension-mismatch: " + detail) {}
};

class NoActiveRules : public Error {
  public:
    NoActiveRules() : Error("no-active-rules: rule base has no selected rule") {}
};

class SizeOverflow : public Error {
  public:
    explicit SizeOverflow(const std::string& detail) : Error("size-overflow: " + detail) {}
};

class OutOfRange : public Error {
  public:
    explicit OutOfRange(const std::string& detail) : Error("out-of-range: " + detail) {}
};

class LayoutMismatch : public Error {
  public:
    explicit LayoutMismatch(const std::string& detail) : Error("layout-mismatch: " + detail) {}
};

class ConfigInvalid : public Error {
  public:
    explicit ConfigInvalid(const std::string& detail) : Error("config-invalid: " + detail) {}
};

class DatasetEmpty : public Error {
  public:
    explicit DatasetEmpty(const std::string& detail = "dataset has no rows")
        : Error("dataset-empty: " + detail) {}
};

class DatasetTooSmall : public Error {
  public:
    explicit DatasetTooSmall(const std::string& detail) : Error("dataset-too-small: " + detail) {}
};

class IoError : public Error {
  public:
    explicit IoError(const std::string& detail) : Error("io-error: " + detail) {}
};

/// Carries the 1-based row and column of the offending CSV cell.
class ParseError : public Error {
  public:
    ParseError(std::size_t row, std::size_t col, const std::string& detail)
        : Error("parse-error: row " + std::to_string(row) + ", column " + std::to_string(col) +
                ": " + detail),
          row_(row), col_(col) {}
    std::size_t row() const { return row_; }
    std::size_t col() const { return col_; }

  private:
    std::size_t row_;
    std::size_t col_;
};

/// A value fell outside its schema range. 1-based row and column.
class RangeViolation : public Error {
  public:
    RangeViolation(std::size_t row, std::size_t col, const std::string& detail)
        : Error("range-violation: row " + std::to_string(row) + ", column " +
                std::to_string(col) + ": " + detail),
          row_(row), col_(col) {}
    std::size_t row() const { return row_; }
    std::size_t col() const { return col_; }

  private:
    std::size_t row_;
    std::size_t col_;
};

class ZeroRange : public Error {
  public:
    explicit ZeroRange(const std::string& detail) : Error("zero-range: " + detail) {}
};

class ZeroVariance : public Error {
  public:
    explicit ZeroVariance(const std::string& detail) : Error("zero-variance: " + detail) {}
};

class Divergence : public Error {
  public:
    explicit Divergence(const std::string& detail) : Error("divergence: " + detail) {}
};

/// A persisted model or config document is malformed or has an unsupported
/// version.
class FormatError : public Error {
  public:
    explicit FormatError(const std::string& detail) : Error("format-error: " + detail) {}
};

class MissingArtifact : public Error {
  public:
    explicit MissingArtifact(const std::string& detail) : Error("missing-artifact: " + detail) {}
};

} // namespace evonf
