#pragma once

#include <stdexcept>
#include <string>

namespace smale {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroRowOrColumn : public Error {
 public:
  explicit ZeroRowOrColumn(int symbol)
      : Error("symbol " + std::to_string(symbol) + " has no successor or no predecessor"),
        symbol_(symbol) {}
  int symbol() const { return symbol_; }

 private:
  int symbol_;
};

/// Raised for malformed matrices: non-square, empty, or entries outside {0,1}.
class MalformedMatrix : public Error {
 public:
  using Error::Error;
};

class NotPrimitive : public Error {
 public:
  NotPrimitive()
      : Error("transition matrix is not primitive: the shift is not mixing "
              "(no power of the matrix is entrywise positive)") {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(long iterations)
      : Error("Perron iteration did not reach the requested tolerance after " +
              std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}
  long iterations() const { return iterations_; }

 private:
  long iterations_;
};

class InadmissibleWord : public Error {
 public:
  using Error::Error;
};

class InadmissibleRay : public Error {
 public:
  using Error::Error;
};

class IncompatibleAtZero : public Error {
 public:
  IncompatibleAtZero() : Error("bracket undefined: points disagree at index 0") {}
};

class InvalidBisection : public Error {
 public:
  using Error::Error;
};

class WindowOverflow : public Error {
 public:
  WindowOverflow(int width, int cap)
      : Error("operator support window " + std::to_string(width) + " exceeds cap " +
              std::to_string(cap)),
        width_(width),
        cap_(cap) {}
  int width() const { return width_; }
  int cap() const { return cap_; }

 private:
  int width_;
  int cap_;
};

class WindowTooSmall : public Error {
 public:
  WindowTooSmall(int required, int given)
      : Error("enumeration window " + std::to_string(given) + " too small, need " +
              std::to_string(required)),
        required_(required) {}
  int required() const { return required_; }

 private:
  int required_;
};

class OrbitsNotDisjoint : public Error {
 public:
  OrbitsNotDisjoint() : Error("P and Q share a periodic orbit") {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace smale
