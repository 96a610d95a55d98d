#pragma once

#include <stdexcept>
#include <string>

namespace waveset {

// Base class for all library errors. Specific conditions get their own type
// so callers can catch precisely; the message carries the witness data.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- parsing / construction --------------------------------------------

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct MalformedInterval : Error {
  explicit MalformedInterval(const std::string& msg) : Error(msg) {}
};

struct UnknownFixture : Error {
  explicit UnknownFixture(const std::string& name)
      : Error("unknown fixture: " + name) {}
};

// ---- domain preconditions ----------------------------------------------

// A dilation-side operation was applied to a set whose closure meets 0.
struct ContainsOrigin : Error {
  explicit ContainsOrigin(const std::string& msg) : Error(msg) {}
};

struct ZeroPoint : Error {
  explicit ZeroPoint(const std::string& msg) : Error(msg) {}
};

struct EvenShift : Error {
  explicit EvenShift(const std::string& msg) : Error(msg) {}
};

struct RationalXi : Error {
  explicit RationalXi(const std::string& msg) : Error(msg) {}
};

// ---- extraction ----------------------------------------------------------

struct Undercovered : Error {
  explicit Undercovered(const std::string& msg) : Error(msg) {}
};

struct EmptyInput : Error {
  explicit EmptyInput(const std::string& msg) : Error(msg) {}
};

struct ZeroElement : Error {
  explicit ZeroElement(const std::string& msg) : Error(msg) {}
};

struct EpsilonTooLarge : Error {
  explicit EpsilonTooLarge(const std::string& msg) : Error(msg) {}
};

// ---- matrices ------------------------------------------------------------

struct NotSquare : Error {
  explicit NotSquare(const std::string& msg) : Error(msg) {}
};

struct NegativeEntry : Error {
  explicit NegativeEntry(const std::string& msg) : Error(msg) {}
};

struct TooLarge : Error {
  explicit TooLarge(const std::string& msg) : Error(msg) {}
};

// Support cells do not organize into a square row/column complex.
struct RaggedComplex : Error {
  explicit RaggedComplex(const std::string& msg) : Error(msg) {}
};

// Two cells overlap under a group action without being equal; the caller
// may refine breakpoints and retry.
struct PartialCongruence : Error {
  explicit PartialCongruence(const std::string& msg) : Error(msg) {}
};

struct NotDoublyStochastic : Error {
  explicit NotDoublyStochastic(const std::string& msg) : Error(msg) {}
};

// ---- measure matching ------------------------------------------------------

struct TargetOutOfRange : Error {
  explicit TargetOutOfRange(const std::string& msg) : Error(msg) {}
};

struct ZeroMass : Error {
  explicit ZeroMass(const std::string& msg) : Error(msg) {}
};

struct MassMismatch : Error {
  explicit MassMismatch(const std::string& msg) : Error(msg) {}
};

struct ValueOutOfRange : Error {
  explicit ValueOutOfRange(const std::string& msg) : Error(msg) {}
};

// An internal guarantee failed; indicates a bug, not bad input.
struct InternalError : Error {
  explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace waveset
