#pragma once

#include <stdexcept>
#include <string>

namespace wittkit {

/// Machine-readable failure categories. The string form is what the CLI and
/// JSON reports print.
enum class Signal {
  UnsupportedDivisible,  // operation would need more than 2-primary data of D(t)
  UnsupportedDivisibleMap,
  ShapeMismatch,
  InvalidMap,
  ParseError,
  InconsistentDescriptor,
  DegreeOutOfRange,
  NoSuchTwist,
  UnsupportedTwist,
  MalformedPage,
  DimensionTooLarge,
  Truncation,
  RingMismatch,
  UnknownName,
  EtaObstructed,
};

inline const char* to_string(Signal s) {
  switch (s) {
    case Signal::UnsupportedDivisible: return "unsupported-divisible";
    case Signal::UnsupportedDivisibleMap: return "unsupported-divisible-map";
    case Signal::ShapeMismatch: return "shape-mismatch";
    case Signal::InvalidMap: return "invalid-map";
    case Signal::ParseError: return "parse-error";
    case Signal::InconsistentDescriptor: return "inconsistent-descriptor";
    case Signal::DegreeOutOfRange: return "degree-out-of-range";
    case Signal::NoSuchTwist: return "no-such-twist";
    case Signal::UnsupportedTwist: return "unsupported-twist";
    case Signal::MalformedPage: return "malformed-page";
    case Signal::DimensionTooLarge: return "dimension-too-large";
    case Signal::Truncation: return "truncation";
    case Signal::RingMismatch: return "ring-mismatch";
    case Signal::UnknownName: return "unknown-name";
    case Signal::EtaObstructed: return "eta-obstructed";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Signal signal, const std::string& detail)
      : std::runtime_error(std::string(to_string(signal)) + ": " + detail), signal_(signal) {}

  Signal signal() const noexcept { return signal_; }

 private:
  Signal signal_;
};

}  // namespace wittkit
