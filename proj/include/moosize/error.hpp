#pragma once

#include <stdexcept>
#include <string>

namespace moosize {

enum class ErrorKind {
  UnsupportedArity,
  Parse,
  DuplicateVariant,
  UnknownCell,
  UnknownVariant,
  UnmappedGate,
  InvalidChromosome,
  InvalidConstraint,
  TimingNotMet,
  InvalidReference,
  Cycle,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace moosize
