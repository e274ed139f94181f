#pragma once

#include <stdexcept>
#include <string>

namespace beepcover {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// instance construction / validation
struct OutOfRangeId : Error {
  using Error::Error;
};
struct DuplicateMembership : Error {
  using Error::Error;
};
struct UncoverableElement : Error {
  using Error::Error;
};
struct InfeasibleParams : Error {
  using Error::Error;
};
struct InvalidSetId : Error {
  using Error::Error;
};

// i/o
struct IoError : Error {
  using Error::Error;
};
struct ParseError : Error {
  int line;
  ParseError(const std::string& msg, int line_no)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

// simulation
struct HorizonExceeded : Error {
  using Error::Error;
};
struct InvalidPort : Error {
  using Error::Error;
};

// oracles / harness
struct TooLarge : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace beepcover
