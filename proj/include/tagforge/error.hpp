#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tagforge {

// Base for every error the library reports. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A closure or search ran past its configured resource cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace tagforge
