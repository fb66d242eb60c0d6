#pragma once

#include <stdexcept>
#include <string>

namespace loopforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeError : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class ConstraintError : public Error { using Error::Error; };
class FramingError : public Error { using Error::Error; };
class MoveError : public Error { using Error::Error; };
class MatchError : public Error { using Error::Error; };
class ModelError : public Error { using Error::Error; };
class MaskError : public Error { using Error::Error; };
class UsageError : public Error { using Error::Error; };

class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

class NumericalError : public Error { using Error::Error; };

}  // namespace loopforge
