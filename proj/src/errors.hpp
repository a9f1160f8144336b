#pragma once

#include <stdexcept>
#include <string>

namespace dofbc {

// Error taxonomy shared by the core library and the C API layer.
// Each class maps to one C error code and one CLI exit path.

class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class RangeError : public std::runtime_error {
public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

class InfeasibleError : public std::runtime_error {
public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

class UnsupportedSizeError : public std::runtime_error {
public:
  explicit UnsupportedSizeError(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dofbc
