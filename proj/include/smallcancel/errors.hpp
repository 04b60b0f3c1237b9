#pragma once

#include <stdexcept>
#include <string>

namespace smallcancel {

// Base for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text: token syntax, file syntax, bad numbers.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Structurally well-formed input that fails a semantic check:
// non-group tables, identity letters, non-symmetrized sets, bad configs.
struct CheckError : Error {
  explicit CheckError(const std::string& msg) : Error(msg) {}
};

// A configured guard tripped: size caps, step caps, search bounds.
struct ResourceError : Error {
  explicit ResourceError(const std::string& msg) : Error(msg) {}
};

}  // namespace smallcancel
