#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace flowsort {

enum class errc {
  parse,          // malformed text, unknown schema, wrong JSON shape
  structural,     // sizes, indices or cross-references do not line up
  domain,         // argument outside the operation's domain
  precondition,   // operation invoked on an unsuitable representation
  validation,     // semantic constraint violated (capacity, profiles, bounds)
  inconsistency,  // computed quantities disagree beyond tolerance
};

class error : public std::runtime_error {
public:
  error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace flowsort
