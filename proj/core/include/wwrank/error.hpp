#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wwrank {

/// Failure categories. The CLI maps each one to its own exit code.
enum class Errc {
  invalid_argument,
  parse,
  io,
  asymmetry,
  ties,
  convergence,
  capacity,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wwrank
