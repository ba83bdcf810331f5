#pragma once

#include <stdexcept>
#include <string>

namespace ts {

// Every failure carries a stable name (e.g. "ReducibleModulus") that the CLI
// copies verbatim into error documents.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& detail) {
  throw Error(name, detail);
}

}  // namespace ts
