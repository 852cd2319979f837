#pragma once

#include <stdexcept>
#include <string>

namespace cdnl {

// Contract violations are programming errors on the caller's side; they throw
// instead of aborting so tests can observe them.
struct ContractViolation : std::logic_error {
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

#define CDNL_REQUIRE(cond, msg)                 \
  do {                                          \
    if (!(cond)) throw ::cdnl::ContractViolation(msg); \
  } while (0)

}  // namespace cdnl
