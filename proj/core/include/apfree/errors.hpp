#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace apfree {

// A caller broke a documented contract: bad value, bad argument
// combination, or an operation applied to data it was never meant for.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed textual input: rationals, map files, order descriptions.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bounded enumeration search gave up before finding a qualifying
// point. This is an expected, meaningful outcome for searches that run
// against orders where no qualifying point exists.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(std::string context, std::uint64_t steps)
      : std::runtime_error(context + " (no qualifying point within " +
                           std::to_string(steps) + " enumeration steps)"),
        context_(std::move(context)),
        steps_(steps) {}

  const std::string& context() const noexcept { return context_; }
  std::uint64_t steps() const noexcept { return steps_; }

  // Filled in when the exhausted search happened while building step n
  // of a prefix construction.
  std::optional<std::uint32_t> construction_step;

 private:
  std::string context_;
  std::uint64_t steps_;
};

}  // namespace apfree
