#pragma once

#include <stdexcept>
#include <string>

namespace lsv {

// Precondition violations carry the name of the failed constraint so
// callers (and the CLI, which maps them to exit code 3) can report
// exactly which contract was broken.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(std::string constraint, const std::string& detail)
      : std::runtime_error(constraint + ": " + detail),
        constraint_(std::move(constraint)) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

// Raised when an exact computation would exceed its enumeration or
// table budget. Never downgraded to an approximation silently.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::string what_exceeded, const std::string& detail)
      : std::runtime_error(what_exceeded + " budget exceeded: " + detail),
        budget_(std::move(what_exceeded)) {}
  const std::string& budget() const { return budget_; }

 private:
  std::string budget_;
};

}  // namespace lsv
