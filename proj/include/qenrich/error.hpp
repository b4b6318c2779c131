#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qenrich {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value, matrix or description does not fit the quantale or shape it is used with.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured size bound.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, double requested, double bound)
      : Error(what + ": requested " + fmt_count(requested) + " exceeds budget " + fmt_count(bound)),
        requested_(requested),
        bound_(bound) {}

  double requested() const noexcept { return requested_; }
  double bound() const noexcept { return bound_; }

 private:
  static std::string fmt_count(double v) {
    if (v < 1e15) return std::to_string(static_cast<unsigned long long>(v));
    return std::to_string(v);
  }
  double requested_;
  double bound_;
};

/// A named law failed; `witnesses` names the offending points or values.
struct Violation {
  std::string law;
  std::vector<std::string> witnesses;

  std::string describe() const {
    std::string s = law;
    if (!witnesses.empty()) {
      s += " at (";
      for (std::size_t k = 0; k < witnesses.size(); ++k) {
        if (k) s += ", ";
        s += witnesses[k];
      }
      s += ")";
    }
    return s;
  }
};

class LawViolation : public Error {
 public:
  explicit LawViolation(Violation v) : Error(v.describe()), violation_(std::move(v)) {}
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

/// A precondition on classes of filters or ideals does not hold; `violator`
/// names a concrete member that leaves its class.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string what, std::string violator)
      : Error(what + ": " + violator), violator_(std::move(violator)) {}
  const std::string& violator() const noexcept { return violator_; }

 private:
  std::string violator_;
};

/// Result of one law in a law-checking sweep.
struct LawResult {
  std::string law;
  bool passed = true;
  std::vector<std::string> counterexample;
};

struct LawReport {
  std::vector<LawResult> results;

  bool ok() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }
  const LawResult* find(const std::string& law) const {
    for (const auto& r : results)
      if (r.law == law) return &r;
    return nullptr;
  }
};

}  // namespace qenrich
