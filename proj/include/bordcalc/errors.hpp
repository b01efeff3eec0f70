#ifndef BORDCALC_ERRORS_HPP
#define BORDCALC_ERRORS_HPP

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>

namespace bordcalc {

/// Precondition of an operation was not met by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A request exceeded a configured degree cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The rewrite-step budget ran out; `stuck_term` is the monomial being rewritten.
class FuelExhausted : public std::runtime_error {
 public:
  FuelExhausted(std::string stuck_term, std::size_t fuel)
      : std::runtime_error("rewrite fuel exhausted (" + std::to_string(fuel) +
                           " steps) while rewriting " + stuck_term),
        stuck_term(std::move(stuck_term)) {}
  std::string stuck_term;
};

/// A characteristic-number system had no unique solution. Always a catalog bug.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::set<std::string> expected, const std::string& detail)
      : std::runtime_error(format(position, expected, detail)),
        position(position),
        expected(std::move(expected)) {}

  std::size_t position;
  std::set<std::string> expected;

 private:
  static std::string format(std::size_t pos, const std::set<std::string>& exp,
                            const std::string& detail) {
    std::string s = "syntax error at position " + std::to_string(pos);
    if (!detail.empty()) s += ": " + detail;
    if (!exp.empty()) {
      s += " (expected one of:";
      for (const auto& e : exp) s += " " + e;
      s += ")";
    }
    return s;
  }
};

}  // namespace bordcalc

#endif  // BORDCALC_ERRORS_HPP
