#pragma once

#include <stdexcept>
#include <string>

namespace rotsurf {

// Bad numeric input: non-finite arguments, modulus outside [0,1], contract violations.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A finite input whose result diverges (p = 1 at the quarter period, singular Pi path).
class range_error : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Mixing points from different coordinate frames.
class frame_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid surface specification (rotation kind not available in the space form, H < 0, ...).
class spec_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Integration constant outside the admissible set.
class infeasible_error : public std::runtime_error {
 public:
  infeasible_error(const std::string& what, std::string admissible)
      : std::runtime_error(what), admissible_(std::move(admissible)) {}
  const std::string& admissible() const noexcept { return admissible_; }

 private:
  std::string admissible_;
};

// Degenerate first fundamental form or null cross product.
class singular_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closure root search without a sign change.
class not_found_error : public std::runtime_error {
 public:
  not_found_error(const std::string& what, std::string table)
      : std::runtime_error(what), table_(std::move(table)) {}
  const std::string& table() const noexcept { return table_; }

 private:
  std::string table_;
};

}  // namespace rotsurf
