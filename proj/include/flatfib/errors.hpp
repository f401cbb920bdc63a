#ifndef FLATFIB_ERRORS_HPP
#define FLATFIB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flatfib {

/// Malformed textual input (isometries, group files, catalog files).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that fails a mathematical precondition: not a space
/// group, subgroup not normal, subgroup not complete, non-invariant subspace.
class rejected_input : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Derived data contradicts itself. Indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace flatfib

#endif  // FLATFIB_ERRORS_HPP
