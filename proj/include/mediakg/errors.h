#ifndef MEDIAKG_ERRORS_H_
#define MEDIAKG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mediakg {

// Bad user input: malformed files, out-of-range flags, dangling references.
// The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant (a bug, not bad input). Exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mediakg

#endif  // MEDIAKG_ERRORS_H_
