#pragma once

#include <stdexcept>
#include <string>

namespace mckay3 {

// Bad input: invalid parameters, malformed files, elements outside SL_r.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed object failed one of its own invariants. Always a bug.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mckay3
