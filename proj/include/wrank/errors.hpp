#pragma once

#include <stdexcept>
#include <string>

namespace wrank {

// Malformed user input: unparsable files, bad shapes, unknown names.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds the configured size cap.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition.
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wrank
