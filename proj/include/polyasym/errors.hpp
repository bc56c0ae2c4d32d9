#pragma once

#include <stdexcept>

namespace polyasym {

/// Two independent routes to the same quantity disagreed, or a certificate
/// failed its own arithmetic check. Always a bug, never a user error.
struct InternalConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace polyasym
