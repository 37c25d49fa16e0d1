#pragma once

#include <stdexcept>

namespace els {

/// Two independent computations of the same quantity disagreed.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A local test could not be decided within the maximum search budget.
class UndecidedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace els
