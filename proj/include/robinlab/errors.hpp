#pragma once

#include <stdexcept>
#include <string>

namespace robinlab {

// Argument outside the mathematical domain of an operation (n = 0, s <= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Index or argument outside the range covered by an existing table.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Request exceeds the memory budget or an exact integer result overflows.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace robinlab
