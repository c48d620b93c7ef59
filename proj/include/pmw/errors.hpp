#pragma once

#include <stdexcept>
#include <string>

namespace pmw {

// Caller violated a documented precondition; the message names the clause.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration would exceed a configured cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A guarantee the construction is supposed to maintain failed: a bug, not bad input.
[[noreturn]] inline void internal_failure(const std::string& what) {
    throw std::logic_error("internal invariant failed: " + what);
}

inline void internal_check(bool ok, const std::string& what) {
    if (!ok) internal_failure(what);
}

} // namespace pmw
