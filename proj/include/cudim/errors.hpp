#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cudim {

// Input did not match a grammar. `position` is a 0-based byte offset into
// the offending string.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A configured resource bound (group order, node cap, factorization bound,
// enumeration size) would be exceeded. Raised instead of returning a wrong
// or partial answer.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& message) : std::runtime_error(message) {}
};

// A request that is well-formed but has no answer (e.g. realizing a
// dimension larger than the module's own).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& message) : std::runtime_error(message) {}
};

} // namespace cudim
