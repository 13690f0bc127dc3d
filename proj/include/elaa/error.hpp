#pragma once

#include <stdexcept>
#include <string>

namespace elaa {

/// A parameter violated its invariant. field() carries the dotted name of the
/// offending parameter so configuration front ends can report it.
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace elaa
