#pragma once

#include <stdexcept>
#include <string>

namespace fpent {

/// Raised when a numerical routine (quadrature, root bracketing, series)
/// fails to reach its target accuracy. Carries the name of the component
/// that failed so front ends can report it.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string component, const std::string& what)
        : std::runtime_error(component + ": " + what), component_(std::move(component)) {}

    const std::string& component() const noexcept { return component_; }

private:
    std::string component_;
};

}  // namespace fpent
