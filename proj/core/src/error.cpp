#include "gkm/error.hpp"

namespace gkm {

DimensionMismatch::DimensionMismatch(const std::string& what, std::size_t expected,
                                     std::size_t actual)
    : std::invalid_argument(what + ": expected " + std::to_string(expected) + ", got " +
                            std::to_string(actual)),
      expected_(expected),
      actual_(actual) {}

QuadratureError::QuadratureError(const std::string& what, double achieved_tolerance)
    : std::runtime_error(what + " (achieved tolerance " + std::to_string(achieved_tolerance) +
                         ")"),
      achieved_(achieved_tolerance) {}

IntegrationError::IntegrationError(const std::string& what, std::size_t step)
    : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}

}  // namespace gkm
