#include "lpmlens/errors.hpp"

namespace lpmlens {

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

}  // namespace lpmlens
