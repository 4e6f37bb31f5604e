#pragma once
#include <string>
#include <utility>

#include "qbps/ncalg.hpp"
#include "qbps/quiver.hpp"

namespace qbps {

// Line-oriented input format:
//   [quiver]
//   vertices = <n>
//   arrow <name> <source> <target>
//   [potential]
//   term <rational> <arrow names separated by spaces>
// Comments start with '#'. Parse failures raise input_error with line/column.
std::pair<Quiver, Potential> parse_input(const std::string& text);

std::string print_input(const Quiver& Q, const Potential& W);

} // namespace qbps
