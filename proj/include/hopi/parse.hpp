#pragma once

#include <stdexcept>
#include <string>

#include "hopi/syntax.hpp"

namespace hopi {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg)), line(line_), col(col_) {}
};

// Concrete grammar:
//   P ::= Q ('|' Q)*                       parallel, left-assoc
//   Q ::= '0' | VAR
//       | NAME '(' VAR ')' '.' Q           input
//       | NAME '<' P '>' '.' Q             output
//       | NAME '.' Q                       input with an unused binder
//       | '(' 'nu' NAME ')' Q              restriction
//       | '(' P ')'
// NAME is lowercase-initial, VAR uppercase-initial.
ProcPtr parse_process(const std::string& text);

}  // namespace hopi
