#pragma once

#include <string>

#include "fog/logic.hpp"
#include "fog/structure.hpp"

namespace fog {

// Throws ParseError (syntax, with line/column) or TheoryError (invariants).
Theory parse_theory(const std::string& text);

// Interprets exactly the input symbols of voc.
FiniteStructure parse_structure(const std::string& text, const Vocabulary& voc);

std::string read_file(const std::string& path);

}  // namespace fog
