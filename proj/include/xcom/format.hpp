#pragma once

#include <string>

#include "xcom/prettydoc.hpp"
#include "xcom/syntax.hpp"

namespace xcom {

// Single-line concrete syntax with the fewest parentheses that re-parse to the
// same tree.
std::string format_exp(const Exp& e);

// Single-line statement text, as used for flow-graph labels.
std::string format_flat(const Statement& s);

// Layout document: blocks, loops and conditionals try their one-line form
// first and fall back to an indented multi-line form.
doc::DocPtr statement_doc(const Statement& s);

std::string format_xcom(const Statement& s, int page_width = 80, int ribbon_width = 80);

}  // namespace xcom
