#pragma once

// Line-oriented text format for propositional DC theories.
//
//   dc 1.0
//   #atoms c: a b hc(1,2)
//   #atoms h: vstd(1)
//   c: -a b            constraint clause
//   s: 1 2 : a b       select: between 1 and 2 of {a,b} true
//   h: a b -> vstd(1)  Horn rule (body may be empty: "h: -> x")
//   p: -vstd(1)        post-constraint clause
//
// '%' starts a comment; tokens are whitespace-separated; atoms must be
// declared before use; atom names match [A-Za-z_][A-Za-z0-9_()'",.]*.

#include <string>
#include <string_view>
#include <vector>

#include "dc/core.hpp"

namespace dc {

struct ParseDiagnostic {
  enum class Severity { Error, Warning };
  int line = 1;
  int column = 1;
  Severity severity = Severity::Error;
  std::string message;
};

std::string render_diagnostic(const ParseDiagnostic& d);

struct ParseResult {
  std::optional<Theory> theory;  // present iff no Error diagnostics
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return theory.has_value(); }
};

// Total: every input yields a theory or at least one Error diagnostic.
ParseResult parse_theory(std::string_view text);

// Canonical form: atoms sorted by id, sections in c/s/h/p order.
// parse_theory(serialize_theory(t)) is isomorphic to t.
std::string serialize_theory(const Theory& theory);

// Warnings for declared-but-unused atoms, tautological clauses and
// empty-scope selects; errors only for broken structural invariants.
std::vector<ParseDiagnostic> validate_theory(const Theory& theory);

bool valid_atom_name(std::string_view name);

}  // namespace dc
