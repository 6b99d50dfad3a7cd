#include "dc/format.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dc {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '%') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '%')
      ++i;
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' ||
         c == ')' || c == '\'' || c == '"' || c == ',' || c == '.';
}

bool parse_nonneg_int(const std::string& s, int& out) {
  if (s.empty() || s.size() > 9) return false;
  long v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
  }
  out = static_cast<int>(v);
  return true;
}

class TheoryParser {
 public:
  explicit TheoryParser(std::string_view text) : text_(text) {}

  ParseResult run() {
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text_.size()) {
      std::size_t nl = text_.find('\n', pos);
      std::string_view line = text_.substr(pos, nl == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : nl - pos);
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      parse_line(line, lineno);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (!header_seen_) error(lineno ? lineno : 1, 1, "missing 'dc 1.0' header");
    ParseResult result;
    result.diagnostics = std::move(diags_);
    bool failed = std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                              [](const ParseDiagnostic& d) {
                                return d.severity == ParseDiagnostic::Severity::Error;
                              });
    if (!failed) result.theory = builder_.build();
    return result;
  }

 private:
  void error(int line, int col, std::string msg) {
    diags_.push_back({line, col, ParseDiagnostic::Severity::Error, std::move(msg)});
  }
  void warn(int line, int col, std::string msg) {
    diags_.push_back({line, col, ParseDiagnostic::Severity::Warning, std::move(msg)});
  }

  // Declared-atom lookup shared by all clause-like sections.
  std::optional<AtomId> resolve(const Token& t, int line, std::string_view name) {
    auto id = builder_.find_atom(std::string(name));
    if (!id) error(line, t.column, "undeclared atom '" + std::string(name) + "'");
    return id;
  }

  void parse_line(std::string_view line, int lineno) {
    auto toks = tokenize(line);
    if (toks.empty()) return;
    if (!header_seen_) {
      if (toks.size() == 2 && toks[0].text == "dc" && toks[1].text == "1.0") {
        header_seen_ = true;
      } else {
        error(lineno, toks[0].column, "expected header 'dc 1.0'");
        header_seen_ = true;  // avoid cascading header errors
      }
      return;
    }
    const std::string& tag = toks[0].text;
    if (tag == "#atoms")
      parse_atoms(toks, lineno);
    else if (tag == "c:")
      parse_clause(toks, lineno, Clause::Role::Constraint);
    else if (tag == "p:")
      parse_clause(toks, lineno, Clause::Role::Post);
    else if (tag == "h:")
      parse_horn(toks, lineno);
    else if (tag == "s:")
      parse_select(toks, lineno);
    else
      error(lineno, toks[0].column, "unknown section tag '" + tag + "'");
  }

  void parse_atoms(const std::vector<Token>& toks, int lineno) {
    if (toks.size() < 2 || (toks[1].text != "c:" && toks[1].text != "h:")) {
      error(lineno, toks[0].column, "expected '#atoms c:' or '#atoms h:'");
      return;
    }
    AtomKind kind = toks[1].text == "c:" ? AtomKind::Constraint : AtomKind::Horn;
    for (std::size_t i = 2; i < toks.size(); ++i) {
      const std::string& name = toks[i].text;
      if (!valid_atom_name(name)) {
        error(lineno, toks[i].column, "invalid atom name '" + name + "'");
        continue;
      }
      if (builder_.find_atom(name)) {
        error(lineno, toks[i].column, "duplicate declaration of atom '" + name + "'");
        continue;
      }
      builder_.add_atom(name, kind);
    }
  }

  void parse_clause(const std::vector<Token>& toks, int lineno, Clause::Role role) {
    std::vector<Literal> lits;
    bool bad = false;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      std::string_view t = toks[i].text;
      bool positive = true;
      if (!t.empty() && t[0] == '-') {
        positive = false;
        t.remove_prefix(1);
      }
      if (!valid_atom_name(t)) {
        error(lineno, toks[i].column, "invalid literal '" + toks[i].text + "'");
        bad = true;
        continue;
      }
      auto id = resolve(toks[i], lineno, t);
      if (!id) {
        bad = true;
        continue;
      }
      if (role == Clause::Role::Constraint &&
          builder_.atoms().kind(*id) != AtomKind::Constraint) {
        error(lineno, toks[i].column,
              "kind error: constraint clause cannot mention Horn-kind atom '" +
                  std::string(t) + "'");
        bad = true;
        continue;
      }
      lits.push_back({*id, positive});
    }
    if (bad) return;
    if (role == Clause::Role::Constraint)
      builder_.add_constraint_clause(std::move(lits));
    else
      builder_.add_post_clause(std::move(lits));
  }

  void parse_horn(const std::vector<Token>& toks, int lineno) {
    std::size_t arrow = 0;
    for (std::size_t i = 1; i < toks.size(); ++i)
      if (toks[i].text == "->") {
        arrow = i;
        break;
      }
    if (arrow == 0 || arrow + 2 != toks.size()) {
      error(lineno, toks[0].column, "expected 'h: <body atoms> -> <head atom>'");
      return;
    }
    std::vector<AtomId> body;
    bool bad = false;
    for (std::size_t i = 1; i < arrow; ++i) {
      auto id = valid_atom_name(toks[i].text)
                    ? resolve(toks[i], lineno, toks[i].text)
                    : (error(lineno, toks[i].column,
                             "invalid atom name '" + toks[i].text + "'"),
                       std::nullopt);
      if (!id) {
        bad = true;
        continue;
      }
      body.push_back(*id);
    }
    const Token& head_tok = toks[arrow + 1];
    if (!valid_atom_name(head_tok.text)) {
      error(lineno, head_tok.column, "invalid atom name '" + head_tok.text + "'");
      return;
    }
    auto head = resolve(head_tok, lineno, head_tok.text);
    if (!head || bad) return;
    if (builder_.atoms().kind(*head) != AtomKind::Horn) {
      error(lineno, head_tok.column,
            "kind error: Horn rule head '" + head_tok.text + "' must have kind h");
      return;
    }
    builder_.add_horn_rule(std::move(body), *head);
  }

  void parse_select(const std::vector<Token>& toks, int lineno) {
    if (toks.size() < 4 || toks[3].text != ":") {
      error(lineno, toks[0].column, "expected 's: <n> <m> : <atoms>'");
      return;
    }
    int lower = 0, upper = 0;
    if (!parse_nonneg_int(toks[1].text, lower) || !parse_nonneg_int(toks[2].text, upper)) {
      error(lineno, toks[1].column, "select bounds must be nonnegative integers");
      return;
    }
    if (lower > upper) {
      error(lineno, toks[1].column, "select bounds violate n <= m");
      return;
    }
    std::vector<AtomId> scope;
    bool bad = false;
    for (std::size_t i = 4; i < toks.size(); ++i) {
      if (!valid_atom_name(toks[i].text)) {
        error(lineno, toks[i].column, "invalid atom name '" + toks[i].text + "'");
        bad = true;
        continue;
      }
      auto id = resolve(toks[i], lineno, toks[i].text);
      if (!id) {
        bad = true;
        continue;
      }
      if (builder_.atoms().kind(*id) != AtomKind::Constraint) {
        error(lineno, toks[i].column,
              "kind error: select scope cannot mention Horn-kind atom '" +
                  toks[i].text + "'");
        bad = true;
        continue;
      }
      scope.push_back(*id);
    }
    if (bad) return;
    if (builder_.add_select(lower, upper, std::move(scope)) ==
        TheoryBuilder::SelectOutcome::NeverSatisfiable)
      warn(lineno, toks[1].column,
           "select requires more true atoms than its scope holds; theory is unsatisfiable");
  }

  std::string_view text_;
  TheoryBuilder builder_;
  std::vector<ParseDiagnostic> diags_;
  bool header_seen_ = false;
};

void write_literal(std::ostream& os, const Theory& t, const Literal& l) {
  os << ' ';
  if (!l.positive) os << '-';
  os << t.atoms.name(l.atom);
}

}  // namespace

bool valid_atom_name(std::string_view name) {
  if (name.empty()) return false;
  char c0 = name[0];
  if (!(std::isalpha(static_cast<unsigned char>(c0)) || c0 == '_')) return false;
  return std::all_of(name.begin() + 1, name.end(), name_char);
}

std::string render_diagnostic(const ParseDiagnostic& d) {
  std::ostringstream os;
  os << d.line << ':' << d.column << ": "
     << (d.severity == ParseDiagnostic::Severity::Error ? "error: " : "warning: ")
     << d.message;
  return os.str();
}

ParseResult parse_theory(std::string_view text) { return TheoryParser(text).run(); }

std::string serialize_theory(const Theory& t) {
  std::ostringstream os;
  os << "dc 1.0\n";
  os << "#atoms c:";
  for (AtomId a = 0; a < t.atoms.size(); ++a)
    if (t.atoms.kind(a) == AtomKind::Constraint) os << ' ' << t.atoms.name(a);
  os << "\n#atoms h:";
  for (AtomId a = 0; a < t.atoms.size(); ++a)
    if (t.atoms.kind(a) == AtomKind::Horn) os << ' ' << t.atoms.name(a);
  os << '\n';
  for (const auto& c : t.constraints) {
    os << "c:";
    for (const auto& l : c.literals) write_literal(os, t, l);
    os << '\n';
  }
  for (const auto& s : t.selects) {
    os << "s: " << s.lower << ' ' << s.upper << " :";
    for (AtomId a : s.scope) os << ' ' << t.atoms.name(a);
    os << '\n';
  }
  for (const auto& r : t.horn) {
    os << "h:";
    for (AtomId a : r.body) os << ' ' << t.atoms.name(a);
    os << " -> " << t.atoms.name(r.head) << '\n';
  }
  for (const auto& c : t.posts) {
    os << "p:";
    for (const auto& l : c.literals) write_literal(os, t, l);
    os << '\n';
  }
  return os.str();
}

std::vector<ParseDiagnostic> validate_theory(const Theory& t) {
  std::vector<ParseDiagnostic> diags;
  auto issue = [&](ParseDiagnostic::Severity sev, std::string msg) {
    diags.push_back({1, 1, sev, std::move(msg)});
  };
  auto check_literals = [&](const Clause& c, bool constraint_only) {
    for (const auto& l : c.literals) {
      if (!t.atoms.valid(l.atom)) {
        issue(ParseDiagnostic::Severity::Error, "clause literal atom id out of range");
        return;
      }
      if (constraint_only && t.atoms.kind(l.atom) != AtomKind::Constraint)
        issue(ParseDiagnostic::Severity::Error,
              "constraint clause mentions Horn-kind atom '" + t.atoms.name(l.atom) + "'");
    }
  };
  for (const auto& c : t.constraints) {
    check_literals(c, true);
    if (c.tautological)
      issue(ParseDiagnostic::Severity::Warning, "tautological constraint clause");
  }
  for (const auto& c : t.posts) {
    check_literals(c, false);
    if (c.tautological) issue(ParseDiagnostic::Severity::Warning, "tautological post clause");
  }
  for (const auto& s : t.selects) {
    if (s.lower > s.upper || s.lower < 0)
      issue(ParseDiagnostic::Severity::Error, "select bounds violate 0 <= n <= m");
    if (s.upper > static_cast<int>(s.scope.size()))
      issue(ParseDiagnostic::Severity::Error, "select upper bound exceeds scope size");
    if (s.scope.empty())
      issue(ParseDiagnostic::Severity::Warning, "select with empty scope");
    for (AtomId a : s.scope)
      if (!t.atoms.valid(a) || t.atoms.kind(a) != AtomKind::Constraint)
        issue(ParseDiagnostic::Severity::Error, "select scope atom invalid or Horn-kind");
  }
  for (const auto& r : t.horn) {
    if (!t.atoms.valid(r.head) || t.atoms.kind(r.head) != AtomKind::Horn)
      issue(ParseDiagnostic::Severity::Error, "Horn rule head invalid or not Horn-kind");
    for (AtomId a : r.body)
      if (!t.atoms.valid(a))
        issue(ParseDiagnostic::Severity::Error, "Horn rule body atom id out of range");
  }
  for (AtomId a = 0; a < t.atoms.size(); ++a)
    if (!t.appears(a))
      issue(ParseDiagnostic::Severity::Warning,
            "atom '" + t.atoms.name(a) + "' is declared but never used");
  return diags;
}

}  // namespace dc
