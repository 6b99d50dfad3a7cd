#include "dc/core.hpp"

#include <algorithm>
#include <queue>

namespace dc {

AtomId AtomTable::add(const std::string& name, AtomKind kind) {
  auto [it, inserted] = index_.emplace(name, size());
  if (!inserted) throw Error("duplicate atom '" + name + "'");
  atoms_.push_back({name, kind});
  return it->second;
}

std::optional<AtomId> AtomTable::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AtomId TheoryBuilder::add_atom(const std::string& name, AtomKind kind) {
  return atoms_.add(name, kind);
}

AtomId TheoryBuilder::intern_atom(const std::string& name, AtomKind kind) {
  if (auto id = atoms_.find(name)) {
    if (atoms_.kind(*id) != kind)
      throw Error("atom '" + name + "' used with conflicting kinds");
    return *id;
  }
  return atoms_.add(name, kind);
}

void TheoryBuilder::check_atom(AtomId a) const {
  if (!atoms_.valid(a)) throw Error("atom id out of range");
}

void TheoryBuilder::add_clause(Clause::Role role, std::vector<Literal> literals) {
  for (const Literal& l : literals) {
    check_atom(l.atom);
    if (role == Clause::Role::Constraint && atoms_.kind(l.atom) != AtomKind::Constraint)
      throw Error("constraint clause literal '" + atoms_.name(l.atom) + "' has kind h");
  }
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  bool taut = false;
  for (std::size_t i = 1; i < literals.size(); ++i)
    if (literals[i].atom == literals[i - 1].atom) taut = true;
  auto& keys = role == Clause::Role::Constraint ? constraint_keys_ : post_keys_;
  if (!keys.insert(literals).second) return;  // duplicate clause
  auto& out = role == Clause::Role::Constraint ? constraints_ : posts_;
  out.push_back({role, std::move(literals), taut});
}

void TheoryBuilder::add_constraint_clause(std::vector<Literal> literals) {
  add_clause(Clause::Role::Constraint, std::move(literals));
}

void TheoryBuilder::add_post_clause(std::vector<Literal> literals) {
  add_clause(Clause::Role::Post, std::move(literals));
}

void TheoryBuilder::add_horn_rule(std::vector<AtomId> body, AtomId head) {
  for (AtomId a : body) check_atom(a);
  check_atom(head);
  if (atoms_.kind(head) != AtomKind::Horn)
    throw Error("Horn rule head '" + atoms_.name(head) + "' has kind c");
  std::sort(body.begin(), body.end());
  body.erase(std::unique(body.begin(), body.end()), body.end());
  if (!horn_keys_.insert({body, head}).second) return;
  horn_.push_back({std::move(body), head});
}

TheoryBuilder::SelectOutcome TheoryBuilder::add_select(int lower, int upper,
                                                       std::vector<AtomId> scope) {
  if (lower < 0 || upper < 0 || lower > upper)
    throw Error("select bounds must satisfy 0 <= lower <= upper");
  for (AtomId a : scope) {
    check_atom(a);
    if (atoms_.kind(a) != AtomKind::Constraint)
      throw Error("select scope atom '" + atoms_.name(a) + "' has kind h");
  }
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  if (lower > static_cast<int>(scope.size())) {
    // Unsatisfiable by construction; an empty clause keeps the semantics.
    add_constraint_clause({});
    return SelectOutcome::NeverSatisfiable;
  }
  upper = std::min(upper, static_cast<int>(scope.size()));
  if (!select_keys_.insert({lower, upper, scope}).second) return SelectOutcome::Duplicate;
  selects_.push_back({lower, upper, std::move(scope)});
  return SelectOutcome::Added;
}

Theory TheoryBuilder::build() {
  Theory t;
  t.atoms = std::move(atoms_);
  t.constraints = std::move(constraints_);
  t.selects = std::move(selects_);
  t.horn = std::move(horn_);
  t.posts = std::move(posts_);
  t.appearing_.assign(t.atoms.size(), 0);
  auto mark = [&](AtomId a) { t.appearing_[a] = 1; };
  for (const auto& c : t.constraints)
    for (const auto& l : c.literals) mark(l.atom);
  for (const auto& s : t.selects)
    for (AtomId a : s.scope) mark(a);
  for (const auto& r : t.horn) {
    for (AtomId a : r.body) mark(a);
    mark(r.head);
  }
  for (const auto& c : t.posts)
    for (const auto& l : c.literals) mark(l.atom);
  for (AtomId a = 0; a < t.atoms.size(); ++a) {
    if (!t.appearing_[a]) continue;
    (t.atoms.kind(a) == AtomKind::Constraint ? t.constraint_atoms : t.horn_atoms)
        .push_back(a);
  }
  return t;
}

CandidateSet CandidateSet::from(std::vector<AtomId> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return CandidateSet{std::move(atoms)};
}

bool CandidateSet::contains(AtomId a) const {
  return std::binary_search(trues.begin(), trues.end(), a);
}

std::vector<AtomId> least_model(std::span<const HornRule> rules,
                                std::span<const AtomId> seed, AtomId atom_count) {
  std::vector<char> in(atom_count, 0);
  // One occurrence per body entry keeps repeated atoms consistent with the
  // per-rule counter.
  std::vector<std::vector<std::size_t>> occ(atom_count);
  std::vector<std::size_t> remaining(rules.size());
  std::vector<AtomId> queue;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    if (!(rules[r].head >= 0 && rules[r].head < atom_count))
      throw Error("least_model: head atom out of range");
    remaining[r] = rules[r].body.size();
    for (AtomId a : rules[r].body) {
      if (!(a >= 0 && a < atom_count)) throw Error("least_model: body atom out of range");
      occ[a].push_back(r);
    }
  }
  auto push = [&](AtomId a) {
    if (!in[a]) {
      in[a] = 1;
      queue.push_back(a);
    }
  };
  for (AtomId a : seed) {
    if (!(a >= 0 && a < atom_count)) throw Error("least_model: seed atom out of range");
    push(a);
  }
  for (std::size_t r = 0; r < rules.size(); ++r)
    if (remaining[r] == 0) push(rules[r].head);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    AtomId a = queue[i];
    for (std::size_t r : occ[a])
      if (--remaining[r] == 0) push(rules[r].head);
  }
  std::vector<AtomId> result;
  for (AtomId a = 0; a < atom_count; ++a)
    if (in[a]) result.push_back(a);
  return result;
}

namespace {

bool clause_satisfied(const Clause& c, const std::vector<char>& truth) {
  for (const Literal& l : c.literals)
    if ((truth[l.atom] != 0) == l.positive) return true;
  return false;
}

int scope_true_count(const SelectConstraint& s, const CandidateSet& m) {
  int n = 0;
  for (AtomId a : s.scope) n += m.contains(a) ? 1 : 0;
  return n;
}

std::string first_pre_violation(const CandidateSet& m, const Theory& t) {
  std::vector<char> truth(t.atoms.size(), 0);
  for (AtomId a : m.trues) truth[a] = 1;
  for (std::size_t i = 0; i < t.constraints.size(); ++i)
    if (!clause_satisfied(t.constraints[i], truth))
      return "constraint clause #" + std::to_string(i) + " unsatisfied";
  for (std::size_t i = 0; i < t.selects.size(); ++i) {
    const auto& s = t.selects[i];
    int n = scope_true_count(s, m);
    if (n < s.lower || n > s.upper)
      return "select #" + std::to_string(i) + " has " + std::to_string(n) +
             " true atoms, outside [" + std::to_string(s.lower) + "," +
             std::to_string(s.upper) + "]";
  }
  return {};
}

}  // namespace

bool check_pre_constraints(const CandidateSet& m, const Theory& theory) {
  return first_pre_violation(m, theory).empty();
}

AnswerSetVerdict is_answer_set(const Theory& theory, const CandidateSet& m) {
  for (AtomId a : m.trues) {
    if (!theory.atoms.valid(a)) throw InvalidAtomError("candidate atom id out of range");
    if (theory.atoms.kind(a) == AtomKind::Horn)
      throw InvalidAtomError("candidate set contains Horn-kind atom '" +
                             theory.atoms.name(a) + "'");
    if (!theory.appears(a))
      return {false, {}, "atom '" + theory.atoms.name(a) + "' does not appear in the theory"};
  }
  if (auto why = first_pre_violation(m, theory); !why.empty()) return {false, {}, why};

  std::vector<AtomId> closure = least_model(theory.horn, m.trues, theory.atoms.size());
  std::vector<char> truth(theory.atoms.size(), 0);
  for (AtomId a : closure) truth[a] = 1;
  for (std::size_t i = 0; i < theory.posts.size(); ++i)
    if (!clause_satisfied(theory.posts[i], truth))
      return {false, {}, "post clause #" + std::to_string(i) + " unsatisfied by closure"};

  ClosureResult result;
  result.closure = std::move(closure);
  for (AtomId a : result.closure)
    if (theory.atoms.kind(a) == AtomKind::Horn) result.derived.push_back(a);
  return {true, std::move(result), {}};
}

std::vector<CandidateSet> brute_force_answer_sets(const Theory& theory, std::size_t cap) {
  const auto& atoms = theory.constraint_atoms;
  if (static_cast<AtomId>(atoms.size()) > kBruteForceAtomLimit)
    throw TooLargeError("brute force limited to " + std::to_string(kBruteForceAtomLimit) +
                        " constraint atoms, theory has " + std::to_string(atoms.size()));
  std::vector<CandidateSet> found;
  const std::uint64_t total = std::uint64_t{1} << atoms.size();
  for (std::uint64_t mask = 0; mask < total && found.size() < cap; ++mask) {
    CandidateSet m;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask >> i & 1) m.trues.push_back(atoms[i]);
    if (is_answer_set(theory, m)) found.push_back(std::move(m));
  }
  return found;
}

namespace {

using NamedLiteral = std::pair<std::string, bool>;

std::set<std::pair<std::string, AtomKind>> atom_key(const Theory& t) {
  std::set<std::pair<std::string, AtomKind>> k;
  for (AtomId a = 0; a < t.atoms.size(); ++a) k.insert({t.atoms.name(a), t.atoms.kind(a)});
  return k;
}

std::set<std::set<NamedLiteral>> clause_key(const Theory& t, const std::vector<Clause>& cs) {
  std::set<std::set<NamedLiteral>> k;
  for (const auto& c : cs) {
    std::set<NamedLiteral> lits;
    for (const auto& l : c.literals) lits.insert({t.atoms.name(l.atom), l.positive});
    k.insert(std::move(lits));
  }
  return k;
}

std::set<std::pair<std::set<std::string>, std::string>> horn_key(const Theory& t) {
  std::set<std::pair<std::set<std::string>, std::string>> k;
  for (const auto& r : t.horn) {
    std::set<std::string> body;
    for (AtomId a : r.body) body.insert(t.atoms.name(a));
    k.insert({std::move(body), t.atoms.name(r.head)});
  }
  return k;
}

std::set<std::tuple<int, int, std::set<std::string>>> select_key(const Theory& t) {
  std::set<std::tuple<int, int, std::set<std::string>>> k;
  for (const auto& s : t.selects) {
    std::set<std::string> scope;
    for (AtomId a : s.scope) scope.insert(t.atoms.name(a));
    k.insert({s.lower, s.upper, std::move(scope)});
  }
  return k;
}

}  // namespace

bool isomorphic(const Theory& a, const Theory& b) {
  return atom_key(a) == atom_key(b) &&
         clause_key(a, a.constraints) == clause_key(b, b.constraints) &&
         clause_key(a, a.posts) == clause_key(b, b.posts) && horn_key(a) == horn_key(b) &&
         select_key(a) == select_key(b);
}

}  // namespace dc
