#pragma once

// Propositional DC theories: constraint clauses and cardinality selects over
// guessable atoms (kind 'c'), Horn rules deriving closure atoms (kind 'h'),
// and post-constraint clauses checked against the Horn closure.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A candidate set mentions an atom that candidate sets may not contain.
struct InvalidAtomError : Error {
  using Error::Error;
};

// An input exceeds a hard size guard.
struct TooLargeError : Error {
  using Error::Error;
};

enum class AtomKind : std::uint8_t { Constraint, Horn };

using AtomId = std::int32_t;

struct Literal {
  AtomId atom = 0;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(AtomId a) { return {a, true}; }
inline Literal neg(AtomId a) { return {a, false}; }

// Interned atom names. Ids are dense indices assigned in insertion order;
// names are unique and each atom has exactly one kind.
class AtomTable {
 public:
  AtomId add(const std::string& name, AtomKind kind);
  std::optional<AtomId> find(const std::string& name) const;
  const std::string& name(AtomId id) const { return atoms_[id].name; }
  AtomKind kind(AtomId id) const { return atoms_[id].kind; }
  AtomId size() const { return static_cast<AtomId>(atoms_.size()); }
  bool valid(AtomId id) const { return id >= 0 && id < size(); }

 private:
  struct Entry {
    std::string name;
    AtomKind kind;
  };
  std::vector<Entry> atoms_;
  std::unordered_map<std::string, AtomId> index_;
};

struct Clause {
  enum class Role : std::uint8_t { Constraint, Post };
  Role role = Role::Constraint;
  std::vector<Literal> literals;  // sorted, no duplicates
  bool tautological = false;      // contains both a and -a
};

struct HornRule {
  std::vector<AtomId> body;  // sorted, no duplicates; may be empty
  AtomId head = 0;           // always kind Horn
};

// Between lower and upper atoms of scope must be true. upper is clamped to
// |scope| during construction; scope atoms all have kind Constraint.
struct SelectConstraint {
  int lower = 0;
  int upper = 0;
  std::vector<AtomId> scope;  // sorted, no duplicates
};

struct Theory {
  AtomTable atoms;
  std::vector<Clause> constraints;  // role Constraint
  std::vector<SelectConstraint> selects;
  std::vector<HornRule> horn;
  std::vector<Clause> posts;  // role Post

  // Atoms that actually appear in some clause, select, rule or post, split
  // by kind and sorted by id. Candidate sets range over constraint_atoms.
  std::vector<AtomId> constraint_atoms;
  std::vector<AtomId> horn_atoms;

  bool appears(AtomId a) const { return appearing_[a] != 0; }

 private:
  friend class TheoryBuilder;
  std::vector<char> appearing_;
};

// Constructs theories while enforcing the structural invariants: kind checks,
// literal/body canonicalization, tautology flagging, duplicate removal, and
// select normalization. A select whose lower bound exceeds its scope size is
// unsatisfiable and is recorded as an empty constraint clause instead.
class TheoryBuilder {
 public:
  AtomId add_atom(const std::string& name, AtomKind kind);
  // Returns the existing id if present; the kind must agree.
  AtomId intern_atom(const std::string& name, AtomKind kind);
  std::optional<AtomId> find_atom(const std::string& name) const { return atoms_.find(name); }
  const AtomTable& atoms() const { return atoms_; }

  void add_constraint_clause(std::vector<Literal> literals);
  void add_post_clause(std::vector<Literal> literals);
  void add_horn_rule(std::vector<AtomId> body, AtomId head);

  enum class SelectOutcome { Added, Duplicate, NeverSatisfiable };
  SelectOutcome add_select(int lower, int upper, std::vector<AtomId> scope);

  Theory build();

 private:
  void check_atom(AtomId a) const;
  void add_clause(Clause::Role role, std::vector<Literal> literals);

  AtomTable atoms_;
  std::vector<Clause> constraints_;
  std::vector<SelectConstraint> selects_;
  std::vector<HornRule> horn_;
  std::vector<Clause> posts_;
  std::set<std::vector<Literal>> constraint_keys_;
  std::set<std::vector<Literal>> post_keys_;
  std::set<std::pair<std::vector<AtomId>, AtomId>> horn_keys_;
  std::set<std::tuple<int, int, std::vector<AtomId>>> select_keys_;
};

// A subset of the theory's appearing constraint atoms, kept sorted.
struct CandidateSet {
  std::vector<AtomId> trues;

  static CandidateSet from(std::vector<AtomId> atoms);
  bool contains(AtomId a) const;

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
  friend auto operator<=>(const CandidateSet&, const CandidateSet&) = default;
};

// closure = trues ∪ derived; derived atoms all have kind Horn.
struct ClosureResult {
  std::vector<AtomId> closure;
  std::vector<AtomId> derived;
};

struct AnswerSetVerdict {
  bool yes = false;
  ClosureResult closure;  // filled when yes
  std::string reason;     // first violated constraint when not
  explicit operator bool() const { return yes; }
};

// Least set containing seed and closed under the rules. Counter-based
// forward chaining, linear in total rule size. atom_count bounds the id
// space; returns sorted ids.
std::vector<AtomId> least_model(std::span<const HornRule> rules,
                                std::span<const AtomId> seed, AtomId atom_count);

// True iff every constraint clause has a literal true under m (atoms outside
// m are false) and every select count is within bounds.
bool check_pre_constraints(const CandidateSet& m, const Theory& theory);

// Full answer-set check: pre-constraints plus Horn closure against the post
// clauses. Throws InvalidAtomError if m mentions a Horn-kind atom.
AnswerSetVerdict is_answer_set(const Theory& theory, const CandidateSet& m);

// Exhaustive oracle: enumerates all subsets of the appearing constraint
// atoms in counting order (lowest atom id = least significant bit) and keeps
// the answer sets, truncated at cap. Throws TooLargeError beyond 25 atoms.
std::vector<CandidateSet> brute_force_answer_sets(const Theory& theory,
                                                  std::size_t cap = SIZE_MAX);

inline constexpr AtomId kBruteForceAtomLimit = 25;

// Structural equality modulo atom ids: same name/kind table contents and the
// same clause/rule/select families when literals are keyed by atom name.
bool isomorphic(const Theory& a, const Theory& b);

}  // namespace dc
