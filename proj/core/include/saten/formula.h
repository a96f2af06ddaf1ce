#ifndef SATEN_FORMULA_H_
#define SATEN_FORMULA_H_

#include <compare>
#include <cstddef>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace saten {

// A first-order term. Variables begin upper-case; constants and function
// symbols begin lower-case. System-generated names (renamed variables,
// skolem symbols) contain "__" and therefore never collide with user input.
class Term {
 public:
  enum class Kind { kVariable, kConstant, kFunction };

  Term() = default;

  static Term Variable(std::string name);
  static Term Constant(std::string name);
  static Term Function(std::string name, std::vector<Term> args);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_variable() const { return kind_ == Kind::kVariable; }
  bool ground() const;
  bool Contains(const std::string& variable) const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Term(Kind kind, std::string name, std::vector<Term> args)
      : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_ = Kind::kConstant;
  std::string name_;
  std::vector<Term> args_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

enum class Connective {
  kProposition,
  kPredicate,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kForAll,
  kExists,
};

// Immutable formula value. Copies share structure; equality and ordering
// are structural.
class Formula {
 public:
  static Formula Proposition(std::string name);
  static Formula Predicate(std::string name, std::vector<Term> args);
  static Formula Not(Formula f);
  static Formula And(Formula lhs, Formula rhs);
  static Formula Or(Formula lhs, Formula rhs);
  static Formula Implies(Formula lhs, Formula rhs);
  static Formula ForAll(std::string variable, Formula body);
  static Formula Exists(std::string variable, Formula body);

  Connective connective() const;
  // Proposition/predicate name, or the bound variable of a quantifier.
  const std::string& name() const;
  const std::vector<Term>& args() const;
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  std::size_t hash() const;

  bool is_atom() const {
    return connective() == Connective::kProposition ||
           connective() == Connective::kPredicate;
  }
  bool is_quantifier() const {
    return connective() == Connective::kForAll ||
           connective() == Connective::kExists;
  }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula Make(Connective c, std::string name, std::vector<Term> args,
                      const Formula* lhs, const Formula* rhs);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective connective;
  std::string name;
  std::vector<Term> args;
  std::unique_ptr<const Formula> lhs;
  std::unique_ptr<const Formula> rhs;
  std::size_t hash;
};

inline Connective Formula::connective() const { return node_->connective; }
inline const std::string& Formula::name() const { return node_->name; }
inline const std::vector<Term>& Formula::args() const { return node_->args; }
inline const Formula& Formula::operand() const { return *node_->lhs; }
inline const Formula& Formula::lhs() const { return *node_->lhs; }
inline const Formula& Formula::rhs() const { return *node_->rhs; }
inline std::size_t Formula::hash() const { return node_->hash; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// What to do with variables that no quantifier binds.
enum class FreeVariablePolicy {
  kReject,          // FreeVariableError
  kUniversalClose,  // wrap the formula in universal quantifiers
  kKeep,            // accept open formulae as-is
};

struct ParseOptions {
  // Strip all whitespace before parsing instead of raising WhitespaceError.
  bool trim = false;
  FreeVariablePolicy free_variables = FreeVariablePolicy::kReject;
};

// Parses the fully parenthesised surface syntax. Unparenthesised input is
// read with the precedence  - * !  >  &  >  |  >  ->  where & and | group to
// the left and -> groups to the right. Throws ParseError.
Formula Parse(std::string_view text, const ParseOptions& options = {});

// Canonical form: no spaces, minimal parentheses under the precedence above,
// quantifier bodies always parenthesised.
std::string Print(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

std::set<std::string> FreeVariables(const Formula& f);

// Complement used when the revision input is negated: -a for a, and a for -a.
Formula Complement(const Formula& f);

}  // namespace saten

#endif  // SATEN_FORMULA_H_
