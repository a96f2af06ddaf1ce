#include "saten/formula.h"

#include <cctype>
#include <functional>
#include <sstream>

#include "saten/error.h"

namespace saten {

// {{{ Terms

Term Term::Variable(std::string name) {
  return Term(Kind::kVariable, std::move(name), {});
}

Term Term::Constant(std::string name) {
  return Term(Kind::kConstant, std::move(name), {});
}

Term Term::Function(std::string name, std::vector<Term> args) {
  return Term(Kind::kFunction, std::move(name), std::move(args));
}

bool Term::ground() const {
  if (kind_ == Kind::kVariable) return false;
  for (const Term& a : args_) {
    if (!a.ground()) return false;
  }
  return true;
}

bool Term::Contains(const std::string& variable) const {
  if (kind_ == Kind::kVariable) return name_ == variable;
  for (const Term& a : args_) {
    if (a.Contains(variable)) return true;
  }
  return false;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.name_.compare(b.name_); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args_.size(); ++i) {
    if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  os << t.name();
  if (t.kind() == Term::Kind::kFunction) {
    os << '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i > 0) os << ',';
      os << t.args()[i];
    }
    os << ')';
  }
  return os;
}

namespace {

std::size_t Mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t HashTerm(const Term& t) {
  std::size_t h = Mix(static_cast<std::size_t>(t.kind()),
                      std::hash<std::string>{}(t.name()));
  for (const Term& a : t.args()) h = Mix(h, HashTerm(a));
  return h;
}

}  // namespace

// }}}

// {{{ Formulae

Formula Formula::Make(Connective c, std::string name, std::vector<Term> args,
                      const Formula* lhs, const Formula* rhs) {
  auto node = std::make_shared<Node>();
  std::size_t h = Mix(static_cast<std::size_t>(c) + 1,
                      std::hash<std::string>{}(name));
  for (const Term& a : args) h = Mix(h, HashTerm(a));
  if (lhs) h = Mix(h, lhs->hash());
  if (rhs) h = Mix(h, rhs->hash());
  node->connective = c;
  node->name = std::move(name);
  node->args = std::move(args);
  if (lhs) node->lhs = std::make_unique<const Formula>(*lhs);
  if (rhs) node->rhs = std::make_unique<const Formula>(*rhs);
  node->hash = h;
  return Formula(std::move(node));
}

Formula Formula::Proposition(std::string name) {
  return Make(Connective::kProposition, std::move(name), {}, nullptr, nullptr);
}

Formula Formula::Predicate(std::string name, std::vector<Term> args) {
  return Make(Connective::kPredicate, std::move(name), std::move(args),
              nullptr, nullptr);
}

Formula Formula::Not(Formula f) {
  return Make(Connective::kNot, {}, {}, &f, nullptr);
}

Formula Formula::And(Formula lhs, Formula rhs) {
  return Make(Connective::kAnd, {}, {}, &lhs, &rhs);
}

Formula Formula::Or(Formula lhs, Formula rhs) {
  return Make(Connective::kOr, {}, {}, &lhs, &rhs);
}

Formula Formula::Implies(Formula lhs, Formula rhs) {
  return Make(Connective::kImplies, {}, {}, &lhs, &rhs);
}

Formula Formula::ForAll(std::string variable, Formula body) {
  return Make(Connective::kForAll, std::move(variable), {}, &body, nullptr);
}

Formula Formula::Exists(std::string variable, Formula body) {
  return Make(Connective::kExists, std::move(variable), {}, &body, nullptr);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Formula::Node& x = *a.node_;
  const Formula::Node& y = *b.node_;
  if (auto c = x.connective <=> y.connective; c != 0) return c;
  if (auto c = x.name.compare(y.name); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
  }
  if (x.lhs) {
    if (auto c = *x.lhs <=> *y.lhs; c != 0) return c;
  }
  if (x.rhs) {
    if (auto c = *x.rhs <=> *y.rhs; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Formula Complement(const Formula& f) {
  if (f.connective() == Connective::kNot) return f.operand();
  return Formula::Not(f);
}

// }}}

// {{{ Free variables

namespace {

void CollectTermVariables(const Term& t, const std::multiset<std::string>& bound,
                          std::set<std::string>* out) {
  if (t.is_variable()) {
    if (!bound.contains(t.name())) out->insert(t.name());
    return;
  }
  for (const Term& a : t.args()) CollectTermVariables(a, bound, out);
}

void CollectFree(const Formula& f, std::multiset<std::string>* bound,
                 std::set<std::string>* out) {
  switch (f.connective()) {
    case Connective::kProposition:
      return;
    case Connective::kPredicate:
      for (const Term& a : f.args()) CollectTermVariables(a, *bound, out);
      return;
    case Connective::kNot:
      CollectFree(f.operand(), bound, out);
      return;
    case Connective::kAnd:
    case Connective::kOr:
    case Connective::kImplies:
      CollectFree(f.lhs(), bound, out);
      CollectFree(f.rhs(), bound, out);
      return;
    case Connective::kForAll:
    case Connective::kExists: {
      auto it = bound->insert(f.name());
      CollectFree(f.operand(), bound, out);
      bound->erase(it);
      return;
    }
  }
}

}  // namespace

std::set<std::string> FreeVariables(const Formula& f) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  CollectFree(f, &bound, &out);
  return out;
}

// }}}

// {{{ Printing

namespace {

int Precedence(const Formula& f) {
  switch (f.connective()) {
    case Connective::kImplies: return 1;
    case Connective::kOr: return 2;
    case Connective::kAnd: return 3;
    default: return 4;
  }
}

void PrintTo(const Formula& f, std::string* out);

void PrintGrouped(const Formula& f, bool parens, std::string* out) {
  if (parens) out->push_back('(');
  PrintTo(f, out);
  if (parens) out->push_back(')');
}

void PrintTo(const Formula& f, std::string* out) {
  switch (f.connective()) {
    case Connective::kProposition:
      out->append(f.name());
      return;
    case Connective::kPredicate: {
      std::ostringstream os;
      os << f.name() << '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i > 0) os << ',';
        os << f.args()[i];
      }
      os << ')';
      out->append(os.str());
      return;
    }
    case Connective::kNot:
      out->push_back('-');
      PrintGrouped(f.operand(), Precedence(f.operand()) < 4, out);
      return;
    case Connective::kForAll:
    case Connective::kExists:
      out->push_back(f.connective() == Connective::kForAll ? '*' : '!');
      out->append(f.name());
      PrintGrouped(f.operand(), true, out);
      return;
    case Connective::kAnd:
      PrintGrouped(f.lhs(), Precedence(f.lhs()) < 3, out);
      out->push_back('&');
      PrintGrouped(f.rhs(), Precedence(f.rhs()) <= 3, out);
      return;
    case Connective::kOr:
      PrintGrouped(f.lhs(), Precedence(f.lhs()) < 2, out);
      out->push_back('|');
      PrintGrouped(f.rhs(), Precedence(f.rhs()) <= 2, out);
      return;
    case Connective::kImplies:
      PrintGrouped(f.lhs(), Precedence(f.lhs()) <= 1, out);
      out->append("->");
      PrintTo(f.rhs(), out);
      return;
  }
}

}  // namespace

std::string Print(const Formula& f) {
  std::string out;
  PrintTo(f, &out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  return os << Print(f);
}

// }}}

// {{{ Parsing

namespace {

bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool IsLower(char c) { return std::islower(static_cast<unsigned char>(c)); }
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Formula ParseAll() {
    Formula f = ParseImplication();
    if (pos_ != s_.size()) Fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void Fail(const std::string& what,
                         ErrorKind kind = ErrorKind::kSyntax) const {
    throw ParseError(kind, what + " at offset " + std::to_string(pos_), pos_);
  }

  bool AtEnd() const { return pos_ >= s_.size(); }
  char Peek() const { return AtEnd() ? '\0' : s_[pos_]; }
  bool PeekArrow() const {
    return pos_ + 1 < s_.size() && s_[pos_] == '-' && s_[pos_ + 1] == '>';
  }

  void Expect(char c) {
    if (Peek() != c) {
      Fail(AtEnd() ? "expected '" + std::string(1, c) + "' before end of input"
                   : "expected '" + std::string(1, c) + "'");
    }
    ++pos_;
  }

  Formula ParseImplication() {
    Formula lhs = ParseOr();
    if (PeekArrow()) {
      pos_ += 2;
      return Formula::Implies(std::move(lhs), ParseImplication());
    }
    return lhs;
  }

  Formula ParseOr() {
    Formula f = ParseAnd();
    while (Peek() == '|') {
      ++pos_;
      f = Formula::Or(std::move(f), ParseAnd());
    }
    return f;
  }

  Formula ParseAnd() {
    Formula f = ParseUnary();
    while (Peek() == '&') {
      ++pos_;
      f = Formula::And(std::move(f), ParseUnary());
    }
    return f;
  }

  Formula ParseUnary() {
    if (AtEnd()) Fail("unexpected end of input");
    if (PeekArrow()) Fail("unexpected '->'");
    char c = Peek();
    if (c == '-') {
      ++pos_;
      return Formula::Not(ParseUnary());
    }
    if (c == '*' || c == '!') {
      ++pos_;
      std::size_t at = pos_;
      std::string var = ReadIdentifier();
      if (!IsUpper(var[0])) {
        pos_ = at;
        Fail("quantified variable '" + var + "' must begin upper-case",
             ErrorKind::kCase);
      }
      Formula body = ParseUnary();
      return c == '*' ? Formula::ForAll(std::move(var), std::move(body))
                      : Formula::Exists(std::move(var), std::move(body));
    }
    if (c == '(') {
      ++pos_;
      Formula f = ParseImplication();
      Expect(')');
      return f;
    }
    return ParseAtom();
  }

  Formula ParseAtom() {
    std::size_t at = pos_;
    std::string name = ReadIdentifier();
    bool has_args = Peek() == '(';
    if (IsLower(name[0])) {
      if (has_args) {
        pos_ = at;
        Fail("predicate '" + name + "' must begin upper-case", ErrorKind::kCase);
      }
      return Formula::Proposition(std::move(name));
    }
    if (!has_args) {
      pos_ = at;
      Fail("'" + name + "' begins upper-case but has no argument list; "
           "propositions must begin lower-case", ErrorKind::kCase);
    }
    return Formula::Predicate(std::move(name), ParseArguments());
  }

  std::vector<Term> ParseArguments() {
    Expect('(');
    std::vector<Term> args;
    args.push_back(ParseTerm());
    while (Peek() == ',') {
      ++pos_;
      args.push_back(ParseTerm());
    }
    Expect(')');
    return args;
  }

  Term ParseTerm() {
    std::size_t at = pos_;
    std::string name = ReadIdentifier();
    bool has_args = Peek() == '(';
    if (IsUpper(name[0])) {
      if (has_args) {
        pos_ = at;
        Fail("function '" + name + "' must begin lower-case", ErrorKind::kCase);
      }
      return Term::Variable(std::move(name));
    }
    if (has_args) return Term::Function(std::move(name), ParseArguments());
    return Term::Constant(std::move(name));
  }

  std::string ReadIdentifier() {
    if (AtEnd()) Fail("expected identifier before end of input");
    if (!std::isalpha(static_cast<unsigned char>(Peek()))) {
      Fail("expected identifier, found '" + std::string(1, Peek()) + "'");
    }
    std::size_t start = pos_;
    while (!AtEnd() && IsIdentChar(Peek())) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula Parse(std::string_view text, const ParseOptions& options) {
  std::string trimmed;
  if (options.trim) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    }
    text = trimmed;
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      throw ParseError(ErrorKind::kWhitespace,
                       "input must not contain whitespace (offset " +
                           std::to_string(i) + ")", i);
    }
  }
  if (auto i = text.find("__"); i != std::string_view::npos) {
    throw ParseError(ErrorKind::kReservedName,
                     "'__' is reserved for system-generated symbols (offset " +
                         std::to_string(i) + ")", i);
  }
  if (text.empty()) throw ParseError(ErrorKind::kSyntax, "empty formula", 0);

  Formula f = Parser(text).ParseAll();

  std::set<std::string> free = FreeVariables(f);
  if (free.empty()) return f;
  switch (options.free_variables) {
    case FreeVariablePolicy::kKeep:
      return f;
    case FreeVariablePolicy::kUniversalClose:
      for (auto it = free.rbegin(); it != free.rend(); ++it) {
        f = Formula::ForAll(*it, std::move(f));
      }
      return f;
    case FreeVariablePolicy::kReject:
      break;
  }
  std::string names;
  for (const std::string& v : free) names += (names.empty() ? "" : ", ") + v;
  throw ParseError(ErrorKind::kFreeVariable,
                   "free variable(s) " + names + " not bound by * or !", 0);
}

// }}}

}  // namespace saten
