// Terms, runtime values, examples and example worlds.
#pragma once

#include <cassert>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "holeforge/types.hpp"

namespace holeforge {

struct ExprNode;

struct VarE {
  std::string name;
};
struct CtorE {
  std::string name;
};
struct PolyConstE {
  std::string name;
};
struct HoleE {
  int id;
};

class Expr {
 public:
  Expr() = default;

  static Expr var(std::string name);
  static Expr ctor(std::string name);
  static Expr polyConst(std::string name);
  static Expr hole(int id);
  static Expr lam(std::string binder, Expr body);
  static Expr app(Expr fn, Expr arg);
  static Expr caseOf(Expr scrutinee, std::vector<struct MatchBranch> branches);

  const ExprNode& node() const;
  bool valid() const { return p_ != nullptr; }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> p) : p_(std::move(p)) {}
  std::shared_ptr<const ExprNode> p_;
};

struct MatchBranch {
  std::string ctor;
  std::vector<std::string> binders;
  Expr body;
};

struct LamE {
  std::string binder;
  Expr body;
};
struct AppE {
  Expr fn;
  Expr arg;
};
struct CaseE {
  Expr scrutinee;
  std::vector<MatchBranch> branches;
};

struct ExprNode
    : std::variant<VarE, CtorE, PolyConstE, HoleE, LamE, AppE, CaseE> {
  using variant::variant;
};

inline const ExprNode& Expr::node() const {
  assert(p_);
  return *p_;
}

bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

// Number of AST nodes; used by candidate ranking. A case counts its own node,
// the scrutinee and every branch body (patterns are free).
int exprSize(const Expr& e);

bool containsHole(const Expr& e);
bool mentionsPolyConst(const Expr& e);

// Renames every binder, in pre-order, to b0, b1, ... The result is the
// alpha-canonical form: two expressions are alpha-equivalent iff their
// canonical forms are equal.
Expr alphaCanonical(const Expr& e);

// Flattens nested applications: f x y -> (f, [x, y]).
struct AppSpine {
  Expr head;
  std::vector<Expr> args;
};
AppSpine flattenApp(const Expr& e);

// ---------------------------------------------------------------------------
// Values

struct ValueNode;
class ValueEnv;

struct PolyConstV {
  std::string name;
};

class Value {
 public:
  Value() = default;

  static Value polyConst(std::string name);
  static Value ctor(std::string name, std::vector<Value> args);
  static Value closure(std::string binder, Expr body, ValueEnv captured);
  static Value partialFn(std::string name, int arity,
                         std::vector<std::pair<std::vector<Value>, Value>> rows,
                         std::vector<Value> applied);
  static Value fixpoint(std::string name, Expr expr, ValueEnv captured);

  const ValueNode& node() const;
  bool valid() const { return p_ != nullptr; }

 private:
  explicit Value(std::shared_ptr<const ValueNode> p) : p_(std::move(p)) {}
  std::shared_ptr<const ValueNode> p_;
};

// Immutable environment chain; extension is O(1) and shadows by walking the
// newest entries first. Lookup of an unbound name returns nullopt -- callers
// decide how loud to be about it.
class ValueEnv {
 public:
  ValueEnv() = default;

  ValueEnv extended(const std::string& name, Value v) const;
  std::optional<Value> lookup(const std::string& name) const;

 private:
  struct Node {
    std::string name;
    Value value;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

struct CtorV {
  std::string name;
  std::vector<Value> args;  // always fully saturated
};

struct ClosureV {
  std::string binder;
  Expr body;
  ValueEnv captured;
};

// The example-derived partial function standing in for a recursive call
// during search.
struct PartialFnV {
  std::string name;
  int arity = 0;
  // Each row maps a full argument tuple to the output value.
  std::vector<std::pair<std::vector<Value>, Value>> rows;
  std::vector<Value> applied;  // curried prefix collected so far
};

// A candidate bound to itself for final verdicts, and the shape every
// top-level equation takes in the global environment. `captured` holds the
// bindings visible at the definition site; applying extends it with the
// fixpoint under its own name and unrolls one step.
struct FixV {
  std::string name;
  Expr expr;
  ValueEnv captured;
};

struct ValueNode
    : std::variant<PolyConstV, CtorV, ClosureV, PartialFnV, FixV> {
  using variant::variant;
};

inline const ValueNode& Value::node() const {
  assert(p_);
  return *p_;
}

// Structural equality. Closures, partial functions and fixpoints never
// compare equal to anything (including themselves): comparing them answers
// "unknown", which the evaluator models by returning false here and letting
// exampleSatisfies treat function-typed comparisons specially.
bool valueEqual(const Value& a, const Value& b);
bool isComparableValue(const Value& v);  // constants and saturated ctors only

// ---------------------------------------------------------------------------
// Examples

struct ExampleNode;

struct ConstEx {
  std::string name;
};

class Example {
 public:
  Example() = default;

  static Example constant(std::string name);
  static Example ctor(std::string name, std::vector<Example> args);
  static Example io(Value input, Example output);

  const ExampleNode& node() const;
  bool valid() const { return p_ != nullptr; }

  bool isIO() const;

 private:
  explicit Example(std::shared_ptr<const ExampleNode> p) : p_(std::move(p)) {}
  std::shared_ptr<const ExampleNode> p_;
};

struct CtorExNode {
  std::string name;
  std::vector<Example> args;
};

struct IOExNode {
  Value input;
  Example output;
};

struct ExampleNode : std::variant<ConstEx, CtorExNode, IOExNode> {
  using variant::variant;
};

inline const ExampleNode& Example::node() const {
  assert(p_);
  return *p_;
}

bool exampleEqual(const Example& a, const Example& b);

// Converts a closed example (constants and constructors only) to a value.
std::optional<Value> exampleToValue(const Example& x);

// Top-level example attached to one synthesis goal: universally quantified
// constants plus one example per row.
struct TopExample {
  std::vector<std::pair<std::string, std::string>> constants;  // name -> tyvar
  std::vector<Example> rows;
};

// One example world: an environment for the binders introduced so far and the
// example the candidate must satisfy under it.
struct World {
  ValueEnv env;
  Example goal;
};

using WorldSet = std::vector<World>;

}  // namespace holeforge
