// Call-by-value big-step evaluation with a fuel budget, plus the two
// example-side judgments built on it: does a candidate satisfy an example,
// and which worlds send a scrutinee to a given constructor.
//
// Recursion during search goes through PartialFnV: the function under
// synthesis is bound to the partial function its examples define, so a
// recursive call off the example trace is not an error, it is a Stuck
// outcome that degrades the verdict to unknown.
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "holeforge/ast.hpp"
#include "holeforge/types.hpp"

namespace holeforge {

inline constexpr int kDefaultFuel = 10000;

enum class StuckReason { UnknownRecursiveCall, UnmatchedCase, Unbound };

struct EvalOutcome {
  enum class Kind { Val, Stuck, OutOfFuel };
  Kind kind;
  Value value;         // meaningful iff kind == Val
  StuckReason reason;  // meaningful iff kind == Stuck

  static EvalOutcome val(Value v) {
    return {Kind::Val, std::move(v), StuckReason::Unbound};
  }
  static EvalOutcome stuck(StuckReason r) { return {Kind::Stuck, {}, r}; }
  static EvalOutcome outOfFuel() {
    return {Kind::OutOfFuel, {}, StuckReason::Unbound};
  }
  bool isVal() const { return kind == Kind::Val; }
};

// One line per beta step, in pretty-printer syntax; drives --trace-eval.
using EvalTrace = std::function<void(const std::string&)>;

// The context supplies constructor arities (for saturation and eta-expansion
// of bare constructors); fuel is a whole-evaluation budget decremented once
// per application.
EvalOutcome evalExpr(const Context& ctx, const ValueEnv& env, const Expr& e,
                     int fuel, const EvalTrace* trace = nullptr);

// Applies an already-evaluated function value; same fuel discipline.
EvalOutcome applyValue(const Context& ctx, const Value& fn, const Value& arg,
                       int fuel, const EvalTrace* trace = nullptr);

enum class Satisfaction { Satisfied, Contradicted, Unknown };

// Evaluate, then compare structurally, applying through IO examples. Stuck
// recursion or fuel exhaustion gives Unknown; a value mismatch gives
// Contradicted.
Satisfaction exampleSatisfies(const Context& ctx, const ValueEnv& env,
                              const Expr& e, const Example& x, int fuel);

// The value-against-example half, exposed because world goals pair an env
// with an example and candidates are compared after evaluation.
Satisfaction valueSatisfies(const Context& ctx, const Value& v,
                            const Example& x, int fuel);

// Worlds whose environment drives `e` to a value headed by `ctorName`.
// nullopt means undecided: some world got stuck or ran out of fuel, and the
// caller must abandon this scrutinee.
std::optional<WorldSet> filterWorlds(const Context& ctx, const WorldSet& w,
                                     const std::string& ctorName, const Expr& e,
                                     int fuel);

// The example-derived partial function for `recArg`-style recursion: each row
// with at least `arity` nested inputs and a closed output value becomes one
// table entry. Returns nullopt if no row qualifies.
std::optional<Value> partialFnFromExamples(const std::string& name,
                                           const TopExample& examples,
                                           int arity);

}  // namespace holeforge
