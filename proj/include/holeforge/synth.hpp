// The synthesizer: example refinement over worlds (refine-*) and
// constraint-threaded term generation (gen-*), packaged as a deterministic
// bounded search that returns ranked candidates.
//
// Refinement decomposes the goal type and the example worlds together:
// lambdas consume input/output examples, constructor goals split worlds
// argument-wise, case splits distribute worlds across branches by evaluating
// the scrutinee. Generation enumerates variables and applications while
// threading a growing constraint set; a speculative choice survives only if
// the set stays consistent. GADT matches feed their bundled equalities into
// the branch as givens, which is what lets a branch body inhabit a rigid
// type the outside context could not.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holeforge/ast.hpp"
#include "holeforge/constraints.hpp"
#include "holeforge/eval.hpp"
#include "holeforge/parse.hpp"
#include "holeforge/types.hpp"

namespace holeforge {

// One applied search rule. `added` lists the equalities the step introduced
// (empty for rules that only decompose); the before/after sizes expose the
// growth of the constraint set along the path.
struct TraceEvent {
  std::string rule;  // refine-gadt-lam, gen-var, ...
  std::string note;  // component, constructor or binder involved
  std::vector<Eq> added;
  size_t eqsBefore = 0;
  size_t eqsAfter = 0;
};

using TraceSink = std::function<void(const TraceEvent&)>;

// Generation state threaded through gen-*: the constraints accumulated so
// far (always consistent; inconsistent extensions are pruned at creation and
// never stored), the fresh-variable supply, and the remaining
// application-nesting budget.
struct GenState {
  Solved constraints;
  FreshSupply supply;
  int appDepth = 0;
};

struct SearchBudget {
  int maxAppDepth = 3;
  int maxCaseDepth = 2;
  int maxCandidates = 10;
};

enum class Verdict { Ok, Unknown };

// A synthesized program for one goal. `expr` is the whole binding body
// including the leading parameter lambdas; display code usually peels those.
// verdict is Ok iff there is at least one example row and every row is
// satisfied; candidates contradicting any row are never emitted.
struct Candidate {
  Expr expr;
  Verdict verdict = Verdict::Unknown;
  std::vector<Satisfaction> perRow;
};

// Everything synthesizeBinding needs beyond the goal itself. paramHints are
// the binding's declared parameter names, consumed in order by the lambda
// rule so output binders match the source. baseEnv supplies values for
// hole-free top-level bindings; it seeds every world and the final fixpoint
// used for verdicts.
struct SynthInputs {
  std::vector<std::string> paramHints;
  ValueEnv baseEnv;
  int fuel = kDefaultFuel;
  bool genScrutinees = false;  // also case over generated scrutinee terms
  TraceSink trace;
};

// Runs the whole pipeline for one binding: strips the quantifier (quantified
// variables stay rigid), builds one world per example row, binds the
// recursive partial function when opts.recArg is given (the goal name then
// also enters the generation context at its declared scheme), restricts the
// generation components to opts.ctx plus goal arguments when the option is
// present, refines with empty constraints, deduplicates up to
// alpha-equivalence, ranks (ok first, then smaller, then lexicographic) and
// cuts the list at the candidate budget. Per-goal depth/maxCandidates
// options override the budget.
std::vector<Candidate> synthesizeBinding(const Context& ctx,
                                         const std::string& name,
                                         const Scheme& s,
                                         const std::optional<TopExample>& X,
                                         const SynthOptions& opts,
                                         const SearchBudget& budget,
                                         const SynthInputs& in = {});

// Refinement at one goal/world-set, starting from the given state. Exposed
// for tests; synthesizeBinding adds the recursion and naming bookkeeping on
// top. Variables of the context with a monomorphic datatype-headed type are
// treated as eligible scrutinees.
std::vector<Expr> refine(const GenState& st, const Context& ctx,
                         const Type& goal, const WorldSet& w,
                         const SearchBudget& budget, const SynthInputs& in = {});

// One constructor arm of a case over `scrutinee` (which must be a variable).
// tyArgs are the scrutinee datatype's type arguments; they instantiate the
// constructor signature positionally. The constructor's bundled equalities
// enter the branch as givens: an inconsistent extension marks the branch
// unreachable and yields the canonical escape body instead of a search.
// Returns one MatchBranch per synthesized body.
std::vector<MatchBranch> refineMatch(const GenState& st, const Context& ctx,
                                     const Expr& scrutinee,
                                     const std::vector<Type>& tyArgs,
                                     const std::string& ctorName,
                                     const Type& goal, const WorldSet& w,
                                     const SearchBudget& budget,
                                     const SynthInputs& in = {});

// Term generation: variables (gen-var) and applications (gen-app), threading
// constraints. Goals are kept in solved-canonical form; every emitted state
// extends the input state's constraint set (monotonicity). The remaining
// nesting budget lives in st.appDepth.
std::vector<std::pair<Expr, GenState>> generate(const GenState& st,
                                                const Context& ctx,
                                                const Type& goal,
                                                const TraceSink& trace = {});

}  // namespace holeforge
