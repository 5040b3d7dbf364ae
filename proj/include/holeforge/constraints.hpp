// Unification and constraint-set solving.
//
// Equalities enter a solved set through one of two doors:
//
//   assume  -- given equalities, the ones a GADT match puts in scope. These
//              may solve rigid type variables (a ~ Int binds a).
//   require -- wanted equalities, the ones generation mints while matching a
//              goal against an instantiated scheme. These solve unification
//              variables only; a rigid variable is a skolem constant here and
//              clashes with anything it is not already equated to by the
//              givens.
//
// The distinction is what makes `a ~ Int` usable inside a Plus branch while
// still refusing to conjure an Int where a caller-chosen `a` is demanded.
#pragma once

#include <optional>
#include <variant>

#include "holeforge/types.hpp"

namespace holeforge {

struct UnifyFailure {
  enum class Kind { Clash, Occurs };
  Kind kind;
  Eq offending;  // the resolved pair that failed
};

using UnifyResult = std::variant<Subst, UnifyFailure>;

// A consistent constraint set in solved form: the accumulated equalities plus
// a cached unifier. Extension re-unifies only the new equality against the
// cached solution; inconsistent extensions return nullopt and are never
// stored.
class Solved {
 public:
  Solved() = default;  // the empty, trivially consistent set

  static std::optional<Solved> given(const ConstraintSet& c);

  std::optional<Solved> assume(const Eq& e) const;
  std::optional<Solved> assumeAll(const ConstraintSet& c) const;
  std::optional<Solved> require(const Eq& e) const;
  std::optional<Solved> requireAll(const ConstraintSet& c) const;

  // Does the cached unifier already identify both sides?
  bool entails(const Eq& e) const;

  // Fully applies the cached solution. Unification variables whose class has
  // no ground representative resolve to the smallest id in the class.
  Type resolve(const Type& t) const;

  const ConstraintSet& set() const { return set_; }

  // Materialized idempotent substitution.
  Subst unifier() const;

 private:
  enum class Mode { Given, Wanted };

  std::variant<Solved, UnifyFailure> extended(const Eq& e, Mode mode) const;
  bool unite(const Type& a, const Type& b, Mode mode,
             std::optional<UnifyFailure>& fail);
  Type walk(const Type& t) const;  // follow root bindings only

  friend UnifyResult unify(const ConstraintSet& c);

  ConstraintSet set_;
  std::map<int, Type> ubind_;
  std::map<std::string, Type> rbind_;
};

// Solves the whole set, treating every equality as given. Returns the
// most-general idempotent unifier, or the first failure.
UnifyResult unify(const ConstraintSet& c);

bool consistent(const ConstraintSet& c);

// Precondition: consistent(c). Checks that unify(c) maps both sides of `e`
// to the same type.
bool entails(const ConstraintSet& c, const Eq& e);

// Precondition: consistent(c). Applies unify(c) to `t`.
Type solveFor(const ConstraintSet& c, const Type& t);

struct Instantiated {
  Type body;
  ConstraintSet bundled;
  Subst theta;  // quantified name -> fresh unification variable
};

// Replaces each quantified variable of the scheme with a fresh unification
// variable, in both the body and the bundled constraints.
Instantiated instantiate(const Scheme& s, FreshSupply& supply);

}  // namespace holeforge
