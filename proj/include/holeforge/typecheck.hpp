// Two checkers with different jobs:
//
//   inferExpr / inferBinding -- constraint-generating inference for hole-free
//     bodies: mint a unification variable wherever a type is unknown, collect
//     equalities, solve at the binding level and generalize the residue.
//
//   checkExpr -- the soundness oracle for synthesized terms. Syntax-directed
//     checking against a goal type under a set of given equalities; GADT match
//     branches extend the givens with the constructor's bundled constraints,
//     and a branch whose givens are inconsistent is unreachable, hence
//     vacuously fine.
//
// checkExample / checkTopExample type the example language against a goal
// scheme; polymorphic constants inhabit their declared rigid variable.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "holeforge/ast.hpp"
#include "holeforge/constraints.hpp"
#include "holeforge/types.hpp"

namespace holeforge {

struct TypeError {
  std::string message;
};

struct Inferred {
  Type type;
  ConstraintSet constraints;
  // Every hole's minted placeholder, in visit order. Solving `constraints`
  // and applying the unifier to the placeholder yields the hole's goal type.
  std::vector<std::pair<int, Type>> holeTypes;
};

// Called once per visited node with the type and the constraints collected so
// far; drives --trace-types.
using InferTrace = std::function<void(const Expr&, const Type&, const ConstraintSet&)>;

std::variant<Inferred, TypeError> inferExpr(const Context& ctx, const Expr& e,
                                            FreshSupply& supply,
                                            const InferTrace* trace = nullptr);

// Infers, solves, and generalizes residual unification variables to fresh
// rigid names (a, b, ...). The result has no bundled constraints.
std::variant<Scheme, TypeError> inferBinding(const Context& ctx, const Expr& body,
                                             FreshSupply& supply);

// True iff `e` checks against `ty` under given equalities `c`. On failure the
// optional `why` receives a one-line reason for diagnostics.
// Precondition: consistent(c).
bool checkExpr(const ConstraintSet& c, const Context& ctx, const Expr& e,
               const Type& ty, std::string* why = nullptr);

bool checkExample(const Context& ctx, const Example& x, const Type& ty);
bool checkValueAt(const Context& ctx, const Value& v, const Type& ty);

// Rows check at the scheme body with the declared constants in scope; every
// constant must name a quantified variable of the scheme.
bool checkTopExample(const Context& ctx, const TopExample& X, const Scheme& s);

}  // namespace holeforge
