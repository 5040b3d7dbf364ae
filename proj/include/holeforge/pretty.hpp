// Canonical printer for types, terms, values, examples and constraints.
// Every piece of CLI output and every golden test goes through these, so the
// forms here are the forms of record: arrows associate right, application
// associates left, case branches go one per line inside braces.
#pragma once

#include <string>

#include "holeforge/ast.hpp"
#include "holeforge/types.hpp"

namespace holeforge {

std::string printType(const Type& t);
std::string printScheme(const Scheme& s);
std::string printCtorSig(const CtorSig& c);

// Multi-line for case expressions; `indent` is the column where the
// expression starts (continuation lines are indented relative to it).
std::string printExpr(const Expr& e, int indent = 0);

std::string printValue(const Value& v);
std::string printExample(const Example& x);

std::string printEq(const Eq& e);
std::string printConstraints(const ConstraintSet& c);

// Canonical display name for a constructor in prefix position.
std::string ctorDisplayName(const std::string& name);

}  // namespace holeforge
