// Elaborates parsed files (prelude + user program) into a typing context and
// a list of compiled goals, running all the purely syntactic well-formedness
// checks on the way.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "holeforge/parse.hpp"

namespace holeforge {

struct CompiledGoal {
  std::string name;
  Scheme sig;  // quantified over the signature's free type variables, in order
  std::vector<std::string> params;
  Expr body;
  bool isSynthGoal = false;  // body is exactly a hole
  std::optional<TopExample> examples;
  SynthOptions options;
  SourcePos pos;
};

struct Program {
  Context ctx;  // datatypes, constructors (incl. used literals), context vars
  std::vector<CompiledGoal> goals;  // bindings with an equation, file order
};

// `filename` labels diagnostics for the user file; prelude problems are
// reported against "<prelude>".
std::variant<Program, Diagnostic> compileProgram(const SourceFile& prelude,
                                                 const SourceFile& user,
                                                 const std::string& filename);

// \p1 -> … -> pn -> body; the shape the checker and evaluator consume.
Expr bindingLambda(const CompiledGoal& g);

}  // namespace holeforge
