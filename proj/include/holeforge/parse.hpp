// Surface syntax for .syn files.
//
// A file is a sequence of newline-terminated declarations:
//
//   data Maybe a = Nothing | Just a            -- plain ADT
//   data Exp a where { Lit :: a -> Exp a; … }  -- constrained constructors
//   data Int                                   -- opaque, literals only
//   name :: type                               -- signature
//   name p1 p2 = expr                          -- equation (body may be _)
//   examples { rows and options }              -- attaches to the equation above
//
// Newlines are suppressed inside ( ) and [ ]; inside { } they separate
// entries like ';'. There is no layout rule. '--' starts a line comment.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "holeforge/ast.hpp"
#include "holeforge/types.hpp"

namespace holeforge {

struct SourcePos {
  int line = 1;
  int col = 1;
};

struct Diagnostic {
  std::string file;
  SourcePos pos;
  std::string code;  // stable identifier, e.g. "E103"
  std::string message;

  std::string render() const;  // file:line:col: message [E103]
};

// Per-goal knobs from the examples block.
struct SynthOptions {
  std::optional<std::vector<std::string>> ctx;
  std::optional<int> recArg;
  std::optional<int> depth;
  std::optional<int> maxCandidates;
};

struct DataDef {
  std::string name;  // "[]" for the builtin list shape
  std::vector<std::string> params;
  std::vector<CtorSig> ctors;
  bool opaque = false;  // declared with no constructor list at all
  SourcePos pos;
};

// One surface binding: a signature, optionally an equation, optionally an
// examples block. A binding whose body is a hole is a synthesis goal; a
// hole-free body is checked against the signature; a bare signature brings
// the name into scope as an opaque context component.
struct Binding {
  std::string name;
  Type signature;
  std::optional<std::vector<std::string>> params;  // set iff an equation exists
  std::optional<Expr> body;
  std::optional<TopExample> examples;
  SynthOptions options;
  SourcePos pos;
};

struct SourceFile {
  std::vector<DataDef> datatypes;
  std::vector<Binding> bindings;  // file order
};

using ParseResult = std::variant<SourceFile, Diagnostic>;

// Stops at the first error. `filename` only labels diagnostics.
ParseResult parseSourceFile(const std::string& text, const std::string& filename);

// Canonical surface rendering; parsing it back yields an equal SourceFile.
std::string printSourceFile(const SourceFile& f);

// True for identifiers of the form tyvar+index ("a1", "xs2") which example
// blocks reserve for polymorphic constants. `tyvar` receives the stem.
bool isPolyConstName(const std::string& s, std::string* tyvar = nullptr);

}  // namespace holeforge
