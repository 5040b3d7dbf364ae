// The command-line entry points behind `holeforge fill` and `holeforge
// bench`, factored out of main() so tests can drive them against string
// streams, plus the brute-force enumerator the equivalence tests use as an
// oracle.
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "holeforge/synth.hpp"

namespace holeforge {

struct FillFlags {
  std::optional<int> depth;          // application-nesting budget
  std::optional<int> caseDepth;      // case-split budget
  std::optional<int> maxCandidates;  // candidates kept per goal
  std::optional<int> fuel;           // evaluation fuel
  bool json = false;
  bool traceSynth = false;
  bool traceTypes = false;
  bool traceEval = false;
  bool parallelGoals = false;  // --seq wins when both are given
  bool seq = false;
  bool genScrutinees = false;
  // --prelude PATH; when absent the HOLEFORGE_PRELUDE variable is consulted,
  // then the built-in prelude.
  std::optional<std::string> preludePath;
};

// Parses and compiles `path`, checks every hole-free binding against its
// signature (verifying attached examples through the binding's fixpoint),
// then synthesizes every hole in file order and prints the hole's goal type
// followed by one `> (ok) ...` or `> (?) ...` line per candidate. Exit 0
// when every hole got at least one candidate, 1 on any diagnostic, 2 when
// some hole came back empty.
int runFill(const std::string& path, const FillFlags& flags, std::ostream& out,
            std::ostream& err);

struct BenchFlags {
  std::optional<std::string> csvPath;  // default: CSV on `out`
  std::optional<std::string> preludePath;
};

// Runs every goal of every `.syn` file in `corpusDir` (files that lack an
// `.expected` sidecar are skipped with a warning) twice: once with
// constraint-threaded generation and once against a context whose
// polymorphic components were pre-instantiated at every ground type up to
// depth 2. Writes one CSV row per goal and mode:
//   goal,mode,wall_ms,heads_examined,candidates_emitted,agreement
// heads_examined counts component instantiations tried as heads (for the
// baseline this includes the pre-enumeration itself); agreement compares the
// two modes' ok-candidate sets, or the full candidate sets when the goal has
// no example rows. Exit 0 unless the directory or an output file is
// unusable.
int runBench(const std::string& corpusDir, const BenchFlags& flags,
             std::ostream& out, std::ostream& err);

// Every beta-normal application/variable term with at most `maxSize` AST
// nodes that checks against `goal` under empty givens: heads are context
// variables, constructors and polymorphic constants; no lambdas are ever
// built. Deterministic order (size, then pretty form). Intended as a desk-
// scale oracle; cost grows steeply past maxSize 7.
std::vector<Expr> bruteForceEnumerate(const Context& ctx, const Type& goal,
                                      int maxSize);

// One pinned candidate from a corpus `.expected` sidecar. The file format is
// line-oriented: `= <goal> <ok|?>` opens an entry, and everything until the
// next `=` line is the candidate's alpha-canonical pretty form.
struct ExpectedEntry {
  std::string goal;
  bool ok = false;
  std::string expr;
};

std::vector<ExpectedEntry> parseExpectedSidecar(const std::string& text);

}  // namespace holeforge
