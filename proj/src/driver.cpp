// fill: compile a file, check the hole-free bindings, synthesize the holes,
// print candidates. bench: run each corpus goal under constraint-threaded
// generation and under a pre-instantiated baseline, and compare. Both are
// written against ostreams so the tests can capture every byte.
#include "holeforge/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <variant>

#include "holeforge/eval.hpp"
#include "holeforge/prelude.hpp"
#include "holeforge/pretty.hpp"
#include "holeforge/program.hpp"
#include "holeforge/typecheck.hpp"

namespace holeforge {

namespace {

std::string jsonEscape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string fmtMs(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

std::optional<std::string> readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prelude choice: the flag, then the HOLEFORGE_PRELUDE variable, then the
// built-in file.
bool loadPrelude(const std::optional<std::string>& flagPath, std::ostream& err,
                 SourceFile& out) {
  std::string path;
  if (flagPath)
    path = *flagPath;
  else if (const char* env = std::getenv("HOLEFORGE_PRELUDE"); env && *env)
    path = env;
  if (path.empty()) {
    out = preludeFile();
    return true;
  }
  auto text = readFile(path);
  if (!text) {
    err << "holeforge: cannot read prelude '" << path << "'\n";
    return false;
  }
  ParseResult r = parseSourceFile(*text, path);
  if (auto* d = std::get_if<Diagnostic>(&r)) {
    err << d->render() << "\n";
    return false;
  }
  out = std::get<SourceFile>(std::move(r));
  return true;
}

// The type of the hole in `f p1 .. pn = _`: the signature body with the
// parameters' arrows stripped.
Type holeType(const CompiledGoal& g) {
  Peeled pe = peelArrows(g.sig.body);
  Type t = pe.cod;
  for (size_t i = pe.doms.size(); i > g.params.size(); --i)
    t = Type::arrow(pe.doms[i - 1], t);
  return t;
}

// Strip the parameter lambdas for display when they actually lead the
// candidate; a case interleaved between parameters keeps the full form.
const Expr& displayBody(const CompiledGoal& g, const Expr& full) {
  const Expr* cur = &full;
  size_t n = 0;
  while (n < g.params.size()) {
    const auto* lam = std::get_if<LamE>(&cur->node());
    if (!lam) return full;
    cur = &lam->body;
    ++n;
  }
  return *cur;
}

struct GoalOutput {
  std::string text;
  std::string json;   // one object of the goals array, indented four spaces
  std::string trace;  // already-formatted stderr block
  bool noCandidates = false;
};

const char* satName(Satisfaction s) {
  switch (s) {
    case Satisfaction::Satisfied: return "satisfied";
    case Satisfaction::Contradicted: return "contradicted";
    default: return "unknown";
  }
}

// Replay one example row against a value, tracing every application; only
// the satisfaction check is authoritative, this exists for --trace-eval.
void traceRowEval(const Context& ctx, const Value& self, const Example& row,
                  int fuel, std::ostream& os) {
  EvalTrace sink = [&os](const std::string& line) {
    os << "[eval] " << line << "\n";
  };
  Value fn = self;
  const Example* x = &row;
  while (const auto* io = std::get_if<IOExNode>(&x->node())) {
    EvalOutcome o = applyValue(ctx, fn, io->input, fuel, &sink);
    if (!o.isVal()) {
      os << "[eval] (stuck or out of fuel)\n";
      return;
    }
    fn = o.value;
    x = &io->output;
  }
  os << "[eval] result " << printValue(fn) << "\n";
}

struct FillContext {
  const Program& p;
  const FillFlags& flags;
  SearchBudget budget;
  ValueEnv baseEnv;
  int fuel;
};

GoalOutput runGoal(const FillContext& fc, const CompiledGoal& g) {
  GoalOutput o;
  std::ostringstream traceBuf;

  SynthInputs in;
  in.paramHints = g.params;
  in.baseEnv = fc.baseEnv;
  in.fuel = fc.fuel;
  in.genScrutinees = fc.flags.genScrutinees;
  if (fc.flags.traceSynth)
    in.trace = [&traceBuf](const TraceEvent& ev) {
      traceBuf << "[synth] " << ev.rule;
      if (!ev.note.empty()) traceBuf << " " << ev.note;
      for (size_t i = 0; i < ev.added.size(); ++i)
        traceBuf << (i ? ", " : " : ") << printEq(ev.added[i]);
      traceBuf << " (" << ev.eqsBefore << " -> " << ev.eqsAfter << ")\n";
    };

  auto t0 = std::chrono::steady_clock::now();
  std::vector<Candidate> cs = synthesizeBinding(fc.p.ctx, g.name, g.sig,
                                                g.examples, g.options,
                                                fc.budget, in);
  double wallMs = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

  std::string hTy = printType(holeType(g));
  std::ostringstream text, json;
  text << "hole in " << g.name << " :: " << hTy << "\n";
  json << "    {\n      \"goal\": \"" << jsonEscape(g.name) << "\",\n"
       << "      \"hole_type\": \"" << jsonEscape(hTy) << "\",\n"
       << "      \"wall_ms\": " << fmtMs(wallMs) << ",\n"
       << "      \"candidates\": [";
  for (size_t i = 0; i < cs.size(); ++i) {
    const Candidate& c = cs[i];
    std::string mark = c.verdict == Verdict::Ok ? "(ok)" : "(?)";
    std::string pre = "> " + mark + " ";
    const Expr& shown = displayBody(g, c.expr);
    text << pre << printExpr(shown, static_cast<int>(pre.size())) << "\n";
    json << (i ? ",\n" : "\n")
         << "        {\"verdict\": \""
         << (c.verdict == Verdict::Ok ? "ok" : "?") << "\", \"expr\": \""
         << jsonEscape(printExpr(shown)) << "\", \"perRow\": [";
    for (size_t k = 0; k < c.perRow.size(); ++k)
      json << (k ? ", " : "") << "\"" << satName(c.perRow[k]) << "\"";
    json << "]}";
  }
  if (cs.empty()) {
    text << "> no candidates\n";
    o.noCandidates = true;
  }
  json << (cs.empty() ? "]" : "\n      ]") << "\n    }";

  o.text = text.str();
  o.json = json.str();
  o.trace = traceBuf.str();
  return o;
}

}  // namespace

int runFill(const std::string& path, const FillFlags& flags, std::ostream& out,
            std::ostream& err) {
  SourceFile prelude;
  if (!loadPrelude(flags.preludePath, err, prelude)) return 1;
  auto text = readFile(path);
  if (!text) {
    err << "holeforge: cannot read '" << path << "'\n";
    return 1;
  }
  ParseResult r = parseSourceFile(*text, path);
  if (auto* d = std::get_if<Diagnostic>(&r)) {
    err << d->render() << "\n";
    return 1;
  }
  auto compiled = compileProgram(prelude, std::get<SourceFile>(r), path);
  if (auto* d = std::get_if<Diagnostic>(&compiled)) {
    err << d->render() << "\n";
    return 1;
  }
  const Program& p = std::get<Program>(compiled);
  int fuel = flags.fuel.value_or(kDefaultFuel);

  // Hole-free bindings first: check each against its signature, verify any
  // attached examples through the binding's fixpoint, and keep the value so
  // later goals can call it.
  ValueEnv baseEnv;
  for (const CompiledGoal& g : p.goals) {
    if (g.isSynthGoal) continue;
    Expr lam = bindingLambda(g);
    if (flags.traceTypes) {
      FreshSupply supply;
      InferTrace sink = [&err](const Expr& e, const Type& t,
                               const ConstraintSet& c) {
        std::string head = printExpr(e);
        if (auto nl = head.find('\n'); nl != std::string::npos)
          head = head.substr(0, nl) + " ...";
        err << "[types] " << head << " : " << printType(t) << " | "
            << c.size() << " eq(s)\n";
      };
      inferExpr(p.ctx, lam, supply, &sink);
    }
    std::string why;
    if (!checkExpr({}, p.ctx, lam, g.sig.body, &why)) {
      err << path << ": type error in '" << g.name << "': " << why << "\n";
      return 1;
    }
    Value self = Value::fixpoint(g.name, lam, baseEnv);
    if (g.examples) {
      int rowNo = 0;
      for (const Example& row : g.examples->rows) {
        ++rowNo;
        if (flags.traceEval) traceRowEval(p.ctx, self, row, fuel, err);
        Satisfaction s = valueSatisfies(p.ctx, self, row, fuel);
        if (s == Satisfaction::Contradicted) {
          err << path << ": '" << g.name
              << "' does not satisfy its example row " << rowNo << "\n";
          return 1;
        }
        if (s == Satisfaction::Unknown)
          err << path << ": warning: example row " << rowNo << " of '"
              << g.name << "' is undecided\n";
      }
    }
    baseEnv = baseEnv.extended(g.name, self);
  }

  FillContext fc{p, flags, SearchBudget{}, baseEnv, fuel};
  if (flags.depth) fc.budget.maxAppDepth = *flags.depth;
  if (flags.caseDepth) fc.budget.maxCaseDepth = *flags.caseDepth;
  if (flags.maxCandidates) fc.budget.maxCandidates = *flags.maxCandidates;

  std::vector<const CompiledGoal*> holes;
  for (const CompiledGoal& g : p.goals)
    if (g.isSynthGoal) holes.push_back(&g);

  // Goals are independent, so --parallel-goals may fan them out; output is
  // buffered per goal either way and flushed in file order.
  std::vector<GoalOutput> results;
  if (flags.parallelGoals && !flags.seq && holes.size() > 1) {
    std::vector<std::future<GoalOutput>> futs;
    futs.reserve(holes.size());
    for (const CompiledGoal* g : holes)
      futs.push_back(std::async(std::launch::async,
                                [&fc, g] { return runGoal(fc, *g); }));
    for (auto& f : futs) results.push_back(f.get());
  } else {
    for (const CompiledGoal* g : holes) results.push_back(runGoal(fc, *g));
  }

  if (flags.json) {
    out << "{\n  \"file\": \"" << jsonEscape(path) << "\",\n  \"goals\": [";
    for (size_t i = 0; i < results.size(); ++i)
      out << (i ? ",\n" : "\n") << results[i].json;
    out << (results.empty() ? "]" : "\n  ]") << "\n}\n";
  } else {
    for (const GoalOutput& g : results) out << g.text;
  }
  bool anyEmpty = false;
  for (const GoalOutput& g : results) {
    err << g.trace;
    anyEmpty = anyEmpty || g.noCandidates;
  }
  return anyEmpty ? 2 : 0;
}

namespace {

// All ground datatype applications nested at most `depth` deep: depth 1 is
// the nullary datatypes, depth 2 applies every constructor of arity n to
// depth-1 types, and so on.
std::vector<Type> groundUniverse(const Context& ctx, int depth) {
  std::vector<Type> cur;
  for (const DataDecl& d : ctx.datatypes)
    if (d.arity == 0) cur.push_back(Type::data(d.name));
  for (int lvl = 2; lvl <= depth; ++lvl) {
    std::vector<Type> next = cur;
    for (const DataDecl& d : ctx.datatypes) {
      if (d.arity == 0) continue;
      std::vector<size_t> idx(d.arity, 0);
      if (cur.empty()) continue;
      while (true) {
        std::vector<Type> args;
        for (size_t i : idx) args.push_back(cur[i]);
        next.push_back(Type::data(d.name, std::move(args)));
        size_t i = 0;
        for (; i < idx.size(); ++i) {
          if (++idx[i] < cur.size()) break;
          idx[i] = 0;
        }
        if (i == idx.size()) break;
      }
    }
    std::set<std::string> seen;
    std::vector<Type> dedup;
    for (Type& t : next)
      if (seen.insert(printType(t)).second) dedup.push_back(std::move(t));
    cur = std::move(dedup);
  }
  std::sort(cur.begin(), cur.end(), [](const Type& a, const Type& b) {
    return printType(a) < printType(b);
  });
  return cur;
}

// Safety bound on instantiations of one component; far beyond what depth-2
// universes over the prelude produce.
constexpr size_t kMaxInstantiations = 4096;

// The naive mode's context: every polymorphic component is replaced by its
// ground instantiations over the depth-2 universe, all under the original
// name so candidate terms print identically across modes.
Context baselineContext(const Context& ctx, size_t& preEnum) {
  Context out = ctx;
  out.vars.clear();
  std::vector<Type> uni = groundUniverse(ctx, 2);
  for (const auto& [name, scheme] : ctx.vars) {
    if (scheme.quantified.empty() || uni.empty() ||
        !scheme.constraints.empty()) {
      out.vars.emplace_back(name, scheme);
      ++preEnum;
      continue;
    }
    std::vector<size_t> idx(scheme.quantified.size(), 0);
    size_t made = 0;
    while (made < kMaxInstantiations) {
      Subst s;
      for (size_t i = 0; i < idx.size(); ++i)
        s.bindRigid(scheme.quantified[i], uni[idx[i]]);
      out.vars.emplace_back(name, Scheme::mono(s.apply(scheme.body)));
      ++preEnum;
      ++made;
      size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < uni.size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
    }
  }
  return out;
}

std::set<std::string> candidateKeys(const std::vector<Candidate>& cs,
                                    bool okOnly) {
  std::set<std::string> keys;
  for (const Candidate& c : cs)
    if (!okOnly || c.verdict == Verdict::Ok)
      keys.insert(printExpr(alphaCanonical(c.expr)));
  return keys;
}

struct BenchRun {
  double wallMs = 0;
  size_t heads = 0;
  std::vector<Candidate> candidates;
};

BenchRun benchOne(const Context& ctx, const CompiledGoal& g,
                  const ValueEnv& baseEnv, size_t preEnum) {
  BenchRun run;
  run.heads = preEnum;
  SynthInputs in;
  in.paramHints = g.params;
  in.baseEnv = baseEnv;
  in.trace = [&run](const TraceEvent& ev) {
    if (ev.rule == "gen-var") ++run.heads;
  };
  auto t0 = std::chrono::steady_clock::now();
  run.candidates = synthesizeBinding(ctx, g.name, g.sig, g.examples,
                                     g.options, SearchBudget{}, in);
  run.wallMs = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
  return run;
}

}  // namespace

std::vector<ExpectedEntry> parseExpectedSidecar(const std::string& text) {
  std::vector<ExpectedEntry> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("= ", 0) != 0) continue;
    std::istringstream hdr(line.substr(2));
    ExpectedEntry e;
    std::string verdict;
    hdr >> e.goal >> verdict;
    e.ok = verdict == "ok";
    std::string body;
    while (in.peek() != '=' && in.peek() != EOF) {
      std::getline(in, line);
      body += line;
      body += '\n';
    }
    while (!body.empty() && body.back() == '\n') body.pop_back();
    e.expr = body;
    out.push_back(std::move(e));
  }
  return out;
}

int runBench(const std::string& corpusDir, const BenchFlags& flags,
             std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(corpusDir, ec)) {
    err << "holeforge: '" << corpusDir << "' is not a directory\n";
    return 1;
  }
  SourceFile prelude;
  if (!loadPrelude(flags.preludePath, err, prelude)) return 1;

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpusDir))
    if (entry.path().extension() == ".syn") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::ofstream csvFile;
  std::ostream* csv = &out;
  if (flags.csvPath) {
    csvFile.open(*flags.csvPath, std::ios::binary);
    if (!csvFile) {
      err << "holeforge: cannot write '" << *flags.csvPath << "'\n";
      return 1;
    }
    csv = &csvFile;
  }
  *csv << "goal,mode,wall_ms,heads_examined,candidates_emitted,agreement\n";

  for (const fs::path& file : files) {
    fs::path sidecar = file;
    sidecar.replace_extension(".expected");
    auto expectedText = readFile(sidecar.string());
    if (!expectedText) {
      err << "warning: no expected sidecar for " << file.string()
          << ", skipped\n";
      continue;
    }
    std::vector<ExpectedEntry> expected = parseExpectedSidecar(*expectedText);

    auto text = readFile(file.string());
    if (!text) {
      err << "warning: cannot read " << file.string() << ", skipped\n";
      continue;
    }
    ParseResult r = parseSourceFile(*text, file.string());
    if (auto* d = std::get_if<Diagnostic>(&r)) {
      err << "warning: " << d->render() << ", skipped\n";
      continue;
    }
    auto compiled = compileProgram(prelude, std::get<SourceFile>(r),
                                   file.string());
    if (auto* d = std::get_if<Diagnostic>(&compiled)) {
      err << "warning: " << d->render() << ", skipped\n";
      continue;
    }
    const Program& p = std::get<Program>(compiled);

    ValueEnv baseEnv;
    for (const CompiledGoal& g : p.goals)
      if (!g.isSynthGoal)
        baseEnv =
            baseEnv.extended(g.name, Value::fixpoint(g.name, bindingLambda(g),
                                                     baseEnv));

    size_t preEnum = 0;
    Context naive = baselineContext(p.ctx, preEnum);

    for (const CompiledGoal& g : p.goals) {
      if (!g.isSynthGoal) continue;
      BenchRun constraint = benchOne(p.ctx, g, baseEnv, 0);
      BenchRun baseline = benchOne(naive, g, baseEnv, preEnum);

      bool hasRows = g.examples && !g.examples->rows.empty();
      bool agree = candidateKeys(constraint.candidates, hasRows) ==
                   candidateKeys(baseline.candidates, hasRows);

      // The sidecar pins the constraint mode's ranked list; drift is worth a
      // warning but does not fail the run.
      std::vector<std::string> want;
      for (const ExpectedEntry& e : expected)
        if (e.goal == g.name) want.push_back(e.expr);
      if (!want.empty()) {
        std::vector<std::string> got;
        for (const Candidate& c : constraint.candidates)
          got.push_back(printExpr(alphaCanonical(c.expr)));
        if (got != want)
          err << "warning: " << file.string() << ": candidates for '"
              << g.name << "' differ from the expected sidecar\n";
      }

      const char* agreeStr = agree ? "true" : "false";
      *csv << g.name << ",constraint," << fmtMs(constraint.wallMs) << ","
           << constraint.heads << "," << constraint.candidates.size() << ","
           << agreeStr << "\n";
      *csv << g.name << ",baseline," << fmtMs(baseline.wallMs) << ","
           << baseline.heads << "," << baseline.candidates.size() << ","
           << agreeStr << "\n";
    }
  }
  return 0;
}

std::vector<Expr> bruteForceEnumerate(const Context& ctx, const Type& goal,
                                      int maxSize) {
  std::vector<Expr> atoms;
  for (const auto& [n, s] : ctx.vars) atoms.push_back(Expr::var(n));
  for (const CtorSig& c : ctx.ctors) atoms.push_back(Expr::ctor(c.name));
  for (const auto& [n, tv] : ctx.polyConsts) atoms.push_back(Expr::polyConst(n));
  if (maxSize < 1) return {};

  // bySize[n] holds every application spine with exactly n nodes; lambdas
  // are never built, so everything here is beta-normal by construction.
  std::vector<std::vector<Expr>> bySize(maxSize + 1);
  bySize[1] = atoms;
  for (int n = 2; n <= maxSize; ++n)
    for (int k = 1; k <= n - 2; ++k)
      for (const Expr& f : bySize[k])
        for (const Expr& a : bySize[n - 1 - k])
          bySize[n].push_back(Expr::app(f, a));

  std::vector<Expr> hits;
  std::set<std::string> seen;
  for (int n = 1; n <= maxSize; ++n)
    for (const Expr& e : bySize[n])
      if (checkExpr({}, ctx, e, goal) && seen.insert(printExpr(e)).second)
        hits.push_back(e);
  std::stable_sort(hits.begin(), hits.end(), [](const Expr& a, const Expr& b) {
    int sa = exprSize(a), sb = exprSize(b);
    if (sa != sb) return sa < sb;
    return printExpr(a) < printExpr(b);
  });
  return hits;
}

}  // namespace holeforge
