#include "holeforge/program.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace holeforge {

namespace {

struct AsmErr {
  Diagnostic d;
};

[[noreturn]] void fail(const std::string& file, SourcePos pos,
                       const std::string& code, const std::string& msg) {
  throw AsmErr{Diagnostic{file, pos, code, msg}};
}

// Digit-run constructor names are integer literals; they never appear in a
// datatype declaration and get registered as nullary Int constructors on use.
bool isIntLiteralName(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

struct Assembler {
  std::string userFile;
  Context ctx;
  std::map<std::string, int> dataArity;
  std::map<std::string, int> ctorArity;
  std::set<std::string> bindingNames;
  std::set<std::string> holeGoals;
  std::set<std::string> literalsUsed;
  // ctx= option checks wait until every literal in the file is known.
  struct CtxCheck {
    std::string file;
    SourcePos pos;
    std::string name;
  };
  std::vector<CtxCheck> ctxChecks;
  std::vector<CompiledGoal> goals;

  explicit Assembler(std::string f) : userFile(std::move(f)) {}

  void checkTypeHeads(const std::string& file, SourcePos pos, const Type& t) {
    switch (t.node().index()) {
      case 0:
      case 1:
        return;
      case 2: {
        const auto& d = t.dataTy();
        auto it = dataArity.find(d.head);
        if (it == dataArity.end())
          fail(file, pos, "E210", "unknown type '" + d.head + "'");
        if (it->second != static_cast<int>(d.args.size()))
          fail(file, pos, "E211",
               "type '" + d.head + "' expects " + std::to_string(it->second) +
                   " argument(s), got " + std::to_string(d.args.size()));
        for (const auto& a : d.args) checkTypeHeads(file, pos, a);
        return;
      }
      default:
        checkTypeHeads(file, pos, t.arrowDom());
        checkTypeHeads(file, pos, t.arrowCod());
        return;
    }
  }

  void addDatatypes(const SourceFile& f, const std::string& file) {
    for (const auto& dd : f.datatypes) {
      if (dataArity.count(dd.name))
        fail(file, dd.pos, "E201", "duplicate datatype '" + dd.name + "'");
      std::set<std::string> params(dd.params.begin(), dd.params.end());
      if (params.size() != dd.params.size())
        fail(file, dd.pos, "E203",
             "duplicate type parameter in datatype '" + dd.name + "'");
      dataArity[dd.name] = static_cast<int>(dd.params.size());
      DataDecl decl{dd.name, static_cast<int>(dd.params.size()), {}};
      for (const auto& c : dd.ctors) decl.ctors.push_back(c.name);
      ctx.datatypes.push_back(std::move(decl));
    }
  }

  void validateCtors(const SourceFile& f, const std::string& file) {
    for (const auto& dd : f.datatypes) {
      for (const auto& c : dd.ctors) {
        if (ctorArity.count(c.name))
          fail(file, dd.pos, "E202", "duplicate constructor '" + c.name + "'");
        std::set<std::string> scope(c.quantified.begin(), c.quantified.end());
        auto checkScoped = [&](const Type& t) {
          std::set<std::string> free;
          collectRigidVars(t, free);
          for (const auto& v : free)
            if (!scope.count(v))
              fail(file, dd.pos, "E204",
                   "type variable '" + v + "' in constructor '" + c.name +
                       "' is not bound by the datatype head");
          checkTypeHeads(file, dd.pos, t);
        };
        for (const auto& t : c.argTypes) checkScoped(t);
        for (const auto& eq : c.bundled.items()) {
          checkScoped(eq.lhs);
          checkScoped(eq.rhs);
        }
        ctorArity[c.name] = static_cast<int>(c.argTypes.size());
        ctx.ctors.push_back(c);
      }
    }
  }

  // Expression bodies: every variable resolves, constructors exist, patterns
  // bind the right number of names, and a hole can only be the whole body.
  void walkBody(SourcePos pos, const Expr& e, std::vector<std::string>& scope,
                bool isWholeBody) {
    switch (e.node().index()) {
      case 0: {  // variable
        const auto& name = std::get<VarE>(e.node()).name;
        if (std::find(scope.rbegin(), scope.rend(), name) == scope.rend() &&
            !bindingNames.count(name))
          fail(userFile, pos, "E220", "unbound variable '" + name + "'");
        return;
      }
      case 1: {  // constructor
        const auto& name = std::get<CtorE>(e.node()).name;
        if (isIntLiteralName(name)) {
          literalsUsed.insert(name);
          return;
        }
        if (!ctorArity.count(name))
          fail(userFile, pos, "E104", "unknown constructor '" + name + "'");
        return;
      }
      case 2:  // polymorphic constant: never produced by the parser in bodies
        return;
      case 3:  // hole
        if (!isWholeBody)
          fail(userFile, pos, "E209",
               "a hole must be the entire right-hand side of its equation");
        return;
      case 4: {  // lambda
        const auto& l = std::get<LamE>(e.node());
        scope.push_back(l.binder);
        walkBody(pos, l.body, scope, false);
        scope.pop_back();
        return;
      }
      case 5: {  // application
        const auto& a = std::get<AppE>(e.node());
        walkBody(pos, a.fn, scope, false);
        walkBody(pos, a.arg, scope, false);
        return;
      }
      default: {  // case
        const auto& c = std::get<CaseE>(e.node());
        walkBody(pos, c.scrutinee, scope, false);
        for (const auto& br : c.branches) {
          auto it = ctorArity.find(br.ctor);
          if (it == ctorArity.end())
            fail(userFile, pos, "E104",
                 "unknown constructor '" + br.ctor + "' in pattern");
          if (it->second != static_cast<int>(br.binders.size()))
            fail(userFile, pos, "E216",
                 "pattern for '" + br.ctor + "' binds " +
                     std::to_string(br.binders.size()) + " name(s), expected " +
                     std::to_string(it->second));
          std::set<std::string> dup(br.binders.begin(), br.binders.end());
          if (dup.size() != br.binders.size())
            fail(userFile, pos, "E219",
                 "duplicate binder in pattern for '" + br.ctor + "'");
          for (const auto& b : br.binders) scope.push_back(b);
          walkBody(pos, br.body, scope, false);
          for (size_t i = 0; i < br.binders.size(); ++i) scope.pop_back();
        }
        return;
      }
    }
  }

  void walkExampleValue(SourcePos pos, const Value& v,
                        const std::set<std::string>& quantified) {
    switch (v.node().index()) {
      case 0: {  // polymorphic constant
        const auto& cname = std::get<PolyConstV>(v.node()).name;
        std::string tyvar;
        isPolyConstName(cname, &tyvar);
        if (!quantified.count(tyvar))
          fail(userFile, pos, "E105",
               "constant '" + cname + "' names type variable '" + tyvar +
                   "', which the signature does not quantify");
        return;
      }
      case 1: {  // constructor value
        const auto& c = std::get<CtorV>(v.node());
        int arity;
        if (isIntLiteralName(c.name)) {
          literalsUsed.insert(c.name);
          arity = 0;
        } else {
          auto it = ctorArity.find(c.name);
          if (it == ctorArity.end())
            fail(userFile, pos, "E104",
                 "unknown constructor '" + c.name + "' in example");
          arity = it->second;
        }
        if (arity != static_cast<int>(c.args.size()))
          fail(userFile, pos, "E110",
               "constructor '" + c.name + "' takes " + std::to_string(arity) +
                   " argument(s), example applies it to " +
                   std::to_string(c.args.size()));
        for (const auto& a : c.args) walkExampleValue(pos, a, quantified);
        return;
      }
      default:
        return;  // closures and friends cannot be written in source
    }
  }

  void walkExample(SourcePos pos, const Example& ex,
                   const std::set<std::string>& quantified) {
    switch (ex.node().index()) {
      case 0: {  // constant
        const auto& cname = std::get<ConstEx>(ex.node()).name;
        std::string tyvar;
        isPolyConstName(cname, &tyvar);
        if (!quantified.count(tyvar))
          fail(userFile, pos, "E105",
               "constant '" + cname + "' names type variable '" + tyvar +
                   "', which the signature does not quantify");
        return;
      }
      case 1: {  // constructor example
        const auto& c = std::get<CtorExNode>(ex.node());
        int arity;
        if (isIntLiteralName(c.name)) {
          literalsUsed.insert(c.name);
          arity = 0;
        } else {
          auto it = ctorArity.find(c.name);
          if (it == ctorArity.end())
            fail(userFile, pos, "E104",
                 "unknown constructor '" + c.name + "' in example");
          arity = it->second;
        }
        if (arity != static_cast<int>(c.args.size()))
          fail(userFile, pos, "E110",
               "constructor '" + c.name + "' takes " + std::to_string(arity) +
                   " argument(s), example applies it to " +
                   std::to_string(c.args.size()));
        for (const auto& a : c.args) walkExample(pos, a, quantified);
        return;
      }
      default: {  // input => output
        const auto& io = std::get<IOExNode>(ex.node());
        walkExampleValue(pos, io.input, quantified);
        walkExample(pos, io.output, quantified);
        return;
      }
    }
  }

  void addBindings(const SourceFile& f, const std::string& file) {
    for (const auto& b : f.bindings) {
      if (bindingNames.count(b.name))
        fail(file, b.pos, "E207", "duplicate binding '" + b.name + "'");
      checkTypeHeads(file, b.pos, b.signature);

      std::set<std::string> quantSet;
      collectRigidVars(b.signature, quantSet);
      std::vector<std::string> quantified(quantSet.begin(), quantSet.end());
      Scheme sig{quantified, {}, b.signature};

      int arity = static_cast<int>(peelArrows(b.signature).doms.size());
      bindingNames.insert(b.name);

      if (b.params) {
        if (static_cast<int>(b.params->size()) > arity)
          fail(file, b.pos, "E217",
               "equation for '" + b.name + "' has " +
                   std::to_string(b.params->size()) +
                   " parameter(s) but the signature only has " +
                   std::to_string(arity) + " arrow(s)");
        std::set<std::string> dup(b.params->begin(), b.params->end());
        if (dup.size() != b.params->size())
          fail(file, b.pos, "E219",
               "duplicate parameter in equation for '" + b.name + "'");

        bool isHole = std::holds_alternative<HoleE>(b.body->node());
        std::vector<std::string> scope = *b.params;
        walkBody(b.pos, *b.body, scope, isHole);

        if (isHole) holeGoals.insert(b.name);

        CompiledGoal g;
        g.name = b.name;
        g.sig = sig;
        g.params = *b.params;
        g.body = *b.body;
        g.isSynthGoal = isHole;
        g.examples = b.examples;
        g.options = b.options;
        g.pos = b.pos;
        goals.push_back(std::move(g));
      } else if (b.options.recArg || b.options.ctx || b.options.depth ||
                 b.options.maxCandidates) {
        fail(file, b.pos, "E109",
             "options attach to an equation, and '" + b.name +
                 "' has no equation");
      }

      if (b.examples) {
        for (const auto& [cname, tyvar] : b.examples->constants)
          if (!quantSet.count(tyvar))
            fail(file, b.pos, "E105",
                 "constant '" + cname + "' names type variable '" + tyvar +
                     "', which the signature of '" + b.name +
                     "' does not quantify");
        for (const auto& row : b.examples->rows)
          walkExample(b.pos, row, quantSet);
      }

      if (b.options.recArg && (*b.options.recArg < 0 || *b.options.recArg >= arity))
        fail(file, b.pos, "E205",
             "recArg=" + std::to_string(*b.options.recArg) +
                 " is out of range for '" + b.name + "' (signature has " +
                 std::to_string(arity) + " argument position(s))");
      if (b.options.ctx)
        for (const auto& n : *b.options.ctx)
          ctxChecks.push_back({file, b.pos, n});

      if (!b.params || !holeGoals.count(b.name))
        ctx.vars.emplace_back(b.name, sig);
    }
  }

  Program finish() {
    if (!literalsUsed.empty() && !dataArity.count("Int"))
      fail(userFile, SourcePos{}, "E210",
           "integer literals need a datatype named 'Int' in scope");
    std::vector<std::string> lits(literalsUsed.begin(), literalsUsed.end());
    std::sort(lits.begin(), lits.end(), [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (const auto& lit : lits) {
      ctorArity[lit] = 0;
      ctx.ctors.push_back(CtorSig{lit, {}, {}, {}, "Int"});
    }
    for (const auto& c : ctxChecks) {
      if (ctorArity.count(c.name)) continue;
      if (holeGoals.count(c.name))
        fail(c.file, c.pos, "E206",
             "'" + c.name + "' is a synthesis goal, not a context component");
      if (!bindingNames.count(c.name))
        fail(c.file, c.pos, "E206", "unknown context name '" + c.name + "'");
    }
    return Program{std::move(ctx), std::move(goals)};
  }
};

}  // namespace

std::variant<Program, Diagnostic> compileProgram(const SourceFile& prelude,
                                                 const SourceFile& user,
                                                 const std::string& filename) {
  try {
    Assembler a(filename);
    a.addDatatypes(prelude, "<prelude>");
    a.addDatatypes(user, filename);
    a.validateCtors(prelude, "<prelude>");
    a.validateCtors(user, filename);
    a.addBindings(prelude, "<prelude>");
    a.addBindings(user, filename);
    return a.finish();
  } catch (AsmErr& e) {
    return e.d;
  }
}

Expr bindingLambda(const CompiledGoal& g) {
  Expr e = g.body;
  for (auto it = g.params.rbegin(); it != g.params.rend(); ++it)
    e = Expr::lam(*it, e);
  return e;
}

}  // namespace holeforge
