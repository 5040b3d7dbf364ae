#include "holeforge/ast.hpp"

#include <map>

namespace holeforge {

Expr Expr::var(std::string name) {
  return Expr(std::make_shared<const ExprNode>(VarE{std::move(name)}));
}
Expr Expr::ctor(std::string name) {
  return Expr(std::make_shared<const ExprNode>(CtorE{std::move(name)}));
}
Expr Expr::polyConst(std::string name) {
  return Expr(std::make_shared<const ExprNode>(PolyConstE{std::move(name)}));
}
Expr Expr::hole(int id) {
  return Expr(std::make_shared<const ExprNode>(HoleE{id}));
}
Expr Expr::lam(std::string binder, Expr body) {
  return Expr(
      std::make_shared<const ExprNode>(LamE{std::move(binder), std::move(body)}));
}
Expr Expr::app(Expr fn, Expr arg) {
  return Expr(
      std::make_shared<const ExprNode>(AppE{std::move(fn), std::move(arg)}));
}
Expr Expr::caseOf(Expr scrutinee, std::vector<MatchBranch> branches) {
  return Expr(std::make_shared<const ExprNode>(
      CaseE{std::move(scrutinee), std::move(branches)}));
}

bool operator==(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return true;
  if (a.node().index() != b.node().index()) return false;
  switch (a.node().index()) {
    case 0:
      return std::get<VarE>(a.node()).name == std::get<VarE>(b.node()).name;
    case 1:
      return std::get<CtorE>(a.node()).name == std::get<CtorE>(b.node()).name;
    case 2:
      return std::get<PolyConstE>(a.node()).name ==
             std::get<PolyConstE>(b.node()).name;
    case 3:
      return std::get<HoleE>(a.node()).id == std::get<HoleE>(b.node()).id;
    case 4: {
      const LamE& x = std::get<LamE>(a.node());
      const LamE& y = std::get<LamE>(b.node());
      return x.binder == y.binder && x.body == y.body;
    }
    case 5: {
      const AppE& x = std::get<AppE>(a.node());
      const AppE& y = std::get<AppE>(b.node());
      return x.fn == y.fn && x.arg == y.arg;
    }
    default: {
      const CaseE& x = std::get<CaseE>(a.node());
      const CaseE& y = std::get<CaseE>(b.node());
      if (!(x.scrutinee == y.scrutinee)) return false;
      if (x.branches.size() != y.branches.size()) return false;
      for (size_t i = 0; i < x.branches.size(); ++i) {
        if (x.branches[i].ctor != y.branches[i].ctor) return false;
        if (x.branches[i].binders != y.branches[i].binders) return false;
        if (!(x.branches[i].body == y.branches[i].body)) return false;
      }
      return true;
    }
  }
}

int exprSize(const Expr& e) {
  switch (e.node().index()) {
    case 4:
      return 1 + exprSize(std::get<LamE>(e.node()).body);
    case 5: {
      const AppE& a = std::get<AppE>(e.node());
      return 1 + exprSize(a.fn) + exprSize(a.arg);
    }
    case 6: {
      const CaseE& c = std::get<CaseE>(e.node());
      int n = 1 + exprSize(c.scrutinee);
      for (const MatchBranch& b : c.branches) n += exprSize(b.body);
      return n;
    }
    default:
      return 1;
  }
}

bool containsHole(const Expr& e) {
  switch (e.node().index()) {
    case 3:
      return true;
    case 4:
      return containsHole(std::get<LamE>(e.node()).body);
    case 5: {
      const AppE& a = std::get<AppE>(e.node());
      return containsHole(a.fn) || containsHole(a.arg);
    }
    case 6: {
      const CaseE& c = std::get<CaseE>(e.node());
      if (containsHole(c.scrutinee)) return true;
      for (const MatchBranch& b : c.branches)
        if (containsHole(b.body)) return true;
      return false;
    }
    default:
      return false;
  }
}

bool mentionsPolyConst(const Expr& e) {
  switch (e.node().index()) {
    case 2:
      return true;
    case 4:
      return mentionsPolyConst(std::get<LamE>(e.node()).body);
    case 5: {
      const AppE& a = std::get<AppE>(e.node());
      return mentionsPolyConst(a.fn) || mentionsPolyConst(a.arg);
    }
    case 6: {
      const CaseE& c = std::get<CaseE>(e.node());
      if (mentionsPolyConst(c.scrutinee)) return true;
      for (const MatchBranch& b : c.branches)
        if (mentionsPolyConst(b.body)) return true;
      return false;
    }
    default:
      return false;
  }
}

namespace {

// Scoped renaming map; outer shadowed entries are restored on exit.
struct Renamer {
  std::map<std::string, std::vector<std::string>> scopes;
  int next = 0;

  std::string push(const std::string& name) {
    std::string canon = "b" + std::to_string(next++);
    scopes[name].push_back(canon);
    return canon;
  }
  void pop(const std::string& name) { scopes[name].pop_back(); }
  std::string resolve(const std::string& name) const {
    auto it = scopes.find(name);
    if (it == scopes.end() || it->second.empty()) return name;
    return it->second.back();
  }
};

Expr canonicalize(const Expr& e, Renamer& r) {
  switch (e.node().index()) {
    case 0:
      return Expr::var(r.resolve(std::get<VarE>(e.node()).name));
    case 4: {
      const LamE& l = std::get<LamE>(e.node());
      std::string canon = r.push(l.binder);
      Expr body = canonicalize(l.body, r);
      r.pop(l.binder);
      return Expr::lam(canon, body);
    }
    case 5: {
      const AppE& a = std::get<AppE>(e.node());
      Expr fn = canonicalize(a.fn, r);
      return Expr::app(fn, canonicalize(a.arg, r));
    }
    case 6: {
      const CaseE& c = std::get<CaseE>(e.node());
      Expr scrut = canonicalize(c.scrutinee, r);
      std::vector<MatchBranch> branches;
      branches.reserve(c.branches.size());
      for (const MatchBranch& b : c.branches) {
        std::vector<std::string> binders;
        binders.reserve(b.binders.size());
        for (const std::string& x : b.binders) binders.push_back(r.push(x));
        Expr body = canonicalize(b.body, r);
        for (auto it = b.binders.rbegin(); it != b.binders.rend(); ++it)
          r.pop(*it);
        branches.push_back(MatchBranch{b.ctor, std::move(binders), body});
      }
      return Expr::caseOf(scrut, std::move(branches));
    }
    default:
      return e;
  }
}

}  // namespace

Expr alphaCanonical(const Expr& e) {
  Renamer r;
  return canonicalize(e, r);
}

AppSpine flattenApp(const Expr& e) {
  AppSpine s;
  Expr cur = e;
  std::vector<Expr> rev;
  while (std::holds_alternative<AppE>(cur.node())) {
    const AppE& a = std::get<AppE>(cur.node());
    rev.push_back(a.arg);
    cur = a.fn;
  }
  s.head = cur;
  s.args.assign(rev.rbegin(), rev.rend());
  return s;
}

// ---------------------------------------------------------------------------

Value Value::polyConst(std::string name) {
  return Value(std::make_shared<const ValueNode>(PolyConstV{std::move(name)}));
}
Value Value::ctor(std::string name, std::vector<Value> args) {
  return Value(
      std::make_shared<const ValueNode>(CtorV{std::move(name), std::move(args)}));
}
Value Value::closure(std::string binder, Expr body, ValueEnv captured) {
  return Value(std::make_shared<const ValueNode>(
      ClosureV{std::move(binder), std::move(body), std::move(captured)}));
}
Value Value::partialFn(std::string name, int arity,
                       std::vector<std::pair<std::vector<Value>, Value>> rows,
                       std::vector<Value> applied) {
  return Value(std::make_shared<const ValueNode>(PartialFnV{
      std::move(name), arity, std::move(rows), std::move(applied)}));
}
Value Value::fixpoint(std::string name, Expr expr, ValueEnv captured) {
  return Value(std::make_shared<const ValueNode>(
      FixV{std::move(name), std::move(expr), std::move(captured)}));
}

ValueEnv ValueEnv::extended(const std::string& name, Value v) const {
  ValueEnv out;
  out.head_ = std::make_shared<const Node>(Node{name, std::move(v), head_});
  return out;
}

std::optional<Value> ValueEnv::lookup(const std::string& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->name == name) return n->value;
  return std::nullopt;
}

bool isComparableValue(const Value& v) {
  switch (v.node().index()) {
    case 0:
      return true;
    case 1:
      for (const Value& a : std::get<CtorV>(v.node()).args)
        if (!isComparableValue(a)) return false;
      return true;
    default:
      return false;
  }
}

bool valueEqual(const Value& a, const Value& b) {
  if (!isComparableValue(a) || !isComparableValue(b)) return false;
  if (a.node().index() != b.node().index()) return false;
  if (a.node().index() == 0)
    return std::get<PolyConstV>(a.node()).name ==
           std::get<PolyConstV>(b.node()).name;
  const CtorV& x = std::get<CtorV>(a.node());
  const CtorV& y = std::get<CtorV>(b.node());
  if (x.name != y.name || x.args.size() != y.args.size()) return false;
  for (size_t i = 0; i < x.args.size(); ++i)
    if (!valueEqual(x.args[i], y.args[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

Example Example::constant(std::string name) {
  return Example(std::make_shared<const ExampleNode>(ConstEx{std::move(name)}));
}
Example Example::ctor(std::string name, std::vector<Example> args) {
  return Example(std::make_shared<const ExampleNode>(
      CtorExNode{std::move(name), std::move(args)}));
}
Example Example::io(Value input, Example output) {
  return Example(std::make_shared<const ExampleNode>(
      IOExNode{std::move(input), std::move(output)}));
}

bool Example::isIO() const { return std::holds_alternative<IOExNode>(node()); }

bool exampleEqual(const Example& a, const Example& b) {
  if (a.node().index() != b.node().index()) return false;
  switch (a.node().index()) {
    case 0:
      return std::get<ConstEx>(a.node()).name == std::get<ConstEx>(b.node()).name;
    case 1: {
      const CtorExNode& x = std::get<CtorExNode>(a.node());
      const CtorExNode& y = std::get<CtorExNode>(b.node());
      if (x.name != y.name || x.args.size() != y.args.size()) return false;
      for (size_t i = 0; i < x.args.size(); ++i)
        if (!exampleEqual(x.args[i], y.args[i])) return false;
      return true;
    }
    default: {
      const IOExNode& x = std::get<IOExNode>(a.node());
      const IOExNode& y = std::get<IOExNode>(b.node());
      return valueEqual(x.input, y.input) && exampleEqual(x.output, y.output);
    }
  }
}

std::optional<Value> exampleToValue(const Example& x) {
  switch (x.node().index()) {
    case 0:
      return Value::polyConst(std::get<ConstEx>(x.node()).name);
    case 1: {
      const CtorExNode& c = std::get<CtorExNode>(x.node());
      std::vector<Value> args;
      args.reserve(c.args.size());
      for (const Example& a : c.args) {
        auto v = exampleToValue(a);
        if (!v) return std::nullopt;
        args.push_back(std::move(*v));
      }
      return Value::ctor(c.name, std::move(args));
    }
    default:
      return std::nullopt;  // io examples are not first-order values
  }
}

}  // namespace holeforge
