#include "holeforge/typecheck.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <string>
#include <vector>

#include "holeforge/pretty.hpp"

namespace holeforge {

namespace {

struct InferErrEx {
  TypeError err;
};

[[noreturn]] void bail(std::string m) { throw InferErrEx{TypeError{std::move(m)}}; }

// Positional substitution of a constructor's quantified variables by the
// scrutinee's (or goal's) type arguments.
Subst positional(const std::vector<std::string>& quantified,
                 const std::vector<Type>& args) {
  assert(quantified.size() == args.size());
  Subst theta;
  for (size_t i = 0; i < quantified.size(); ++i)
    theta.bindRigid(quantified[i], args[i]);
  return theta;
}

struct Inferencer {
  FreshSupply& supply;
  const InferTrace* trace;
  ConstraintSet c;
  std::vector<std::pair<int, Type>> holes;

  Type go(const Context& ctx, const Expr& e) {
    Type t = goNode(ctx, e);
    if (trace && *trace) (*trace)(e, t, c);
    return t;
  }

  Type goNode(const Context& ctx, const Expr& e) {
    switch (e.node().index()) {
      case 0: {  // variable: instantiate its scheme with fresh placeholders
        const auto& name = std::get<VarE>(e.node()).name;
        const Scheme* s = ctx.lookupVar(name);
        if (!s) bail("unbound variable '" + name + "'");
        Instantiated inst = instantiate(*s, supply);
        c = c.unionWith(inst.bundled);
        return inst.body;
      }
      case 1: {  // constructor: same, with its bundled equalities as wanteds
        const auto& name = std::get<CtorE>(e.node()).name;
        const CtorSig* sig = ctx.lookupCtor(name);
        if (!sig) bail("unknown constructor '" + name + "'");
        Instantiated inst = instantiate(sig->scheme(), supply);
        c = c.unionWith(inst.bundled);
        return inst.body;
      }
      case 2: {  // polymorphic constant: inhabits its declared rigid variable
        const auto& name = std::get<PolyConstE>(e.node()).name;
        const std::string* tyvar = ctx.lookupPolyConst(name);
        if (!tyvar) bail("unknown constant '" + name + "'");
        return Type::rigid(*tyvar);
      }
      case 3: {  // hole: a fresh placeholder, remembered for reporting
        Type a = supply.freshUnifVar();
        holes.emplace_back(std::get<HoleE>(e.node()).id, a);
        return a;
      }
      case 4: {  // lambda
        const auto& l = std::get<LamE>(e.node());
        Type a = supply.freshUnifVar();
        Type body = go(ctx.withVar(l.binder, Scheme::mono(a)), l.body);
        return Type::arrow(a, body);
      }
      case 5: {  // application: t_fn ~ t_arg -> fresh
        const auto& app = std::get<AppE>(e.node());
        Type fn = go(ctx, app.fn);
        Type arg = go(ctx, app.arg);
        Type res = supply.freshUnifVar();
        c = c.withEq(fn, Type::arrow(arg, res));
        return res;
      }
      default: {  // case
        const auto& ce = std::get<CaseE>(e.node());
        Type scrTy = go(ctx, ce.scrutinee);
        assert(!ce.branches.empty());

        const CtorSig* first = ctx.lookupCtor(ce.branches[0].ctor);
        if (!first) bail("unknown constructor '" + ce.branches[0].ctor + "'");
        const std::string& head = first->resultHead;
        const DataDecl* decl = ctx.lookupData(head);
        if (!decl) bail("unknown datatype '" + head + "'");

        std::vector<Type> args;
        for (int i = 0; i < decl->arity; ++i) args.push_back(supply.freshUnifVar());
        c = c.withEq(scrTy, Type::data(head, args));

        Type res = supply.freshUnifVar();
        for (const auto& br : ce.branches) {
          const CtorSig* sig = ctx.lookupCtor(br.ctor);
          if (!sig) bail("unknown constructor '" + br.ctor + "'");
          if (sig->resultHead != head)
            bail("branch constructor '" + br.ctor + "' does not belong to '" +
                 head + "'");
          // Bundled GADT equalities are deliberately not inferred from;
          // bodies that need them only pass the declarative checker.
          Subst theta = positional(sig->quantified, args);
          Context inner = ctx;
          for (size_t k = 0; k < br.binders.size(); ++k)
            inner = inner.withVar(br.binders[k],
                                  Scheme::mono(theta.apply(sig->argTypes[k])));
          Type branchTy = go(inner, br.body);
          c = c.withEq(res, branchTy);
        }
        return res;
      }
    }
  }
};

}  // namespace

std::variant<Inferred, TypeError> inferExpr(const Context& ctx, const Expr& e,
                                            FreshSupply& supply,
                                            const InferTrace* trace) {
  Inferencer inf{supply, trace, {}, {}};
  try {
    Type t = inf.go(ctx, e);
    return Inferred{t, inf.c, std::move(inf.holes)};
  } catch (InferErrEx& ex) {
    return ex.err;
  }
}

namespace {

// Pre-order, first-appearance listing of a type's unification variables.
void orderedUnifVars(const Type& t, std::vector<int>& out) {
  switch (t.node().index()) {
    case 0: {
      int id = std::get<UnifVar>(t.node()).id;
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
      return;
    }
    case 1:
      return;
    case 2:
      for (const auto& a : std::get<DataTy>(t.node()).args) orderedUnifVars(a, out);
      return;
    default:
      orderedUnifVars(t.arrowDom(), out);
      orderedUnifVars(t.arrowCod(), out);
      return;
  }
}

std::string nthRigidName(int n) {
  if (n < 26) return std::string(1, static_cast<char>('a' + n));
  return "t" + std::to_string(n - 25);
}

}  // namespace

std::variant<Scheme, TypeError> inferBinding(const Context& ctx, const Expr& body,
                                             FreshSupply& supply) {
  auto inferred = inferExpr(ctx, body, supply);
  if (auto* err = std::get_if<TypeError>(&inferred)) return *err;
  const Inferred& inf = std::get<Inferred>(inferred);

  UnifyResult solved = unify(inf.constraints);
  if (auto* f = std::get_if<UnifyFailure>(&solved)) {
    if (f->kind == UnifyFailure::Kind::Occurs)
      return TypeError{"cannot construct the infinite type " +
                       printType(f->offending.lhs) + " ~ " +
                       printType(f->offending.rhs)};
    return TypeError{"cannot unify " + printType(f->offending.lhs) + " with " +
                     printType(f->offending.rhs)};
  }
  Type t = std::get<Subst>(solved).apply(inf.type);

  // Residual placeholders generalize to fresh rigid names.
  std::vector<int> residual;
  orderedUnifVars(t, residual);
  std::set<std::string> taken = freeRigidVars(t);
  Subst gen;
  std::vector<std::string> quantified;
  int n = 0;
  for (int id : residual) {
    std::string name;
    do name = nthRigidName(n++);
    while (taken.count(name));
    quantified.push_back(name);
    gen.bindUnif(id, Type::rigid(name));
  }
  return Scheme{std::move(quantified), {}, gen.apply(t)};
}

// ---------------------------------------------------------------------------
// Declarative checker

namespace {

struct Checker {
  FreshSupply supply;
  std::string* why = nullptr;

  bool no(const std::string& m) {
    if (why && why->empty()) *why = m;
    return false;
  }

  // `s` threads wanted solving through sibling checks so an application
  // spine's instantiation variables stay consistent across arguments.
  bool check(Solved& s, const Context& ctx, const Expr& e, const Type& ty) {
    switch (e.node().index()) {
      case 0: {
        const auto& name = std::get<VarE>(e.node()).name;
        const Scheme* sch = ctx.lookupVar(name);
        if (!sch) return no("unbound variable '" + name + "'");
        return fits(s, name, *sch, ty);
      }
      case 1: {
        const auto& name = std::get<CtorE>(e.node()).name;
        const CtorSig* sig = ctx.lookupCtor(name);
        if (!sig) return no("unknown constructor '" + name + "'");
        return fits(s, name, sig->scheme(), ty);
      }
      case 2: {
        const auto& name = std::get<PolyConstE>(e.node()).name;
        const std::string* tyvar = ctx.lookupPolyConst(name);
        if (!tyvar) return no("unknown constant '" + name + "'");
        auto next = s.require(Eq{Type::rigid(*tyvar), ty});
        if (!next) return no("constant '" + name + "' does not have type " +
                             printType(s.resolve(ty)));
        s = *next;
        return true;
      }
      case 3:
        return no("incomplete term (hole)");
      case 4: {
        const auto& l = std::get<LamE>(e.node());
        Type dom = supply.freshUnifVar();
        Type cod = supply.freshUnifVar();
        auto next = s.require(Eq{ty, Type::arrow(dom, cod)});
        if (!next)
          return no("lambda checked against non-function type " +
                    printType(s.resolve(ty)));
        s = *next;
        return check(s, ctx.withVar(l.binder, Scheme::mono(dom)), l.body, cod);
      }
      case 5: {
        const auto& app = std::get<AppE>(e.node());
        Type dom = supply.freshUnifVar();
        if (!check(s, ctx, app.fn, Type::arrow(dom, ty))) return false;
        return check(s, ctx, app.arg, dom);
      }
      default: {
        const auto& ce = std::get<CaseE>(e.node());
        const CtorSig* first = ctx.lookupCtor(ce.branches[0].ctor);
        if (!first)
          return no("unknown constructor '" + ce.branches[0].ctor + "'");
        const std::string& head = first->resultHead;
        const DataDecl* decl = ctx.lookupData(head);
        if (!decl) return no("unknown datatype '" + head + "'");

        std::set<std::string> seen;
        for (const auto& br : ce.branches) {
          const CtorSig* sig = ctx.lookupCtor(br.ctor);
          if (!sig || sig->resultHead != head)
            return no("branch constructor '" + br.ctor +
                      "' does not belong to '" + head + "'");
          if (!seen.insert(br.ctor).second)
            return no("duplicate branch for '" + br.ctor + "'");
        }
        for (const auto& k : decl->ctors)
          if (!seen.count(k))
            return no("non-exhaustive case over '" + head + "': missing '" +
                      k + "'");

        std::vector<Type> args;
        for (int i = 0; i < decl->arity; ++i)
          args.push_back(supply.freshUnifVar());
        if (!check(s, ctx, ce.scrutinee, Type::data(head, args))) return false;

        for (const auto& br : ce.branches) {
          const CtorSig* sig = ctx.lookupCtor(br.ctor);
          Subst theta = positional(sig->quantified, args);
          Context inner = ctx;
          for (size_t k = 0; k < br.binders.size(); ++k)
            inner = inner.withVar(br.binders[k],
                                  Scheme::mono(theta.apply(sig->argTypes[k])));
          ConstraintSet givens = theta.apply(sig->bundled);
          if (givens.empty()) {
            // Plain branch: anything solved inside stays valid outside, so
            // thread the state through.
            if (!check(s, inner, br.body, ty))
              return no("branch for '" + br.ctor + "' does not check");
          } else {
            // GADT branch: the bundled equalities scope over this body only.
            // An inconsistent extension marks the branch unreachable, which
            // is vacuously fine. Solutions found under the extended givens
            // are deliberately dropped on exit.
            auto extended = s.assumeAll(givens);
            if (!extended) continue;
            Solved local = *extended;
            if (!check(local, inner, br.body, ty))
              return no("branch for '" + br.ctor + "' does not check");
          }
        }
        return true;
      }
    }
  }

  // type-var with type-unify folded in: some instantiation of the scheme must
  // make the body equal the goal and the bundled equalities entailed, all
  // modulo the given set.
  bool fits(Solved& s, const std::string& name, const Scheme& sch, const Type& ty) {
    Instantiated inst = instantiate(sch, supply);
    auto next = s.requireAll(inst.bundled.withEq(inst.body, ty));
    if (!next)
      return no("'" + name + "' : " + printType(inst.body) +
                " does not fit type " + printType(s.resolve(ty)));
    s = *next;
    return true;
  }
};

int maxUnifIdIn(const ConstraintSet& c, const Type& ty) {
  int m = -1;
  for (int id : freeUnifVars(ty)) m = std::max(m, id);
  for (int id : freeUnifVars(c)) m = std::max(m, id);
  return m;
}

}  // namespace

bool checkExpr(const ConstraintSet& c, const Context& ctx, const Expr& e,
               const Type& ty, std::string* why) {
  auto given = Solved::given(c);
  if (!given) {
    if (why && why->empty()) *why = "inconsistent given constraints";
    return false;
  }
  Checker chk{FreshSupply(maxUnifIdIn(c, ty) + 1), why};
  Solved s = *given;
  return chk.check(s, ctx, e, ty);
}

// ---------------------------------------------------------------------------
// Example typing

bool checkValueAt(const Context& ctx, const Value& v, const Type& ty) {
  switch (v.node().index()) {
    case 0: {
      const std::string* tyvar =
          ctx.lookupPolyConst(std::get<PolyConstV>(v.node()).name);
      return tyvar && ty == Type::rigid(*tyvar);
    }
    case 1: {
      const auto& c = std::get<CtorV>(v.node());
      if (!ty.isData()) return false;
      const auto& d = ty.dataTy();
      const CtorSig* sig = ctx.lookupCtor(c.name);
      if (!sig || sig->resultHead != d.head) return false;
      if (sig->argTypes.size() != c.args.size()) return false;
      Subst theta = positional(sig->quantified, d.args);
      if (!consistent(theta.apply(sig->bundled))) return false;
      for (size_t k = 0; k < c.args.size(); ++k)
        if (!checkValueAt(ctx, c.args[k], theta.apply(sig->argTypes[k])))
          return false;
      return true;
    }
    default:
      return false;  // functions cannot be written as example values
  }
}

bool checkExample(const Context& ctx, const Example& x, const Type& ty) {
  switch (x.node().index()) {
    case 0: {
      const std::string* tyvar =
          ctx.lookupPolyConst(std::get<ConstEx>(x.node()).name);
      return tyvar && ty == Type::rigid(*tyvar);
    }
    case 1: {
      const auto& c = std::get<CtorExNode>(x.node());
      if (!ty.isData()) return false;
      const auto& d = ty.dataTy();
      const CtorSig* sig = ctx.lookupCtor(c.name);
      if (!sig || sig->resultHead != d.head) return false;
      if (sig->argTypes.size() != c.args.size()) return false;
      Subst theta = positional(sig->quantified, d.args);
      if (!consistent(theta.apply(sig->bundled))) return false;
      for (size_t k = 0; k < c.args.size(); ++k)
        if (!checkExample(ctx, c.args[k], theta.apply(sig->argTypes[k])))
          return false;
      return true;
    }
    default: {
      const auto& io = std::get<IOExNode>(x.node());
      if (!ty.isArrow()) return false;
      return checkValueAt(ctx, io.input, ty.arrowDom()) &&
             checkExample(ctx, io.output, ty.arrowCod());
    }
  }
}

bool checkTopExample(const Context& ctx, const TopExample& X, const Scheme& s) {
  std::set<std::string> quantified(s.quantified.begin(), s.quantified.end());
  Context inner = ctx;
  for (const auto& [name, tyvar] : X.constants) {
    if (!quantified.count(tyvar)) return false;
    inner.polyConsts.emplace_back(name, tyvar);
  }
  for (const auto& row : X.rows)
    if (!checkExample(inner, row, s.body)) return false;
  return true;
}

}  // namespace holeforge
