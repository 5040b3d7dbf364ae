#include "holeforge/synth.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "holeforge/pretty.hpp"

namespace holeforge {

namespace {

// Hard valves against pathological inputs. The per-call cap bounds any one
// refinement node's output, the state valve bounds the whole search. Both
// are deterministic cutoffs: traversal order is fixed, so a truncated search
// still returns the same prefix every run.
constexpr size_t kPerNodeCap = 1536;
constexpr size_t kStateValve = 400000;

// How many combinations a single rule may push at one refinement node.
// Without this, a case split whose arms have many bodies would fill the
// node's whole quota and starve the rules that run after it. Sized so a
// recursive call the examples cannot yet confirm still makes it into a
// branch pairing: such calls rank as unknowns behind a crowd of equally
// unknown small terms, and a tight cap cuts the pairing off before them.
constexpr size_t kPerRuleCap = 512;

// Structure-building rules (lambda, constructor, case) stop at this floor so
// the guessing rule, which runs last, always gets a slice of the node budget
// no matter how many case splits fired before it.
constexpr size_t kStructureFloor = kPerNodeCap - 64;

size_t structureQuota(size_t outSize) {
  if (outSize >= kStructureFloor) return 0;
  return std::min(kPerRuleCap, kStructureFloor - outSize);
}

bool isGroundType(const Type& t) {
  return freeUnifVars(t).empty() && freeRigidVars(t).empty();
}

// Smallest terms first, pretty form as the tiebreak. smallestCombos relies on
// each list being sorted so that bumping an index never shrinks the total.
void sortBySize(std::vector<Expr>& es) {
  std::vector<std::pair<std::pair<int, std::string>, size_t>> keys;
  keys.reserve(es.size());
  for (size_t i = 0; i < es.size(); ++i)
    keys.push_back({{exprSize(es[i]), printExpr(es[i])}, i});
  std::sort(keys.begin(), keys.end());
  std::vector<Expr> sorted;
  sorted.reserve(es.size());
  for (auto& [key, i] : keys) sorted.push_back(std::move(es[i]));
  es = std::move(sorted);
}

// Visit index tuples over the (size-sorted) alternative lists in order of
// increasing combined term size, ties broken by the index vector, until
// `visit` declines or the space is exhausted. Best-first over a frontier:
// sorted inputs make bumping any index monotone in total size. An empty
// `sizes` yields the single empty tuple.
void smallestCombos(const std::vector<std::vector<int>>& sizes,
                    const std::function<bool(const std::vector<size_t>&)>& visit) {
  size_t n = sizes.size();
  for (const auto& s : sizes)
    if (s.empty()) return;
  long base = 0;
  for (const auto& s : sizes) base += s[0];
  std::set<std::pair<long, std::vector<size_t>>> frontier;
  std::set<std::vector<size_t>> queued;
  std::vector<size_t> zero(n, 0);
  frontier.insert({base, zero});
  queued.insert(zero);
  while (!frontier.empty()) {
    auto [total, pick] = *frontier.begin();
    frontier.erase(frontier.begin());
    if (!visit(pick)) return;
    for (size_t i = 0; i < n; ++i) {
      if (pick[i] + 1 >= sizes[i].size()) continue;
      std::vector<size_t> next = pick;
      ++next[i];
      if (!queued.insert(next).second) continue;
      frontier.insert(
          {total - sizes[i][pick[i]] + sizes[i][next[i]], std::move(next)});
    }
  }
}

std::vector<int> sizesOf(const std::vector<Expr>& es) {
  std::vector<int> out;
  out.reserve(es.size());
  for (const Expr& e : es) out.push_back(exprSize(e));
  return out;
}

struct RecInfo {
  std::string name;
  int argIndex = 0;
};

struct Search {
  SearchBudget budget;
  int fuel = kDefaultFuel;
  TraceSink trace;
  const Context* evalCtx = nullptr;  // unrestricted; arities for evaluation
  std::optional<RecInfo> rec;
  bool genScrutinees = false;
  size_t statesLeft = kStateValve;

  bool spend() {
    if (statesLeft == 0) return false;
    --statesLeft;
    return true;
  }

  void emit(const std::string& rule, const std::string& note,
            std::vector<Eq> added, size_t before, size_t after) const {
    if (!trace) return;
    trace(TraceEvent{rule, note, std::move(added), before, after});
  }
};

// Refinement-local bookkeeping, copied down each branch.
struct Scope {
  Context ctx;  // generation components plus binders introduced so far
  std::vector<std::pair<std::string, Type>> scrutinables;  // intro order
  std::set<std::string> usedNames;
  std::set<std::string> scrutinized;  // "name@type" already matched on
  std::map<std::string, int> subtermOf;  // binder -> goal-argument index
  std::map<std::string, int> rootOf;     // parameter -> its own index
  std::vector<std::string> paramHints;
  int caseDepth = 0;
  int lamDepth = 0;
};

char headPrefix(const std::string& head) {
  if (head == "[]") return 'l';
  for (char c : head)
    if (std::isalpha(static_cast<unsigned char>(c)))
      return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return 'x';
}

// Display name for a fresh binder: a type-derived prefix plus the smallest
// index not taken in this scope. Rigid `a` yields a1, lists yield l1, other
// datatypes use their head's initial.
std::string freshBinder(const Type& t, const std::set<std::string>& used) {
  std::string prefix = "x";
  if (t.valid()) {
    if (t.isRigid())
      prefix = t.rigidName().substr(0, 1);
    else if (t.isData())
      prefix = std::string(1, headPrefix(t.dataTy().head));
    else if (t.isArrow())
      prefix = "f";
  }
  for (int k = 1;; ++k) {
    std::string name = prefix + std::to_string(k);
    if (!used.count(name)) return name;
  }
}

bool allWorldsIO(const WorldSet& w) {
  for (const World& world : w)
    if (!world.goal.isIO()) return false;
  return true;
}

// All worlds carry a constructor example with the same head; returns it.
std::optional<std::string> sharedCtorHead(const WorldSet& w) {
  std::optional<std::string> head;
  for (const World& world : w) {
    const auto* cx = std::get_if<CtorExNode>(&world.goal.node());
    if (!cx) return std::nullopt;
    if (head && *head != cx->name) return std::nullopt;
    head = cx->name;
  }
  return head;
}

Subst positionalSubst(const std::vector<std::string>& quantified,
                      const std::vector<Type>& args) {
  Subst theta;
  size_t n = std::min(quantified.size(), args.size());
  for (size_t i = 0; i < n; ++i) theta.bindRigid(quantified[i], args[i]);
  return theta;
}

// Every use of the recursive name must be an application spine carrying at
// least argIndex+1 arguments whose decreasing argument is a binder obtained
// by destructing the corresponding goal argument. Bare or under-applied
// references are rejected; so are calls whose decreasing argument is any
// other expression.
bool recursionOk(const Expr& e, const RecInfo& rec,
                 const std::map<std::string, int>& subtermOf) {
  const ExprNode& n = e.node();
  if (const auto* v = std::get_if<VarE>(&n)) return v->name != rec.name;
  if (std::holds_alternative<CtorE>(n) ||
      std::holds_alternative<PolyConstE>(n) ||
      std::holds_alternative<HoleE>(n))
    return true;
  if (const auto* l = std::get_if<LamE>(&n))
    return recursionOk(l->body, rec, subtermOf);
  if (const auto* c = std::get_if<CaseE>(&n)) {
    if (!recursionOk(c->scrutinee, rec, subtermOf)) return false;
    for (const MatchBranch& b : c->branches)
      if (!recursionOk(b.body, rec, subtermOf)) return false;
    return true;
  }
  AppSpine spine = flattenApp(e);
  const auto* head = std::get_if<VarE>(&spine.head.node());
  if (head && head->name == rec.name) {
    if (static_cast<int>(spine.args.size()) < rec.argIndex + 1) return false;
    const auto* arg = std::get_if<VarE>(&spine.args[rec.argIndex].node());
    if (!arg) return false;
    auto it = subtermOf.find(arg->name);
    if (it == subtermOf.end() || it->second != rec.argIndex) return false;
  } else if (!recursionOk(spine.head, rec, subtermOf)) {
    return false;
  }
  for (size_t i = 0; i < spine.args.size(); ++i) {
    if (head && head->name == rec.name &&
        static_cast<int>(i) == rec.argIndex)
      continue;  // already validated as a plain binder
    if (!recursionOk(spine.args[i], rec, subtermOf)) return false;
  }
  return true;
}

void genInner(Search& srch, const GenState& st, const Context& ctx,
              const Type& rawGoal,
              std::vector<std::pair<Expr, GenState>>& out);

// gen-var: speculatively pick one component (variable, constructor or
// polymorphic constant, in context order), instantiate its scheme and keep
// the choice iff the constraints stay consistent.
void genVar(Search& srch, const GenState& st, const Context& ctx,
            const Type& goal, std::vector<std::pair<Expr, GenState>>& out) {
  struct Comp {
    Expr expr;
    Scheme scheme;
    std::string name;
  };
  std::vector<Comp> comps;
  for (const auto& [name, scheme] : ctx.vars)
    comps.push_back({Expr::var(name), scheme, name});
  for (const CtorSig& sig : ctx.ctors)
    comps.push_back({Expr::ctor(sig.name), sig.scheme(), sig.name});
  for (const auto& [name, tyvar] : ctx.polyConsts)
    comps.push_back(
        {Expr::polyConst(name), Scheme::mono(Type::rigid(tyvar)), name});

  for (const Comp& comp : comps) {
    if (out.size() >= kPerNodeCap) return;
    GenState next = st;
    Instantiated inst = instantiate(comp.scheme, next.supply);
    auto withBundled = next.constraints.requireAll(inst.bundled);
    if (!withBundled) continue;
    Eq goalEq = Eq::normalized(goal, inst.body);
    auto solved = withBundled->require(goalEq);
    if (!solved) continue;
    size_t before = st.constraints.set().size();
    next.constraints = *solved;
    std::vector<Eq> added = inst.bundled.items();
    added.push_back(goalEq);
    srch.emit("gen-var", comp.name, std::move(added), before,
              next.constraints.set().size());
    out.push_back({comp.expr, std::move(next)});
  }
}

// gen-app: mint a fresh domain type, generate the function first, then the
// argument under the function's output state.
void genApp(Search& srch, const GenState& st, const Context& ctx,
            const Type& goal, std::vector<std::pair<Expr, GenState>>& out) {
  if (st.appDepth <= 0) return;
  GenState fnState = st;
  fnState.appDepth = st.appDepth - 1;
  Type alpha = fnState.supply.freshUnifVar();
  std::vector<std::pair<Expr, GenState>> fns;
  genInner(srch, fnState, ctx, Type::arrow(alpha, goal), fns);
  for (auto& [fn, afterFn] : fns) {
    if (out.size() >= kPerNodeCap) return;
    GenState argState = afterFn;
    argState.appDepth = st.appDepth - 1;
    std::vector<std::pair<Expr, GenState>> args;
    genInner(srch, argState, ctx, alpha, args);
    for (auto& [arg, afterArg] : args) {
      if (out.size() >= kPerNodeCap) return;
      GenState done = afterArg;
      done.appDepth = st.appDepth;
      srch.emit("gen-app", "", {}, afterFn.constraints.set().size(),
                done.constraints.set().size());
      out.push_back({Expr::app(fn, arg), std::move(done)});
    }
  }
}

void genInner(Search& srch, const GenState& st, const Context& ctx,
              const Type& rawGoal,
              std::vector<std::pair<Expr, GenState>>& out) {
  if (!srch.spend()) return;
  Type goal = st.constraints.resolve(rawGoal);
  genVar(srch, st, ctx, goal, out);
  genApp(srch, st, ctx, goal, out);
}

std::vector<Expr> refineInner(Search& srch, const GenState& st, Scope sc,
                              Type goal, const WorldSet& w);

struct BranchAlt {
  std::string ctor;
  std::vector<std::string> binders;
  std::vector<Expr> bodies;  // alternatives for this arm
};

// The body of a branch whose bundled equalities contradict the current
// givens. The arm cannot be reached, but exhaustiveness still wants a body:
// the first pattern binder if the constructor has arguments, otherwise the
// lexicographically first name in scope.
Expr unreachableEscape(const Scope& sc,
                       const std::vector<std::string>& binders) {
  if (!binders.empty()) return Expr::var(binders.front());
  std::optional<std::string> bestVar;
  for (const auto& [name, scheme] : sc.ctx.vars)
    if (!bestVar || name < *bestVar) bestVar = name;
  if (bestVar) return Expr::var(*bestVar);
  std::optional<std::string> bestCtor;
  for (const CtorSig& sig : sc.ctx.ctors)
    if (sig.argTypes.empty() &&
        (!bestCtor || ctorDisplayName(sig.name) < *bestCtor))
      bestCtor = ctorDisplayName(sig.name);
  return Expr::ctor(bestCtor.value_or("[]"));
}

// One constructor arm: extend the givens with the instantiated bundled
// equalities, bind fresh pattern binders, push the constructor's argument
// values into every filtered world and refine the body at the same goal.
BranchAlt refineArm(Search& srch, const GenState& st, const Scope& sc,
                    const std::string& scrutName, const Type& scrutTy,
                    const CtorSig& sig, const Type& goal,
                    const WorldSet& filtered) {
  const std::vector<Type>& tyArgs = scrutTy.dataTy().args;
  Subst theta = positionalSubst(sig.quantified, tyArgs);
  ConstraintSet local = theta.apply(sig.bundled);

  BranchAlt alt;
  alt.ctor = sig.name;

  Scope inner = sc;
  std::vector<Type> binderTys;
  for (const Type& at : sig.argTypes) {
    Type bt = theta.apply(at);
    std::string b = freshBinder(st.constraints.resolve(bt), inner.usedNames);
    inner.usedNames.insert(b);
    alt.binders.push_back(b);
    binderTys.push_back(bt);
  }

  size_t before = st.constraints.set().size();
  auto extended = st.constraints.assumeAll(local);
  if (!extended) {
    srch.emit("refine-gadt-match", sig.name + " unreachable", local.items(),
              before, before);
    alt.bodies.push_back(unreachableEscape(inner, alt.binders));
    return alt;
  }
  srch.emit("refine-gadt-match", sig.name, local.items(), before,
            extended->set().size());

  GenState branchSt{*extended, st.supply, st.appDepth};
  int argIdx = -1;
  if (auto it = inner.rootOf.find(scrutName); it != inner.rootOf.end())
    argIdx = it->second;
  else if (auto jt = inner.subtermOf.find(scrutName);
           jt != inner.subtermOf.end())
    argIdx = jt->second;
  for (size_t i = 0; i < alt.binders.size(); ++i) {
    inner.ctx = inner.ctx.withVar(alt.binders[i], Scheme::mono(binderTys[i]));
    if (argIdx >= 0) inner.subtermOf[alt.binders[i]] = argIdx;
    Type resolved = branchSt.constraints.resolve(binderTys[i]);
    if (resolved.isData())
      inner.scrutinables.push_back({alt.binders[i], binderTys[i]});
  }
  inner.scrutinized.insert(scrutName + "@" + printType(scrutTy));
  inner.caseDepth = sc.caseDepth - 1;

  WorldSet inside;
  for (const World& world : filtered) {
    EvalOutcome o = evalExpr(*srch.evalCtx, world.env, Expr::var(scrutName),
                             srch.fuel);
    assert(o.isVal());
    const auto& cv = std::get<CtorV>(o.value.node());
    ValueEnv env = world.env;
    for (size_t i = 0; i < alt.binders.size() && i < cv.args.size(); ++i)
      env = env.extended(alt.binders[i], cv.args[i]);
    inside.push_back(World{env, world.goal});
  }

  alt.bodies = refineInner(srch, branchSt, inner, goal, inside);
  return alt;
}

void refineCaseOver(Search& srch, const GenState& st, const Scope& sc,
                    const std::string& name, const Type& declaredTy,
                    const Type& goal, const WorldSet& w,
                    std::vector<Expr>& out) {
  Type ty = st.constraints.resolve(declaredTy);
  if (!ty.isData()) return;
  // Patterns come from the datatype declaration, not from the (possibly
  // restricted) component list, so look them up in the full context.
  const DataDecl* decl = srch.evalCtx->lookupData(ty.dataTy().head);
  if (!decl || decl->ctors.empty()) return;
  if (sc.scrutinized.count(name + "@" + printType(ty))) return;

  std::vector<std::pair<const CtorSig*, WorldSet>> arms;
  size_t covered = 0;
  for (const std::string& ctorName : decl->ctors) {
    const CtorSig* sig = srch.evalCtx->lookupCtor(ctorName);
    if (!sig) return;
    auto filtered =
        filterWorlds(*srch.evalCtx, w, ctorName, Expr::var(name), srch.fuel);
    if (!filtered) return;  // undecided scrutinee: abandon it
    covered += filtered->size();
    arms.push_back({sig, std::move(*filtered)});
  }
  // Every world must land in exactly one arm; a world whose scrutinee heads
  // elsewhere would otherwise be silently dropped.
  if (covered != w.size()) return;

  srch.emit("refine-gadt-case", name, {}, st.constraints.set().size(),
            st.constraints.set().size());

  std::vector<BranchAlt> alts;
  for (auto& [sig, filtered] : arms) {
    alts.push_back(refineArm(srch, st, sc, name, ty, *sig, goal, filtered));
    if (alts.back().bodies.empty()) return;  // arm unfillable
  }

  // Cartesian combination across arms, smallest total size first.
  size_t ruleBudget = structureQuota(out.size());
  if (ruleBudget == 0) return;
  for (BranchAlt& alt : alts) sortBySize(alt.bodies);
  std::vector<std::vector<int>> sizes;
  for (const BranchAlt& alt : alts) sizes.push_back(sizesOf(alt.bodies));
  size_t emitted = 0;
  smallestCombos(sizes, [&](const std::vector<size_t>& pick) {
    std::vector<MatchBranch> branches;
    for (size_t i = 0; i < alts.size(); ++i)
      branches.push_back(
          MatchBranch{alts[i].ctor, alts[i].binders, alts[i].bodies[pick[i]]});
    out.push_back(Expr::caseOf(Expr::var(name), std::move(branches)));
    return ++emitted < ruleBudget;
  });
}

std::vector<Expr> refineInner(Search& srch, const GenState& st, Scope sc,
                              Type goal, const WorldSet& w) {
  std::vector<Expr> out;
  if (!srch.spend()) return out;

  // Goals are kept in solved form. When the givens pin a rigid variable to
  // a ground type, refinement continues at that type.
  Type resolved = st.constraints.resolve(goal);
  if (goal.isRigid() && !(resolved == goal) && isGroundType(resolved)) {
    srch.emit("refine-gadt-unify",
              goal.rigidName() + " => " + printType(resolved), {},
              st.constraints.set().size(), st.constraints.set().size());
  }
  goal = resolved;

  // Lambda rule: arrow goal, every world an input/output example.
  if (goal.isArrow() && allWorldsIO(w)) {
    std::string binder;
    if (sc.lamDepth < static_cast<int>(sc.paramHints.size()))
      binder = sc.paramHints[sc.lamDepth];
    else
      binder = freshBinder(st.constraints.resolve(goal.arrowDom()),
                           sc.usedNames);
    srch.emit("refine-gadt-lam", binder, {}, st.constraints.set().size(),
              st.constraints.set().size());
    Scope inner = sc;
    inner.ctx = inner.ctx.withVar(binder, Scheme::mono(goal.arrowDom()));
    inner.usedNames.insert(binder);
    inner.rootOf[binder] = sc.lamDepth;
    inner.lamDepth = sc.lamDepth + 1;
    Type dom = st.constraints.resolve(goal.arrowDom());
    if (dom.isData()) inner.scrutinables.push_back({binder, goal.arrowDom()});
    WorldSet consumed;
    for (const World& world : w) {
      const auto& io = std::get<IOExNode>(world.goal.node());
      consumed.push_back(
          World{world.env.extended(binder, io.input), io.output});
    }
    for (Expr& body : refineInner(srch, st, inner, goal.arrowCod(), consumed)) {
      if (out.size() >= kStructureFloor) break;
      out.push_back(Expr::lam(binder, std::move(body)));
    }
  }

  // Constructor rule: datatype goal and every world agrees on the head.
  // The constructor's bundled equalities must already follow from the
  // givens; worlds then split argument-wise.
  if (goal.isData() && !w.empty()) {
    if (auto head = sharedCtorHead(w)) {
      const CtorSig* sig = srch.evalCtx->lookupCtor(*head);
      if (sig && sig->resultHead == goal.dataTy().head &&
          sig->quantified.size() == goal.dataTy().args.size()) {
        Subst theta = positionalSubst(sig->quantified, goal.dataTy().args);
        bool entailed = true;
        for (const Eq& eq : sig->bundled.items())
          if (!st.constraints.entails(theta.apply(eq))) {
            entailed = false;
            break;
          }
        if (entailed) {
          srch.emit("refine-gadt-data", *head, {},
                    st.constraints.set().size(),
                    st.constraints.set().size());
          std::vector<std::vector<Expr>> parts;
          bool viable = true;
          for (size_t k = 0; k < sig->argTypes.size() && viable; ++k) {
            WorldSet wk;
            for (const World& world : w) {
              const auto& cx = std::get<CtorExNode>(world.goal.node());
              if (k < cx.args.size())
                wk.push_back(World{world.env, cx.args[k]});
            }
            parts.push_back(refineInner(srch, st, sc,
                                        theta.apply(sig->argTypes[k]), wk));
            viable = !parts.back().empty();
          }
          size_t ruleBudget = structureQuota(out.size());
          if (viable && ruleBudget > 0) {
            for (auto& part : parts) sortBySize(part);
            std::vector<std::vector<int>> sizes;
            for (const auto& part : parts) sizes.push_back(sizesOf(part));
            size_t emitted = 0;
            smallestCombos(sizes, [&](const std::vector<size_t>& pick) {
              Expr e = Expr::ctor(sig->name);
              for (size_t k = 0; k < parts.size(); ++k)
                e = Expr::app(e, parts[k][pick[k]]);
              out.push_back(std::move(e));
              return ++emitted < ruleBudget;
            });
          }
        }
      }
    }
  }

  // Case rule over eligible scrutinees: goal arguments and pattern binders
  // whose type is a datatype, each matched at most once per path.
  if (sc.caseDepth > 0) {
    for (const auto& [name, ty] : sc.scrutinables) {
      if (out.size() >= kStructureFloor) break;
      refineCaseOver(srch, st, sc, name, ty, goal, w, out);
    }
    if (srch.genScrutinees) {
      // Optional: scrutinize generated terms too, not just variables.
      for (const DataDecl& decl : sc.ctx.datatypes) {
        if (decl.ctors.empty()) continue;
        GenState scrSt = st;
        scrSt.appDepth = srch.budget.maxAppDepth;
        std::vector<Type> args;
        for (int i = 0; i < decl.arity; ++i)
          args.push_back(scrSt.supply.freshUnifVar());
        std::vector<std::pair<Expr, GenState>> scrs;
        genInner(srch, scrSt, sc.ctx, Type::data(decl.name, args), scrs);
        size_t taken = 0;
        for (auto& [scr, afterScr] : scrs) {
          if (taken >= 8 || out.size() >= kStructureFloor) break;
          if (std::holds_alternative<VarE>(scr.node())) continue;
          ++taken;
          // The temporary name only carries the scrutinee's value through
          // world filtering; it stays out of the component list so branch
          // bodies cannot mention it.
          std::string tmp = freshBinder(Type::data(decl.name, args),
                                        sc.usedNames);
          Scope inner = sc;
          inner.usedNames.insert(tmp);
          // Bind the scrutinee's value in every world so filtering can see
          // it, then case over the temporary name and substitute back.
          WorldSet bound;
          bool ok = true;
          for (const World& world : w) {
            EvalOutcome o = evalExpr(*srch.evalCtx, world.env, scr, srch.fuel);
            if (!o.isVal()) {
              ok = false;
              break;
            }
            bound.push_back(World{world.env.extended(tmp, o.value),
                                  world.goal});
          }
          if (!ok) continue;
          std::vector<Expr> cases;
          refineCaseOver(srch, afterScr, inner, tmp,
                         afterScr.constraints.resolve(
                             Type::data(decl.name, args)),
                         goal, bound, cases);
          for (Expr& c : cases) {
            const auto& ce = std::get<CaseE>(c.node());
            out.push_back(Expr::caseOf(scr, ce.branches));
          }
        }
      }
    }
  }

  // Guess rule: delegate to generation, then keep whatever no world
  // contradicts. Polymorphic constants are example scaffolding, not program
  // text, so terms mentioning them are dropped here.
  {
    GenState guessSt = st;
    std::vector<std::pair<Expr, GenState>> gen;
    genInner(srch, guessSt, sc.ctx, goal, gen);
    std::set<std::string> seen;
    for (const Expr& e : out) seen.insert(printExpr(e));
    for (auto& [e, after] : gen) {
      if (out.size() >= kPerNodeCap) break;
      if (mentionsPolyConst(e)) continue;
      if (srch.rec && !recursionOk(e, *srch.rec, sc.subtermOf)) continue;
      bool contradicted = false;
      for (const World& world : w) {
        if (exampleSatisfies(*srch.evalCtx, world.env, e, world.goal,
                             srch.fuel) == Satisfaction::Contradicted) {
          contradicted = true;
          break;
        }
      }
      if (contradicted) continue;
      if (!seen.insert(printExpr(e)).second) continue;
      srch.emit("refine-gadt-guess", printExpr(e), {},
                st.constraints.set().size(), after.constraints.set().size());
      out.push_back(e);
    }
  }

  return out;
}

Scope baseScope(const Context& ctx, const SearchBudget& budget,
                const std::vector<std::string>& paramHints) {
  Scope sc;
  sc.ctx = ctx;
  sc.caseDepth = budget.maxCaseDepth;
  sc.paramHints = paramHints;
  // Reserve the declared parameter names up front. Pattern binders minted
  // before a lambda fires must not grab a name a later lambda will claim,
  // or the inner parameter would shadow the pattern binder.
  for (const std::string& hint : paramHints) sc.usedNames.insert(hint);
  for (const auto& [name, scheme] : ctx.vars) {
    sc.usedNames.insert(name);
    if (scheme.quantified.empty() && scheme.body.valid() &&
        scheme.body.isData())
      sc.scrutinables.push_back({name, scheme.body});
  }
  return sc;
}

}  // namespace

std::vector<std::pair<Expr, GenState>> generate(const GenState& st,
                                                const Context& ctx,
                                                const Type& goal,
                                                const TraceSink& trace) {
  Search srch;
  srch.trace = trace;
  srch.evalCtx = &ctx;
  std::vector<std::pair<Expr, GenState>> out;
  genInner(srch, st, ctx, goal, out);
  return out;
}

std::vector<Expr> refine(const GenState& st, const Context& ctx,
                         const Type& goal, const WorldSet& w,
                         const SearchBudget& budget, const SynthInputs& in) {
  Search srch;
  srch.budget = budget;
  srch.fuel = in.fuel;
  srch.trace = in.trace;
  srch.evalCtx = &ctx;
  srch.genScrutinees = in.genScrutinees;
  GenState start = st;
  if (start.appDepth <= 0) start.appDepth = budget.maxAppDepth;
  return refineInner(srch, start, baseScope(ctx, budget, in.paramHints), goal,
                     w);
}

std::vector<MatchBranch> refineMatch(const GenState& st, const Context& ctx,
                                     const Expr& scrutinee,
                                     const std::vector<Type>& tyArgs,
                                     const std::string& ctorName,
                                     const Type& goal, const WorldSet& w,
                                     const SearchBudget& budget,
                                     const SynthInputs& in) {
  const auto* var = std::get_if<VarE>(&scrutinee.node());
  const CtorSig* sig = ctx.lookupCtor(ctorName);
  if (!var || !sig) return {};

  Search srch;
  srch.budget = budget;
  srch.fuel = in.fuel;
  srch.trace = in.trace;
  srch.evalCtx = &ctx;
  srch.genScrutinees = in.genScrutinees;

  auto filtered = filterWorlds(ctx, w, ctorName, scrutinee, in.fuel);
  if (!filtered) return {};

  GenState start = st;
  if (start.appDepth <= 0) start.appDepth = budget.maxAppDepth;
  Scope sc = baseScope(ctx, budget, in.paramHints);
  BranchAlt alt =
      refineArm(srch, start, sc, var->name,
                Type::data(sig->resultHead, tyArgs), *sig, goal, *filtered);
  std::vector<MatchBranch> out;
  for (Expr& body : alt.bodies)
    out.push_back(MatchBranch{alt.ctor, alt.binders, std::move(body)});
  return out;
}

std::vector<Candidate> synthesizeBinding(const Context& ctx,
                                         const std::string& name,
                                         const Scheme& s,
                                         const std::optional<TopExample>& X,
                                         const SynthOptions& opts,
                                         const SearchBudget& budget,
                                         const SynthInputs& in) {
  SearchBudget b = budget;
  if (opts.depth) b.maxAppDepth = *opts.depth;
  if (opts.maxCandidates) b.maxCandidates = *opts.maxCandidates;

  // Restrict the generation components when the ctx option is given;
  // datatypes stay (they describe shapes, not components).
  Context searchCtx;
  searchCtx.datatypes = ctx.datatypes;
  if (opts.ctx) {
    std::set<std::string> keep(opts.ctx->begin(), opts.ctx->end());
    for (const auto& v : ctx.vars)
      if (keep.count(v.first)) searchCtx.vars.push_back(v);
    for (const CtorSig& c : ctx.ctors)
      if (keep.count(c.name) || keep.count(ctorDisplayName(c.name)))
        searchCtx.ctors.push_back(c);
  } else {
    searchCtx.vars = ctx.vars;
    searchCtx.ctors = ctx.ctors;
  }
  searchCtx.polyConsts = ctx.polyConsts;
  if (X)
    for (const auto& c : X->constants) searchCtx.polyConsts.push_back(c);

  Search srch;
  srch.budget = b;
  srch.fuel = in.fuel;
  srch.trace = in.trace;
  srch.evalCtx = &ctx;
  srch.genScrutinees = in.genScrutinees;

  ValueEnv worldEnv = in.baseEnv;
  int arity = static_cast<int>(peelArrows(s.body).doms.size());
  if (opts.recArg) {
    // The goal may call itself: the name enters the components at its
    // declared scheme, and inside worlds it is bound to the partial
    // function the example rows define.
    searchCtx = searchCtx.withVar(name, s);
    srch.rec = RecInfo{name, *opts.recArg};
    if (X)
      if (auto pf = partialFnFromExamples(name, *X, arity))
        worldEnv = worldEnv.extended(name, *pf);
  }

  WorldSet worlds;
  if (X)
    for (const Example& row : X->rows) worlds.push_back(World{worldEnv, row});

  srch.emit("refine-gadt-binding", name, {}, 0, 0);

  Scope sc = baseScope(searchCtx, b, in.paramHints);
  sc.usedNames.insert(name);
  sc.scrutinables.clear();  // only goal arguments and pattern binders
  GenState st0;
  st0.appDepth = b.maxAppDepth;
  std::vector<Expr> raw = refineInner(srch, st0, sc, s.body, worlds);

  std::set<std::string> seen;
  std::vector<Candidate> kept;
  for (const Expr& e : raw) {
    if (!seen.insert(printExpr(alphaCanonical(e))).second) continue;
    Candidate c;
    c.expr = e;
    bool contradicted = false;
    bool allSat = X && !X->rows.empty();
    if (X) {
      Value self = Value::fixpoint(name, e, in.baseEnv);
      for (const Example& row : X->rows) {
        Satisfaction sat = valueSatisfies(ctx, self, row, in.fuel);
        c.perRow.push_back(sat);
        if (sat == Satisfaction::Contradicted) contradicted = true;
        if (sat != Satisfaction::Satisfied) allSat = false;
      }
    }
    if (contradicted) continue;
    c.verdict = allSat ? Verdict::Ok : Verdict::Unknown;
    kept.push_back(std::move(c));
  }

  std::stable_sort(kept.begin(), kept.end(),
                   [](const Candidate& a, const Candidate& bb) {
                     int ra = a.verdict == Verdict::Ok ? 0 : 1;
                     int rb = bb.verdict == Verdict::Ok ? 0 : 1;
                     if (ra != rb) return ra < rb;
                     int sa = exprSize(a.expr);
                     int sb = exprSize(bb.expr);
                     if (sa != sb) return sa < sb;
                     return printExpr(a.expr) < printExpr(bb.expr);
                   });
  if (static_cast<int>(kept.size()) > b.maxCandidates)
    kept.resize(b.maxCandidates);
  return kept;
}

}  // namespace holeforge
