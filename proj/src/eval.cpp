#include "holeforge/eval.hpp"

#include <cassert>
#include <string>
#include <vector>

#include "holeforge/pretty.hpp"

namespace holeforge {

namespace {

struct Engine {
  const Context& ctx;
  const EvalTrace* trace;
  int fuel;

  bool spend() {
    if (fuel <= 0) return false;
    --fuel;
    return true;
  }

  void traceStep(const std::string& line) {
    if (trace && *trace) (*trace)(line);
  }

  // A constructor met with `have` evaluated arguments. Saturated
  // applications build the value directly; anything shorter eta-expands into
  // a closure over the missing arguments.
  EvalOutcome ctorValue(const std::string& name, std::vector<Value> have) {
    const CtorSig* sig = ctx.lookupCtor(name);
    if (!sig) return EvalOutcome::stuck(StuckReason::Unbound);
    size_t arity = sig->argTypes.size();
    if (have.size() == arity)
      return EvalOutcome::val(Value::ctor(name, std::move(have)));
    if (have.size() > arity) return EvalOutcome::stuck(StuckReason::Unbound);

    ValueEnv captured;
    Expr body = Expr::ctor(name);
    for (size_t i = 0; i < arity; ++i)
      body = Expr::app(std::move(body), Expr::var("$" + std::to_string(i)));
    for (size_t i = 0; i < have.size(); ++i)
      captured = captured.extended("$" + std::to_string(i), have[i]);
    for (size_t i = arity; i-- > have.size() + 1;)
      body = Expr::lam("$" + std::to_string(i), std::move(body));
    return EvalOutcome::val(
        Value::closure("$" + std::to_string(have.size()), std::move(body),
                       std::move(captured)));
  }

  EvalOutcome apply(const Value& fn, const Value& arg) {
    if (!spend()) return EvalOutcome::outOfFuel();
    switch (fn.node().index()) {
      case 2: {  // closure
        const auto& c = std::get<ClosureV>(fn.node());
        traceStep("(\\" + c.binder + " -> " + printExpr(c.body) + ") " +
                  printValue(arg));
        return eval(c.captured.extended(c.binder, arg), c.body);
      }
      case 3: {  // example-derived partial function
        const auto& p = std::get<PartialFnV>(fn.node());
        std::vector<Value> applied = p.applied;
        applied.push_back(arg);
        if (static_cast<int>(applied.size()) < p.arity)
          return EvalOutcome::val(
              Value::partialFn(p.name, p.arity, p.rows, std::move(applied)));
        for (const auto& [inputs, output] : p.rows) {
          bool match = true;
          for (size_t i = 0; i < inputs.size(); ++i)
            if (!valueEqual(inputs[i], applied[i])) {
              match = false;
              break;
            }
          if (match) {
            traceStep(p.name + " <recursive call answered by example row>");
            return EvalOutcome::val(output);
          }
        }
        return EvalOutcome::stuck(StuckReason::UnknownRecursiveCall);
      }
      case 4: {  // fixpoint: unroll once under its own name
        const auto& f = std::get<FixV>(fn.node());
        traceStep(f.name + " <unroll>");
        EvalOutcome unrolled = eval(f.captured.extended(f.name, fn), f.expr);
        if (!unrolled.isVal()) return unrolled;
        return apply(unrolled.value, arg);
      }
      default:  // saturated constructor or opaque constant in function position
        return EvalOutcome::stuck(StuckReason::Unbound);
    }
  }

  EvalOutcome eval(const ValueEnv& env, const Expr& e) {
    switch (e.node().index()) {
      case 0: {
        auto v = env.lookup(std::get<VarE>(e.node()).name);
        if (!v) return EvalOutcome::stuck(StuckReason::Unbound);
        return EvalOutcome::val(*v);
      }
      case 1:
        return ctorValue(std::get<CtorE>(e.node()).name, {});
      case 2:
        return EvalOutcome::val(
            Value::polyConst(std::get<PolyConstE>(e.node()).name));
      case 3:
        return EvalOutcome::stuck(StuckReason::Unbound);  // a hole has no value
      case 4: {
        const auto& l = std::get<LamE>(e.node());
        return EvalOutcome::val(Value::closure(l.binder, l.body, env));
      }
      case 5: {
        // Constructor-headed spines build values without a closure detour.
        AppSpine spine = flattenApp(e);
        if (spine.head.node().index() == 1) {
          std::vector<Value> args;
          args.reserve(spine.args.size());
          for (const Expr& a : spine.args) {
            EvalOutcome o = eval(env, a);
            if (!o.isVal()) return o;
            args.push_back(std::move(o.value));
          }
          return ctorValue(std::get<CtorE>(spine.head.node()).name,
                           std::move(args));
        }
        const auto& app = std::get<AppE>(e.node());
        EvalOutcome fn = eval(env, app.fn);
        if (!fn.isVal()) return fn;
        EvalOutcome arg = eval(env, app.arg);
        if (!arg.isVal()) return arg;
        return apply(fn.value, arg.value);
      }
      default: {
        const auto& ce = std::get<CaseE>(e.node());
        EvalOutcome scr = eval(env, ce.scrutinee);
        if (!scr.isVal()) return scr;
        if (scr.value.node().index() != 1)
          return EvalOutcome::stuck(StuckReason::UnmatchedCase);
        const auto& cv = std::get<CtorV>(scr.value.node());
        for (const auto& br : ce.branches) {
          if (br.ctor != cv.name) continue;
          assert(br.binders.size() == cv.args.size());
          ValueEnv inner = env;
          for (size_t i = 0; i < br.binders.size(); ++i)
            inner = inner.extended(br.binders[i], cv.args[i]);
          return eval(inner, br.body);
        }
        return EvalOutcome::stuck(StuckReason::UnmatchedCase);
      }
    }
  }
};

}  // namespace

EvalOutcome evalExpr(const Context& ctx, const ValueEnv& env, const Expr& e,
                     int fuel, const EvalTrace* trace) {
  Engine engine{ctx, trace, fuel};
  return engine.eval(env, e);
}

EvalOutcome applyValue(const Context& ctx, const Value& fn, const Value& arg,
                       int fuel, const EvalTrace* trace) {
  Engine engine{ctx, trace, fuel};
  return engine.apply(fn, arg);
}

namespace {

Satisfaction combine(Satisfaction a, Satisfaction b) {
  if (a == Satisfaction::Contradicted || b == Satisfaction::Contradicted)
    return Satisfaction::Contradicted;
  if (a == Satisfaction::Unknown || b == Satisfaction::Unknown)
    return Satisfaction::Unknown;
  return Satisfaction::Satisfied;
}

Satisfaction satisfyValue(Engine& engine, const Value& v, const Example& x) {
  switch (x.node().index()) {
    case 0:
      return valueEqual(v, Value::polyConst(std::get<ConstEx>(x.node()).name))
                 ? Satisfaction::Satisfied
                 : Satisfaction::Contradicted;
    case 1: {
      const auto& cx = std::get<CtorExNode>(x.node());
      if (v.node().index() != 1) return Satisfaction::Contradicted;
      const auto& cv = std::get<CtorV>(v.node());
      if (cv.name != cx.name || cv.args.size() != cx.args.size())
        return Satisfaction::Contradicted;
      Satisfaction all = Satisfaction::Satisfied;
      for (size_t i = 0; i < cx.args.size(); ++i) {
        all = combine(all, satisfyValue(engine, cv.args[i], cx.args[i]));
        if (all == Satisfaction::Contradicted) return all;
      }
      return all;
    }
    default: {
      const auto& io = std::get<IOExNode>(x.node());
      EvalOutcome o = engine.apply(v, io.input);
      switch (o.kind) {
        case EvalOutcome::Kind::Val:
          return satisfyValue(engine, o.value, io.output);
        case EvalOutcome::Kind::OutOfFuel:
          return Satisfaction::Unknown;
        default:
          return o.reason == StuckReason::UnmatchedCase
                     ? Satisfaction::Contradicted
                     : Satisfaction::Unknown;
      }
    }
  }
}

}  // namespace

Satisfaction valueSatisfies(const Context& ctx, const Value& v,
                            const Example& x, int fuel) {
  Engine engine{ctx, nullptr, fuel};
  return satisfyValue(engine, v, x);
}

Satisfaction exampleSatisfies(const Context& ctx, const ValueEnv& env,
                              const Expr& e, const Example& x, int fuel) {
  Engine engine{ctx, nullptr, fuel};
  EvalOutcome o = engine.eval(env, e);
  switch (o.kind) {
    case EvalOutcome::Kind::Val:
      return satisfyValue(engine, o.value, x);
    case EvalOutcome::Kind::OutOfFuel:
      return Satisfaction::Unknown;
    default:
      return o.reason == StuckReason::UnmatchedCase ? Satisfaction::Contradicted
                                                    : Satisfaction::Unknown;
  }
}

std::optional<WorldSet> filterWorlds(const Context& ctx, const WorldSet& w,
                                     const std::string& ctorName, const Expr& e,
                                     int fuel) {
  WorldSet kept;
  for (const World& world : w) {
    EvalOutcome o = evalExpr(ctx, world.env, e, fuel);
    if (!o.isVal()) return std::nullopt;
    if (o.value.node().index() != 1) continue;
    if (std::get<CtorV>(o.value.node()).name == ctorName) kept.push_back(world);
  }
  return kept;
}

std::optional<Value> partialFnFromExamples(const std::string& name,
                                           const TopExample& examples,
                                           int arity) {
  std::vector<std::pair<std::vector<Value>, Value>> rows;
  for (const Example& row : examples.rows) {
    std::vector<Value> inputs;
    const Example* cursor = &row;
    bool deepEnough = true;
    for (int i = 0; i < arity; ++i) {
      if (cursor->node().index() != 2) {
        deepEnough = false;
        break;
      }
      const auto& io = std::get<IOExNode>(cursor->node());
      inputs.push_back(io.input);
      cursor = &io.output;
    }
    if (!deepEnough) continue;
    std::optional<Value> out = exampleToValue(*cursor);
    if (!out) continue;
    rows.emplace_back(std::move(inputs), std::move(*out));
  }
  if (rows.empty()) return std::nullopt;
  return Value::partialFn(name, arity, std::move(rows), {});
}

}  // namespace holeforge
