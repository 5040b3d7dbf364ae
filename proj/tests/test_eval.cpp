#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "holeforge/eval.hpp"
#include "holeforge/prelude.hpp"
#include "holeforge/pretty.hpp"
#include "holeforge/program.hpp"

using namespace holeforge;

namespace {

Program compileWith(const std::string& text) {
  ParseResult r = parseSourceFile(text, "t.syn");
  if (auto* d = std::get_if<Diagnostic>(&r)) FAIL(d->render());
  auto p = compileProgram(preludeFile(), std::get<SourceFile>(r), "t.syn");
  if (auto* d = std::get_if<Diagnostic>(&p)) FAIL(d->render());
  return std::get<Program>(std::move(p));
}

Context preludeCtx() { return compileWith("").ctx; }

Expr vapp(Expr f, Expr a) { return Expr::app(std::move(f), std::move(a)); }
Expr vapp(Expr f, Expr a, Expr b) {
  return vapp(vapp(std::move(f), std::move(a)), std::move(b));
}
Expr consE(Expr h, Expr t) {
  return vapp(Expr::ctor(":"), std::move(h), std::move(t));
}

Value mustVal(const EvalOutcome& o) {
  REQUIRE(o.kind == EvalOutcome::Kind::Val);
  return o.value;
}

Value listOf(std::vector<Value> items) {
  Value v = Value::ctor("[]", {});
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    v = Value::ctor(":", {*it, v});
  return v;
}

// The textbook stutter body over binders l1 (goal argument) and a1/l2 (case
// binders): case l1 of { [] -> []; (:) a1 l2 -> a1 : a1 : stutter l2 }
Expr stutterBody() {
  return Expr::caseOf(
      Expr::var("l1"),
      {MatchBranch{"[]", {}, Expr::ctor("[]")},
       MatchBranch{":", {"a1", "l2"},
                   consE(Expr::var("a1"),
                         consE(Expr::var("a1"),
                               vapp(Expr::var("stutter"), Expr::var("l2"))))}});
}

TopExample stutterExamples() {
  Program p = compileWith(
      "stutter :: [a] -> [a]\n"
      "stutter l = _\n"
      "examples {\n"
      "  stutter [a1, a2] = [a1, a1, a2, a2]\n"
      "}\n");
  REQUIRE(p.goals[0].examples.has_value());
  return *p.goals[0].examples;
}

}  // namespace

TEST_CASE("beta reduction and constructor saturation") {
  Context ctx = preludeCtx();
  ValueEnv env;

  Value t = mustVal(evalExpr(
      ctx, env, vapp(Expr::lam("x", Expr::var("x")), Expr::ctor("True")),
      kDefaultFuel));
  CHECK(valueEqual(t, Value::ctor("True", {})));

  Value just = mustVal(
      evalExpr(ctx, env, vapp(Expr::ctor("Just"), Expr::ctor("True")), kDefaultFuel));
  CHECK(valueEqual(just, Value::ctor("Just", {Value::ctor("True", {})})));

  // A bare constructor is a function value; applying it saturates it.
  Value bare = mustVal(evalExpr(ctx, env, Expr::ctor("Just"), kDefaultFuel));
  CHECK(bare.node().index() == 2);  // closure
  Value applied = mustVal(applyValue(ctx, bare, Value::ctor("False", {}), 10));
  CHECK(valueEqual(applied, Value::ctor("Just", {Value::ctor("False", {})})));

  // Partial application of (:) then the rest.
  Value half = mustVal(
      evalExpr(ctx, env, vapp(Expr::ctor(":"), Expr::ctor("True")), kDefaultFuel));
  Value whole = mustVal(applyValue(ctx, half, Value::ctor("[]", {}), 10));
  CHECK(valueEqual(whole, listOf({Value::ctor("True", {})})));
}

TEST_CASE("the suggested fromMaybe completion evaluates per environment") {
  Context ctx = preludeCtx();
  Expr body = Expr::caseOf(Expr::var("m1"),
                           {MatchBranch{"Nothing", {}, Expr::var("s1")},
                            MatchBranch{"Just", {"a1"}, Expr::var("a1")}});

  ValueEnv w1 = ValueEnv{}
                    .extended("s1", Value::polyConst("c1"))
                    .extended("m1", Value::ctor("Nothing", {}));
  CHECK(valueEqual(mustVal(evalExpr(ctx, w1, body, kDefaultFuel)),
                   Value::polyConst("c1")));

  ValueEnv w2 = ValueEnv{}
                    .extended("s1", Value::polyConst("c1"))
                    .extended("m1", Value::ctor("Just", {Value::polyConst("c2")}));
  CHECK(valueEqual(mustVal(evalExpr(ctx, w2, body, kDefaultFuel)),
                   Value::polyConst("c2")));
}

TEST_CASE("stuck outcomes carry their reason") {
  Context ctx = preludeCtx();
  ValueEnv env;

  EvalOutcome unbound = evalExpr(ctx, env, Expr::var("ghost"), kDefaultFuel);
  REQUIRE(unbound.kind == EvalOutcome::Kind::Stuck);
  CHECK(unbound.reason == StuckReason::Unbound);

  Expr partial = Expr::caseOf(Expr::ctor("True"),
                              {MatchBranch{"False", {}, Expr::ctor("True")}});
  EvalOutcome unmatched = evalExpr(ctx, env, partial, kDefaultFuel);
  REQUIRE(unmatched.kind == EvalOutcome::Kind::Stuck);
  CHECK(unmatched.reason == StuckReason::UnmatchedCase);
}

TEST_CASE("fuel cuts off divergence and is monotone for terminating programs") {
  Context ctx = preludeCtx();

  // loop = \x -> loop x
  Expr loopBody = Expr::lam("x", vapp(Expr::var("loop"), Expr::var("x")));
  ValueEnv env =
      ValueEnv{}.extended("loop", Value::fixpoint("loop", loopBody, ValueEnv{}));
  EvalOutcome diverges =
      evalExpr(ctx, env, vapp(Expr::var("loop"), Expr::ctor("True")), 500);
  CHECK(diverges.kind == EvalOutcome::Kind::OutOfFuel);

  // not (not True), with not bound as a fixpoint.
  Expr notBody = Expr::lam(
      "b", Expr::caseOf(Expr::var("b"),
                        {MatchBranch{"True", {}, Expr::ctor("False")},
                         MatchBranch{"False", {}, Expr::ctor("True")}}));
  ValueEnv env2 =
      ValueEnv{}.extended("not", Value::fixpoint("not", notBody, ValueEnv{}));
  Expr twice = vapp(Expr::var("not"), vapp(Expr::var("not"), Expr::ctor("True")));

  int minimal = -1;
  for (int fuel = 0; fuel < 64; ++fuel) {
    if (evalExpr(ctx, env2, twice, fuel).isVal()) {
      minimal = fuel;
      break;
    }
  }
  REQUIRE(minimal >= 0);
  Value expect = mustVal(evalExpr(ctx, env2, twice, minimal));
  CHECK(valueEqual(expect, Value::ctor("True", {})));
  for (int extra = 1; extra <= 50; ++extra) {
    EvalOutcome o = evalExpr(ctx, env2, twice, minimal + extra);
    REQUIRE(o.isVal());
    CHECK(valueEqual(o.value, expect));
  }
}

TEST_CASE("recursion against the example table answers only on known rows") {
  Context ctx = preludeCtx();
  TopExample ex = stutterExamples();
  auto partial = partialFnFromExamples("stutter", ex, 1);
  REQUIRE(partial.has_value());

  Value a1 = Value::polyConst("a1"), a2 = Value::polyConst("a2");
  EvalOutcome hit = applyValue(ctx, *partial, listOf({a1, a2}), kDefaultFuel);
  CHECK(valueEqual(mustVal(hit), listOf({a1, a1, a2, a2})));

  EvalOutcome miss = applyValue(ctx, *partial, listOf({a2}), kDefaultFuel);
  REQUIRE(miss.kind == EvalOutcome::Kind::Stuck);
  CHECK(miss.reason == StuckReason::UnknownRecursiveCall);
}

TEST_CASE("the stutter winner is unknown under the partial table, ok as a fixpoint") {
  Context ctx = preludeCtx();
  TopExample ex = stutterExamples();
  const Example& row = ex.rows[0];

  // Search-time: the recursive call on the tail has no example row, so the
  // verdict degrades to unknown rather than rejecting the candidate.
  Expr cand = Expr::lam("l1", stutterBody());
  ValueEnv searchEnv = ValueEnv{}.extended(
      "stutter", *partialFnFromExamples("stutter", ex, 1));
  CHECK(exampleSatisfies(ctx, searchEnv, cand, row, kDefaultFuel) ==
        Satisfaction::Unknown);

  // Verdict-time: the candidate bound to itself really recurses.
  ValueEnv finalEnv = ValueEnv{}.extended(
      "stutter", Value::fixpoint("stutter", cand, ValueEnv{}));
  CHECK(exampleSatisfies(ctx, finalEnv, cand, row, kDefaultFuel) ==
        Satisfaction::Satisfied);
}

TEST_CASE("candidate verdicts against the fromMaybe rows") {
  Program p = compileWith(
      "fromMaybe :: a -> Maybe a -> a\n"
      "fromMaybe s m = _\n"
      "examples {\n"
      "  fromMaybe a1 (Just a2) = a2\n"
      "  fromMaybe a1 Nothing = a1\n"
      "}\n");
  const TopExample& ex = *p.goals[0].examples;
  ValueEnv env;

  Expr bare = Expr::lam("s1", Expr::lam("m1", Expr::var("s1")));
  Expr good = Expr::lam(
      "s1", Expr::lam("m1", Expr::caseOf(Expr::var("m1"),
                                         {MatchBranch{"Nothing", {}, Expr::var("s1")},
                                          MatchBranch{"Just", {"a1"}, Expr::var("a1")}})));

  // Row 0 is the Just row: the bare first argument contradicts it.
  CHECK(exampleSatisfies(p.ctx, env, bare, ex.rows[0], kDefaultFuel) ==
        Satisfaction::Contradicted);
  CHECK(exampleSatisfies(p.ctx, env, bare, ex.rows[1], kDefaultFuel) ==
        Satisfaction::Satisfied);
  CHECK(exampleSatisfies(p.ctx, env, good, ex.rows[0], kDefaultFuel) ==
        Satisfaction::Satisfied);
  CHECK(exampleSatisfies(p.ctx, env, good, ex.rows[1], kDefaultFuel) ==
        Satisfaction::Satisfied);
}

TEST_CASE("a closed value satisfies itself as an example") {
  Context ctx = preludeCtx();
  Example ex = Example::ctor(
      ":", {Example::ctor("True", {}),
            Example::ctor(":", {Example::ctor("False", {}),
                                Example::ctor("[]", {})})});
  Expr e = consE(Expr::ctor("True"), consE(Expr::ctor("False"), Expr::ctor("[]")));
  CHECK(exampleSatisfies(ctx, ValueEnv{}, e, ex, kDefaultFuel) ==
        Satisfaction::Satisfied);
}

TEST_CASE("world filtering splits on the scrutinee's head constructor") {
  Context ctx = preludeCtx();
  Value c1 = Value::polyConst("c1"), c2 = Value::polyConst("c2");

  World w1{ValueEnv{}.extended("s1", c1).extended("m1", Value::ctor("Nothing", {})),
           Example::constant("c1")};
  World w2{ValueEnv{}.extended("s1", c1).extended("m1", Value::ctor("Just", {c2})),
           Example::constant("c2")};
  WorldSet w{w1, w2};

  auto justs = filterWorlds(ctx, w, "Just", Expr::var("m1"), kDefaultFuel);
  REQUIRE(justs.has_value());
  REQUIRE(justs->size() == 1);
  CHECK(exampleEqual((*justs)[0].goal, Example::constant("c2")));

  auto nothings = filterWorlds(ctx, w, "Nothing", Expr::var("m1"), kDefaultFuel);
  REQUIRE(nothings.has_value());
  CHECK(nothings->size() == 1);

  // Partition: every world lands in exactly one constructor's set.
  CHECK(justs->size() + nothings->size() == w.size());

  // A constructor from another datatype collects nothing.
  auto trues = filterWorlds(ctx, w, "True", Expr::var("m1"), kDefaultFuel);
  REQUIRE(trues.has_value());
  CHECK(trues->empty());

  // A scrutinee that gets stuck in any world abandons the whole split.
  auto stuck = filterWorlds(ctx, w, "Just", Expr::var("ghost"), kDefaultFuel);
  CHECK(!stuck.has_value());
}

TEST_CASE("beta trace reports each application step") {
  Context ctx = preludeCtx();
  std::vector<std::string> lines;
  EvalTrace trace = [&](const std::string& s) { lines.push_back(s); };
  Expr e = vapp(Expr::lam("x", Expr::var("x")),
                vapp(Expr::lam("y", Expr::var("y")), Expr::ctor("True")));
  EvalOutcome o = evalExpr(ctx, ValueEnv{}, e, kDefaultFuel, &trace);
  REQUIRE(o.isVal());
  CHECK(lines.size() == 2);
}
