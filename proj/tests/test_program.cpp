#include <string>
#include <variant>

#include "doctest.h"
#include "holeforge/prelude.hpp"
#include "holeforge/pretty.hpp"
#include "holeforge/program.hpp"

using namespace holeforge;

namespace {

SourceFile mustParse(const std::string& text) {
  ParseResult r = parseSourceFile(text, "t.syn");
  if (auto* d = std::get_if<Diagnostic>(&r)) FAIL(d->render());
  return std::get<SourceFile>(std::move(r));
}

Program compileOk(const std::string& text) {
  auto r = compileProgram(preludeFile(), mustParse(text), "t.syn");
  if (auto* d = std::get_if<Diagnostic>(&r)) FAIL(d->render());
  return std::get<Program>(std::move(r));
}

std::string compileErr(const std::string& text) {
  auto r = compileProgram(preludeFile(), mustParse(text), "t.syn");
  if (std::holds_alternative<Program>(r)) {
    FAIL("expected a diagnostic");
  }
  return std::get<Diagnostic>(r).code;
}

}  // namespace

TEST_CASE("prelude assembles into the expected context") {
  Program p = compileOk("");

  REQUIRE(p.ctx.datatypes.size() == 5);
  CHECK(p.ctx.datatypes[0].name == "Bool");
  CHECK(p.ctx.datatypes[1].name == "Int");
  CHECK(p.ctx.datatypes[2].name == "[]");
  CHECK(p.ctx.datatypes[3].name == "Maybe");
  CHECK(p.ctx.datatypes[4].name == "Exp");
  CHECK(p.ctx.datatypes[1].arity == 0);
  CHECK(p.ctx.datatypes[2].arity == 1);
  CHECK(p.ctx.datatypes[1].ctors.empty());  // opaque

  REQUIRE(p.ctx.ctors.size() == 10);
  CHECK(p.ctx.ctors[0].name == "True");
  CHECK(p.ctx.ctors[1].name == "False");
  CHECK(p.ctx.ctors[2].name == "[]");
  CHECK(p.ctx.ctors[3].name == ":");
  CHECK(p.ctx.ctors[4].name == "Nothing");
  CHECK(p.ctx.ctors[5].name == "Just");
  CHECK(p.ctx.ctors[6].name == "Lit");
  CHECK(p.ctx.ctors[7].name == "Plus");
  CHECK(p.ctx.ctors[8].name == "Eq");
  CHECK(p.ctx.ctors[9].name == "If");

  CHECK(p.ctx.ctors[7].bundled.size() == 1);  // a ~ Int travels with Plus
  CHECK(p.ctx.vars.empty());
  CHECK(p.goals.empty());
}

TEST_CASE("synthesis goal compiles with its examples and stays out of scope") {
  Program p = compileOk(
      "fromMaybe :: a -> Maybe a -> a\n"
      "fromMaybe s m = _\n"
      "examples {\n"
      "  fromMaybe a1 (Just a2) = a2\n"
      "  fromMaybe a1 Nothing = a1\n"
      "}\n");

  REQUIRE(p.goals.size() == 1);
  const CompiledGoal& g = p.goals[0];
  CHECK(g.name == "fromMaybe");
  CHECK(g.isSynthGoal);
  CHECK(g.params == std::vector<std::string>{"s", "m"});
  CHECK(g.sig.quantified == std::vector<std::string>{"a"});
  REQUIRE(g.examples.has_value());
  CHECK(g.examples->rows.size() == 2);

  // The unfinished goal must not become a context component.
  CHECK(p.ctx.vars.empty());
}

TEST_CASE("bare signatures become context components in file order") {
  Program p = compileOk(
      "map :: (a -> b) -> [a] -> [b]\n"
      "isEven :: Int -> Bool\n"
      "l :: [Int]\n"
      "goal :: [Bool]\n"
      "goal = _\n");

  REQUIRE(p.ctx.vars.size() == 3);
  CHECK(p.ctx.vars[0].first == "map");
  CHECK(p.ctx.vars[1].first == "isEven");
  CHECK(p.ctx.vars[2].first == "l");
  CHECK(p.ctx.vars[0].second.quantified == std::vector<std::string>{"a", "b"});
  CHECK(p.ctx.vars[1].second.quantified.empty());
  REQUIRE(p.goals.size() == 1);
  CHECK(p.goals[0].params.empty());
}

TEST_CASE("hole-free equations are both goals and context components") {
  Program p = compileOk(
      "not :: Bool -> Bool\n"
      "not b = case b of { True -> False; False -> True }\n"
      "use :: Bool -> Bool\n"
      "use x = not (not x)\n");

  REQUIRE(p.goals.size() == 2);
  CHECK(!p.goals[0].isSynthGoal);
  CHECK(!p.goals[1].isSynthGoal);
  REQUIRE(p.ctx.vars.size() == 2);
  CHECK(p.ctx.vars[0].first == "not");
  CHECK(p.ctx.vars[1].first == "use");
}

TEST_CASE("bindings may call earlier bindings and themselves, not later ones") {
  compileOk(
      "len :: [Int] -> Int\n"
      "len l = case l of { [] -> 0; (:) x xs -> len xs }\n");

  CHECK(compileErr("f :: Bool\n"
                   "f = g\n"
                   "g :: Bool\n"
                   "g = True\n") == "E220");
}

TEST_CASE("integer literals register as nullary Int constructors") {
  Program p = compileOk(
      "two :: Int\n"
      "two = 2\n"
      "pick :: Int\n"
      "pick = _\n"
      "examples {\n"
      "  pick = 10\n"
      "}\n");

  REQUIRE(p.ctx.ctors.size() == 12);
  CHECK(p.ctx.ctors[10].name == "2");  // numeric order, after declared ctors
  CHECK(p.ctx.ctors[11].name == "10");
  CHECK(p.ctx.ctors[10].argTypes.empty());
  CHECK(p.ctx.ctors[10].resultHead == "Int");
  // Int stays opaque: literals never join its constructor list, so nothing
  // tries to refine or case over Int.
  CHECK(p.ctx.lookupData("Int")->ctors.empty());
}

TEST_CASE("well-formedness diagnostics carry the right codes") {
  CHECK(compileErr("data Bool = T | F\n") == "E201");
  CHECK(compileErr("data Shape = Just Int\n") == "E202");
  CHECK(compileErr("data Pair a a = P a a\n") == "E203");
  CHECK(compileErr("data Box a = Box b\n") == "E204");
  {
    // Same-file duplicates die in the parser; a user binding colliding with a
    // custom prelude binding is the assembler's to report.
    SourceFile pre = mustParse("data Bool = True | False\nf :: Bool\nf = True\n");
    auto r = compileProgram(pre, mustParse("f :: Bool\nf = True\n"), "t.syn");
    REQUIRE(std::holds_alternative<Diagnostic>(r));
    CHECK(std::get<Diagnostic>(r).code == "E207");
  }
  CHECK(compileErr("f :: Missing\nf = True\n") == "E210");
  CHECK(compileErr("f :: Maybe\nf = Nothing\n") == "E211");
  CHECK(compileErr("f :: Maybe Int Int\nf = Nothing\n") == "E211");
  CHECK(compileErr("f :: Bool -> Bool\nf x = Just _\n") == "E209");
  CHECK(compileErr("f :: Maybe Int -> Int\n"
                   "f m = case m of { Just -> 1; Nothing -> 0 }\n") == "E216");
  CHECK(compileErr("f :: Bool -> Bool\nf x y = x\n") == "E217");
  CHECK(compileErr("f :: Bool -> Bool -> Bool\nf x x = x\n") == "E219");
  CHECK(compileErr("f :: Bool\nf = nope\n") == "E220");
  CHECK(compileErr("f :: Bool\nf = Nope\n") == "E104");
}

TEST_CASE("example and option diagnostics carry the right codes") {
  CHECK(compileErr("f :: Bool -> Bool\nf x = _\n"
                   "examples {\n  f True = Nope\n}\n") == "E104");
  CHECK(compileErr("f :: Int -> Int\nf x = _\n"
                   "examples {\n  f a1 = a1\n}\n") == "E105");
  CHECK(compileErr("f :: Maybe Int -> Bool\nf m = _\n"
                   "examples {\n  f (Just 1 2) = True\n}\n") == "E110");
  CHECK(compileErr("f :: [Int] -> [Int]\nf l = _\n"
                   "examples {\n  recArg = 1\n}\n") == "E205");
  CHECK(compileErr("f :: Bool\nf = _\n"
                   "examples {\n  ctx = (nobody)\n}\n") == "E206");
  CHECK(compileErr("g :: Bool\ng = _\n"
                   "f :: Bool\nf = _\n"
                   "examples {\n  ctx = (g)\n}\n") == "E206");
}

TEST_CASE("examples on a hole-free equation are accepted for later checking") {
  Program p = compileOk(
      "not :: Bool -> Bool\n"
      "not b = case b of { True -> False; False -> True }\n"
      "examples {\n"
      "  not True = False\n"
      "}\n");
  REQUIRE(p.goals.size() == 1);
  CHECK(!p.goals[0].isSynthGoal);
  CHECK(p.goals[0].examples.has_value());
}

TEST_CASE("bindingLambda wraps the body in the equation parameters") {
  Program p = compileOk(
      "const2 :: Bool -> Int -> Bool\n"
      "const2 x y = x\n");
  Expr lam = bindingLambda(p.goals[0]);
  CHECK(printExpr(lam) == "\\x -> \\y -> x");
}
