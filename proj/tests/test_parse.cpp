#include <string>

#include "doctest.h"
#include "holeforge/parse.hpp"
#include "holeforge/pretty.hpp"

using namespace holeforge;

namespace {

SourceFile parseOk(const std::string& text) {
  ParseResult r = parseSourceFile(text, "test.syn");
  if (auto* d = std::get_if<Diagnostic>(&r)) {
    INFO(d->render());
    REQUIRE(false);
  }
  return std::get<SourceFile>(std::move(r));
}

Diagnostic parseErr(const std::string& text) {
  ParseResult r = parseSourceFile(text, "test.syn");
  REQUIRE(std::holds_alternative<Diagnostic>(r));
  return std::get<Diagnostic>(std::move(r));
}

const char* kPreludeish = R"(data Bool = True | False
data Int
data [a] = [] | (:) a [a]
data Maybe a = Nothing | Just a
data Exp a where {
  Lit :: a -> Exp a
  Plus :: (a ~ Int) => Exp Int -> Exp Int -> Exp a
  Eq :: (a ~ Bool) => Exp Int -> Exp Int -> Exp a
  If :: Exp Bool -> Exp a -> Exp a -> Exp a
}
)";

const char* kFromMaybe = R"(fromMaybe :: a -> Maybe a -> a
fromMaybe s1 m1 = _
examples {
  fromMaybe a1 Nothing = a1
  fromMaybe a1 (Just a2) = a2
  ctx = (Just, Nothing)
}
)";

}  // namespace

TEST_CASE("polymorphic constant names are tyvar plus index") {
  std::string stem;
  CHECK(isPolyConstName("a1", &stem));
  CHECK(stem == "a");
  CHECK(isPolyConstName("xs12", &stem));
  CHECK(stem == "xs");
  CHECK(!isPolyConstName("a"));
  CHECK(!isPolyConstName("1a"));
  CHECK(!isPolyConstName("x2y"));
  CHECK(!isPolyConstName(""));
  CHECK(!isPolyConstName("A1"));
}

TEST_CASE("datatype declarations cover plain, opaque, list and constrained forms") {
  SourceFile f = parseOk(kPreludeish);
  REQUIRE(f.datatypes.size() == 5);

  const DataDef& b = f.datatypes[0];
  CHECK(b.name == "Bool");
  CHECK(b.params.empty());
  REQUIRE(b.ctors.size() == 2);
  CHECK(b.ctors[0].name == "True");
  CHECK(b.ctors[0].argTypes.empty());
  CHECK(b.ctors[0].resultHead == "Bool");

  CHECK(f.datatypes[1].name == "Int");
  CHECK(f.datatypes[1].opaque);
  CHECK(f.datatypes[1].ctors.empty());

  const DataDef& list = f.datatypes[2];
  CHECK(list.name == "[]");
  CHECK(list.params == std::vector<std::string>{"a"});
  REQUIRE(list.ctors.size() == 2);
  CHECK(list.ctors[0].name == "[]");
  CHECK(list.ctors[1].name == ":");
  REQUIRE(list.ctors[1].argTypes.size() == 2);
  CHECK(list.ctors[1].argTypes[0] == Type::rigid("a"));
  CHECK(list.ctors[1].argTypes[1] == Type::data("[]", {Type::rigid("a")}));

  const DataDef& mb = f.datatypes[3];
  REQUIRE(mb.ctors.size() == 2);
  CHECK(mb.ctors[1].name == "Just");
  CHECK(mb.ctors[1].quantified == std::vector<std::string>{"a"});
  CHECK(mb.ctors[1].argTypes == std::vector<Type>{Type::rigid("a")});

  const DataDef& exp = f.datatypes[4];
  REQUIRE(exp.ctors.size() == 4);
  CHECK(exp.ctors[0].name == "Lit");
  CHECK(exp.ctors[0].bundled.empty());
  CHECK(exp.ctors[0].argTypes == std::vector<Type>{Type::rigid("a")});
  const CtorSig& plus = exp.ctors[1];
  CHECK(plus.name == "Plus");
  CHECK(plus.bundled ==
        ConstraintSet().withEq(Type::rigid("a"), Type::data("Int")));
  REQUIRE(plus.argTypes.size() == 2);
  CHECK(plus.argTypes[0] == Type::data("Exp", {Type::data("Int")}));
  CHECK(exp.ctors[2].bundled ==
        ConstraintSet().withEq(Type::rigid("a"), Type::data("Bool")));
  CHECK(exp.ctors[3].bundled.empty());
  REQUIRE(exp.ctors[3].argTypes.size() == 3);
  CHECK(exp.ctors[3].argTypes[0] == Type::data("Exp", {Type::data("Bool")}));
}

TEST_CASE("goal with equation rows and a ctx option") {
  SourceFile f = parseOk(kFromMaybe);
  REQUIRE(f.bindings.size() == 1);
  const Binding& b = f.bindings[0];
  CHECK(b.name == "fromMaybe");
  CHECK(b.signature ==
        Type::arrow(Type::rigid("a"),
                    Type::arrow(Type::data("Maybe", {Type::rigid("a")}),
                                Type::rigid("a"))));
  REQUIRE(b.params.has_value());
  CHECK(*b.params == std::vector<std::string>{"s1", "m1"});
  REQUIRE(b.body.has_value());
  CHECK(std::holds_alternative<HoleE>(b.body->node()));

  REQUIRE(b.examples.has_value());
  REQUIRE(b.examples->rows.size() == 2);
  // constants registered in first-use order with their stems
  REQUIRE(b.examples->constants.size() == 2);
  CHECK(b.examples->constants[0] == std::make_pair(std::string("a1"), std::string("a")));
  CHECK(b.examples->constants[1] == std::make_pair(std::string("a2"), std::string("a")));

  // row 1: a1 => Nothing => a1
  const Example& r1 = b.examples->rows[0];
  REQUIRE(r1.isIO());
  const auto& io1 = std::get<IOExNode>(r1.node());
  CHECK(valueEqual(io1.input, Value::polyConst("a1")));
  const auto& io1b = std::get<IOExNode>(io1.output.node());
  CHECK(valueEqual(io1b.input, Value::ctor("Nothing", {})));
  CHECK(exampleEqual(io1b.output, Example::constant("a1")));

  // row 2: a1 => Just a2 => a2
  const auto& io2 = std::get<IOExNode>(b.examples->rows[1].node());
  const auto& io2b = std::get<IOExNode>(io2.output.node());
  CHECK(valueEqual(io2b.input,
                   Value::ctor("Just", {Value::polyConst("a2")})));

  REQUIRE(b.options.ctx.has_value());
  CHECK(*b.options.ctx == std::vector<std::string>{"Just", "Nothing"});
  CHECK(!b.options.recArg.has_value());
}

TEST_CASE("stutter-style list example row desugars through list sugar") {
  SourceFile f = parseOk(R"(stutter :: [a] -> [a]
stutter l1 = _
examples {
  stutter [a1, a2] = [a1, a1, a2, a2]
  recArg = 0
}
)");
  const Binding& b = f.bindings[0];
  REQUIRE(b.examples.has_value());
  REQUIRE(b.examples->rows.size() == 1);
  CHECK(b.options.recArg == 0);

  const auto& io = std::get<IOExNode>(b.examples->rows[0].node());
  Value nil = Value::ctor("[]", {});
  auto cons = [](Value h, Value t) {
    return Value::ctor(":", {std::move(h), std::move(t)});
  };
  CHECK(valueEqual(io.input, cons(Value::polyConst("a1"),
                                  cons(Value::polyConst("a2"), nil))));
  Example expect = Example::ctor(
      ":", {Example::constant("a1"),
            Example::ctor(
                ":", {Example::constant("a1"),
                      Example::ctor(
                          ":", {Example::constant("a2"),
                                Example::ctor(":", {Example::constant("a2"),
                                                    Example::ctor("[]", {})})})})});
  CHECK(exampleEqual(io.output, expect));
}

TEST_CASE("an example block with only options records no example set") {
  SourceFile f = parseOk(R"(fromMaybe :: a -> Maybe a -> a
fromMaybe s1 m1 = _
examples {
  ctx = (Just, Nothing)
}
)");
  CHECK(!f.bindings[0].examples.has_value());
  REQUIRE(f.bindings[0].options.ctx.has_value());
  CHECK(f.bindings[0].options.ctx->size() == 2);
}

TEST_CASE("equations desugar bodies with lambdas, cases and literals") {
  SourceFile f = parseOk(R"(incAll :: [Int] -> [Int]
incAll l1 = case l1 of {
  [] -> []
  (:) x xs -> (:) 1 (incAll xs)
}
twice :: (Int -> Int) -> Int -> Int
twice = \f x -> f (f x)
)");
  REQUIRE(f.bindings.size() == 2);
  const Binding& inc = f.bindings[0];
  const auto& c = std::get<CaseE>(inc.body->node());
  CHECK(std::get<VarE>(c.scrutinee.node()).name == "l1");
  REQUIRE(c.branches.size() == 2);
  CHECK(c.branches[0].ctor == "[]");
  CHECK(c.branches[0].binders.empty());
  CHECK(c.branches[1].ctor == ":");
  CHECK(c.branches[1].binders == std::vector<std::string>{"x", "xs"});
  // (:) 1 (incAll xs): literal becomes a constructor leaf
  AppSpine spine = flattenApp(c.branches[1].body);
  CHECK(std::get<CtorE>(spine.head.node()).name == ":");
  REQUIRE(spine.args.size() == 2);
  CHECK(std::get<CtorE>(spine.args[0].node()).name == "1");

  const Binding& twice = f.bindings[1];
  CHECK(twice.params->empty());
  const auto& lam = std::get<LamE>(twice.body->node());
  CHECK(lam.binder == "f");
  CHECK(std::get<LamE>(lam.body.node()).binder == "x");
}

TEST_CASE("newlines continue inside parens and brackets") {
  SourceFile f = parseOk("f :: (Int ->\n  Int) -> [\n  Int\n  ]\n");
  CHECK(f.bindings[0].signature ==
        Type::arrow(Type::arrow(Type::data("Int"), Type::data("Int")),
                    Type::data("[]", {Type::data("Int")})));
}

TEST_CASE("bare => rows parse right-associated") {
  SourceFile f = parseOk(R"(pick :: Bool -> Bool -> Bool
pick x y = _
examples {
  True => False => False
}
)");
  const auto& io = std::get<IOExNode>(f.bindings[0].examples->rows[0].node());
  CHECK(valueEqual(io.input, Value::ctor("True", {})));
  const auto& io2 = std::get<IOExNode>(io.output.node());
  CHECK(valueEqual(io2.input, Value::ctor("False", {})));
  CHECK(exampleEqual(io2.output, Example::ctor("False", {})));
}

TEST_CASE("parse errors carry position and stable codes") {
  CHECK(parseErr("f x = _\n").code == "E212");
  CHECK(parseErr("f :: Int\nf :: Int\n").code == "E207");
  CHECK(parseErr("f :: Int\nf = 1\nf = 2\n").code == "E213");
  CHECK(parseErr("f :: Int @ Int\n").code == "E001");
  CHECK(parseErr("f :: (Int -> Int\n").code == "E002");
  CHECK(parseErr("data Foo a where {\n  K :: Int -> Foo Int\n}\n").code ==
        "E214");
  CHECK(parseErr("f :: a Int\n").code == "E215");

  Diagnostic d = parseErr("g :: Int\n\nh ::\n");
  CHECK(d.pos.line == 3);
  CHECK(d.render() == "test.syn:3:5: type expected [E003]");
}

TEST_CASE("example rows reject non-values and unknown option keys") {
  std::string header = "f :: Int -> Int\nf x = _\n";
  CHECK(parseErr(header + "examples {\n  f (g 1) = 1\n}\n").code == "E106");
  CHECK(parseErr(header + "examples {\n  f (1 => 2) = 1\n}\n").code == "E103");
  CHECK(parseErr(header + "examples {\n  foo = 3\n}\n").code == "E101");
  CHECK(parseErr(header + "examples {\n  recArg = 0\n  recArg = 1\n}\n").code ==
        "E107");
  CHECK(parseErr(header + "examples {\n  a1 Nothing = 1\n}\n").code == "E108");
  CHECK(parseErr("examples {\n}\n").code == "E109");
  CHECK(parseErr(header + "examples { depth = 0 }\n").code == "E102");
}

TEST_CASE("printing and reparsing is a fixpoint across surface forms") {
  for (const char* text : {kPreludeish, kFromMaybe}) {
    SourceFile p1 = parseOk(text);
    std::string s1 = printSourceFile(p1);
    SourceFile p2 = parseOk(s1);
    std::string s2 = printSourceFile(p2);
    CHECK(s1 == s2);
  }

  // one with every flavor of body plus options
  SourceFile p1 = parseOk(R"(data Pair a = MkPair a a
dup :: a -> Pair a
dup x1 = case MkPair x1 x1 of {
  MkPair u v -> MkPair u v
}
go :: [Int] -> [Int]
go l1 = _
examples {
  go [1, 2] = [2, 1]
  ctx = ((:), [])
  recArg = 0
  depth = 2
  maxCandidates = 4
}
)");
  std::string s1 = printSourceFile(p1);
  SourceFile p2 = parseOk(s1);
  CHECK(printSourceFile(p2) == s1);
  REQUIRE(p2.bindings.size() == 2);
  CHECK(p2.bindings[1].options.maxCandidates == 4);
  CHECK(*p2.bindings[1].options.ctx == std::vector<std::string>{":", "[]"});
}
