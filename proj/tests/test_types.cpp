#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "holeforge/types.hpp"

using namespace holeforge;

namespace {

Type tInt() { return Type::data("Int"); }
Type tBool() { return Type::data("Bool"); }
Type tList(Type t) { return Type::data("[]", {std::move(t)}); }

// Random monotype over a small alphabet, for property tests. Depth-bounded so
// the distribution does not blow up.
Type randomType(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 5);
  switch (pick(rng)) {
    case 0:
      return Type::unifVar(static_cast<int>(rng() % 6));
    case 1:
      return Type::rigid(rng() % 2 ? "a" : "b");
    case 2:
      return tInt();
    case 3:
      return tBool();
    case 4:
      return tList(randomType(rng, depth - 1));
    default:
      return Type::arrow(randomType(rng, depth - 1), randomType(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("type equality is structural, not pointer identity") {
  Type a = Type::arrow(tInt(), tList(Type::rigid("a")));
  Type b = Type::arrow(tInt(), tList(Type::rigid("a")));
  CHECK(a == b);
  CHECK(a != Type::arrow(tInt(), tList(Type::rigid("b"))));
  CHECK(Type::unifVar(3) == Type::unifVar(3));
  CHECK(Type::unifVar(3) != Type::unifVar(4));
  CHECK(Type::data("Maybe", {tInt()}) != Type::data("Maybe", {tBool()}));
}

TEST_CASE("compareTypes is a strict total order on distinct types") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 2000; i++) {
    Type a = randomType(rng, 3);
    Type b = randomType(rng, 3);
    Type c = randomType(rng, 3);
    int ab = compareTypes(a, b);
    // antisymmetry and consistency with ==
    CHECK(ab == -compareTypes(b, a));
    CHECK((ab == 0) == (a == b));
    // transitivity of <=
    if (ab <= 0 && compareTypes(b, c) <= 0) CHECK(compareTypes(a, c) <= 0);
  }
}

TEST_CASE("constraint sets ignore orientation and insertion order") {
  Type u0 = Type::unifVar(0);
  Type u1 = Type::unifVar(1);

  ConstraintSet c1 = ConstraintSet().withEq(u0, tInt()).withEq(u1, tBool());
  ConstraintSet c2 = ConstraintSet().withEq(tBool(), u1).withEq(tInt(), u0);
  CHECK(c1 == c2);

  // duplicates collapse
  ConstraintSet c3 = c1.withEq(tInt(), u0);
  CHECK(c3 == c1);
  CHECK(c3.size() == 2);

  CHECK(c1.subsetOf(c1.withEq(u0, u1)));
  CHECK(!c1.withEq(u0, u1).subsetOf(c1));

  ConstraintSet u = ConstraintSet().withEq(u0, tInt());
  ConstraintSet v = ConstraintSet().withEq(u1, tBool());
  CHECK(u.unionWith(v) == c1);
  CHECK(v.unionWith(u) == c1);
}

TEST_CASE("substitution application reaches every position") {
  Subst s;
  s.bindUnif(0, tInt());
  s.bindRigid("a", tBool());

  Type t = Type::arrow(Type::unifVar(0),
                       tList(Type::data("Maybe", {Type::rigid("a")})));
  Type want = Type::arrow(tInt(), tList(Type::data("Maybe", {tBool()})));
  CHECK(s.apply(t) == want);

  // untouched variables survive
  CHECK(s.apply(Type::unifVar(7)) == Type::unifVar(7));
  CHECK(s.apply(Type::rigid("c")) == Type::rigid("c"));
}

TEST_CASE("compose(a, b) applies b first then a, on random types") {
  std::mt19937 rng(77);
  for (int i = 0; i < 500; i++) {
    Subst a, b;
    a.bindUnif(0, randomType(rng, 2));
    a.bindRigid("a", randomType(rng, 2));
    b.bindUnif(1, randomType(rng, 2));
    b.bindUnif(2, randomType(rng, 2));
    b.bindRigid("b", randomType(rng, 2));

    Subst ab = Subst::compose(a, b);
    for (int j = 0; j < 5; j++) {
      Type t = randomType(rng, 3);
      CHECK(ab.apply(t) == a.apply(b.apply(t)));
    }
  }
}

TEST_CASE("substitution applied to a constraint set renormalizes orientation") {
  // after substitution the smaller side may flip; sets must still compare equal
  Subst s;
  s.bindUnif(5, Type::rigid("z"));
  ConstraintSet c = ConstraintSet().withEq(Type::unifVar(5), Type::rigid("a"));
  ConstraintSet want = ConstraintSet().withEq(Type::rigid("a"), Type::rigid("z"));
  CHECK(s.apply(c) == want);
}

TEST_CASE("fresh supply never repeats across 100000 draws") {
  FreshSupply supply;
  std::set<int> seen;
  for (int i = 0; i < 100000; i++) {
    int id = supply.freshId();
    CHECK(seen.insert(id).second);
  }
  CHECK(seen.size() == 100000);
}

TEST_CASE("free variable collection and occurs checks") {
  Type t = Type::arrow(Type::unifVar(1),
                       tList(Type::arrow(Type::rigid("a"), Type::unifVar(4))));
  CHECK(freeUnifVars(t) == std::set<int>{1, 4});
  CHECK(freeRigidVars(t) == std::set<std::string>{"a"});
  CHECK(occursUnif(4, t));
  CHECK(!occursUnif(2, t));
  CHECK(occursRigid("a", t));
  CHECK(!occursRigid("b", t));
}

TEST_CASE("peelArrows splits a curried type and keeps the tail") {
  Type t = Type::arrow(tInt(), Type::arrow(tBool(), tList(tInt())));
  Peeled p = peelArrows(t);
  REQUIRE(p.doms.size() == 2);
  CHECK(p.doms[0] == tInt());
  CHECK(p.doms[1] == tBool());
  CHECK(p.cod == tList(tInt()));

  Peeled q = peelArrows(tInt());
  CHECK(q.doms.empty());
  CHECK(q.cod == tInt());
}

TEST_CASE("constructor signature rebuilds its full curried type") {
  // (:) :: a -> [a] -> [a]
  CtorSig cons;
  cons.name = ":";
  cons.quantified = {"a"};
  cons.argTypes = {Type::rigid("a"), tList(Type::rigid("a"))};
  cons.resultHead = "[]";

  CHECK(cons.resultType() == tList(Type::rigid("a")));
  Type want = Type::arrow(Type::rigid("a"),
                          Type::arrow(tList(Type::rigid("a")),
                                      tList(Type::rigid("a"))));
  CHECK(cons.fullType() == want);

  Scheme sch = cons.scheme();
  CHECK(sch.quantified == std::vector<std::string>{"a"});
  CHECK(sch.body == want);
  CHECK(sch.constraints.empty());
}

TEST_CASE("context lookup respects shadowing and section order") {
  Context ctx;
  ctx.vars.push_back({"x", Scheme::mono(tInt())});
  ctx = ctx.withVar("y", Scheme::mono(tBool()));
  ctx = ctx.withVar("x", Scheme::mono(tBool()));  // shadows the first x

  const Scheme* got = ctx.lookupVar("x");
  REQUIRE(got != nullptr);
  CHECK(got->body == tBool());
  CHECK(ctx.lookupVar("zzz") == nullptr);

  CtorSig t{"True", {}, {}, {}, "Bool"};
  ctx.ctors.push_back(t);
  ctx.polyConsts.push_back({"a1", "a"});
  CHECK(ctx.boundAnywhere("True"));
  CHECK(ctx.boundAnywhere("a1"));
  CHECK(ctx.boundAnywhere("y"));
  CHECK(!ctx.boundAnywhere("False"));
}
