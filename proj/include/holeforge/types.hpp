// Core type representations: monotypes, schemes, constructor signatures,
// equality constraints, substitutions, typing contexts and the fresh-name
// supply. Everything here is an immutable value; extension returns a copy.
#pragma once

#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace holeforge {

struct TypeNode;

// Value handle over a shared immutable node. Cheap to copy, deep equality.
class Type {
 public:
  Type() = default;  // empty handle; only for containers, never a valid type

  static Type unifVar(int id);
  static Type rigid(std::string name);
  static Type data(std::string head, std::vector<Type> args = {});
  static Type arrow(Type dom, Type cod);

  const TypeNode& node() const;
  bool valid() const { return p_ != nullptr; }

  bool isUnifVar() const;
  bool isRigid() const;
  bool isData() const;
  bool isArrow() const;

  // Accessors that assert the alternative.
  int unifId() const;
  const std::string& rigidName() const;
  const struct DataTy& dataTy() const;
  Type arrowDom() const;
  Type arrowCod() const;

 private:
  explicit Type(std::shared_ptr<const TypeNode> p) : p_(std::move(p)) {}
  std::shared_ptr<const TypeNode> p_;
};

struct UnifVar {
  int id;
};

struct RigidVar {
  std::string name;
};

// Datatype application, e.g. Int, Maybe a, Exp Int. The list type uses the
// head "[]" and prints as [t].
struct DataTy {
  std::string head;
  std::vector<Type> args;
};

struct ArrowTy {
  Type dom;
  Type cod;
};

struct TypeNode : std::variant<UnifVar, RigidVar, DataTy, ArrowTy> {
  using variant::variant;
};

inline const TypeNode& Type::node() const {
  assert(p_);
  return *p_;
}

bool operator==(const Type& a, const Type& b);
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }

// Total order on types, used to normalize constraint orientation and to keep
// set iteration deterministic. Variant index first, then fields.
int compareTypes(const Type& a, const Type& b);

// One equality constraint. Always stored with the lexicographically smaller
// side first (per compareTypes).
struct Eq {
  Type lhs;
  Type rhs;

  static Eq normalized(Type a, Type b) {
    if (compareTypes(a, b) <= 0) return Eq{std::move(a), std::move(b)};
    return Eq{std::move(b), std::move(a)};
  }
};

bool operator==(const Eq& a, const Eq& b);
int compareEq(const Eq& a, const Eq& b);

// A finite set of equality constraints with set semantics: insertion order
// and orientation do not matter.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  static ConstraintSet of(std::vector<Eq> eqs);

  ConstraintSet withEq(Type a, Type b) const;
  ConstraintSet unionWith(const ConstraintSet& other) const;

  bool subsetOf(const ConstraintSet& other) const;
  bool empty() const { return eqs_.empty(); }
  size_t size() const { return eqs_.size(); }
  const std::vector<Eq>& items() const { return eqs_; }

  bool operator==(const ConstraintSet& other) const;

 private:
  std::vector<Eq> eqs_;  // sorted by compareEq, unique, both sides normalized
};

// Substitution over unification-variable ids and rigid type-variable names.
// Most call sites apply it; unify keeps its result idempotent.
class Subst {
 public:
  Subst() = default;

  bool empty() const { return u_.empty() && r_.empty(); }
  void bindUnif(int id, Type t) { u_[id] = std::move(t); }
  void bindRigid(const std::string& name, Type t) { r_[name] = std::move(t); }
  std::optional<Type> lookupUnif(int id) const;
  std::optional<Type> lookupRigid(const std::string& name) const;

  Type apply(const Type& t) const;
  ConstraintSet apply(const ConstraintSet& c) const;
  Eq apply(const Eq& e) const;

  // compose(a, b) applies b first, then a: result(t) == a(b(t)).
  static Subst compose(const Subst& after, const Subst& before);

  const std::map<int, Type>& unifBindings() const { return u_; }
  const std::map<std::string, Type>& rigidBindings() const { return r_; }

 private:
  std::map<int, Type> u_;
  std::map<std::string, Type> r_;
};

// Polymorphic type scheme: forall quantified. constraints => body. Plain
// bindings carry an empty constraint set.
struct Scheme {
  std::vector<std::string> quantified;
  ConstraintSet constraints;
  Type body;

  static Scheme mono(Type t) { return Scheme{{}, {}, std::move(t)}; }
};

// Constructor signature K :: forall quantified. bundled => argTypes -> head
// quantified*. The result type is always the head applied to the quantified
// variables in order; GADTs put the interesting part into `bundled`.
struct CtorSig {
  std::string name;
  std::vector<std::string> quantified;
  ConstraintSet bundled;
  std::vector<Type> argTypes;
  std::string resultHead;

  Type resultType() const;
  Type fullType() const;  // argTypes -> resultType
  Scheme scheme() const { return Scheme{quantified, bundled, fullType()}; }
};

struct DataDecl {
  std::string name;
  int arity = 0;
  std::vector<std::string> ctors;  // declaration order
};

// Ordered typing context. Insertion order is observable: it drives candidate
// enumeration, so all three sections are kept as vectors.
struct Context {
  std::vector<std::pair<std::string, Scheme>> vars;
  std::vector<CtorSig> ctors;
  std::vector<std::pair<std::string, std::string>> polyConsts;  // name -> tyvar
  std::vector<DataDecl> datatypes;

  const Scheme* lookupVar(const std::string& name) const;
  const CtorSig* lookupCtor(const std::string& name) const;
  const std::string* lookupPolyConst(const std::string& name) const;
  const DataDecl* lookupData(const std::string& name) const;

  bool boundAnywhere(const std::string& name) const;

  Context withVar(const std::string& name, Scheme s) const;
};

// Mints unification-variable ids (and nothing else). Display names derived
// from ids use the "?" prefix, which the grammar reserves, so minted names
// can never collide with parsed identifiers.
class FreshSupply {
 public:
  FreshSupply() = default;
  explicit FreshSupply(int next) : next_(next) {}

  int freshId() { return next_++; }
  Type freshUnifVar() { return Type::unifVar(freshId()); }
  int peek() const { return next_; }

 private:
  int next_ = 0;
};

std::set<int> freeUnifVars(const Type& t);
std::set<int> freeUnifVars(const ConstraintSet& c);
std::set<int> freeUnifVars(const Subst& s);
std::set<std::string> freeRigidVars(const Type& t);
void collectRigidVars(const Type& t, std::set<std::string>& out);

bool occursUnif(int id, const Type& t);
bool occursRigid(const std::string& name, const Type& t);

// Peels n leading arrows: [d1, ..., dn] and the final codomain.
struct Peeled {
  std::vector<Type> doms;
  Type cod;
};
Peeled peelArrows(const Type& t);

}  // namespace holeforge
