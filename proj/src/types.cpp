#include "holeforge/types.hpp"

#include <algorithm>

namespace holeforge {

Type Type::unifVar(int id) {
  return Type(std::make_shared<const TypeNode>(UnifVar{id}));
}

Type Type::rigid(std::string name) {
  return Type(std::make_shared<const TypeNode>(RigidVar{std::move(name)}));
}

Type Type::data(std::string head, std::vector<Type> args) {
  return Type(
      std::make_shared<const TypeNode>(DataTy{std::move(head), std::move(args)}));
}

Type Type::arrow(Type dom, Type cod) {
  return Type(
      std::make_shared<const TypeNode>(ArrowTy{std::move(dom), std::move(cod)}));
}

bool Type::isUnifVar() const { return std::holds_alternative<UnifVar>(node()); }
bool Type::isRigid() const { return std::holds_alternative<RigidVar>(node()); }
bool Type::isData() const { return std::holds_alternative<DataTy>(node()); }
bool Type::isArrow() const { return std::holds_alternative<ArrowTy>(node()); }

int Type::unifId() const { return std::get<UnifVar>(node()).id; }
const std::string& Type::rigidName() const {
  return std::get<RigidVar>(node()).name;
}
const DataTy& Type::dataTy() const { return std::get<DataTy>(node()); }
Type Type::arrowDom() const { return std::get<ArrowTy>(node()).dom; }
Type Type::arrowCod() const { return std::get<ArrowTy>(node()).cod; }

bool operator==(const Type& a, const Type& b) {
  return compareTypes(a, b) == 0;
}

int compareTypes(const Type& a, const Type& b) {
  if (&a.node() == &b.node()) return 0;
  size_t ia = a.node().index(), ib = b.node().index();
  if (ia != ib) return ia < ib ? -1 : 1;
  switch (ia) {
    case 0: {  // UnifVar
      int x = a.unifId(), y = b.unifId();
      return x == y ? 0 : (x < y ? -1 : 1);
    }
    case 1:  // RigidVar
      return a.rigidName().compare(b.rigidName());
    case 2: {  // DataTy
      const DataTy& da = a.dataTy();
      const DataTy& db = b.dataTy();
      if (int c = da.head.compare(db.head)) return c;
      if (da.args.size() != db.args.size())
        return da.args.size() < db.args.size() ? -1 : 1;
      for (size_t i = 0; i < da.args.size(); ++i)
        if (int c = compareTypes(da.args[i], db.args[i])) return c;
      return 0;
    }
    default: {  // ArrowTy
      if (int c = compareTypes(a.arrowDom(), b.arrowDom())) return c;
      return compareTypes(a.arrowCod(), b.arrowCod());
    }
  }
}

bool operator==(const Eq& a, const Eq& b) { return compareEq(a, b) == 0; }

int compareEq(const Eq& a, const Eq& b) {
  if (int c = compareTypes(a.lhs, b.lhs)) return c;
  return compareTypes(a.rhs, b.rhs);
}

ConstraintSet ConstraintSet::of(std::vector<Eq> eqs) {
  ConstraintSet c;
  for (auto& e : eqs) c = c.withEq(e.lhs, e.rhs);
  return c;
}

ConstraintSet ConstraintSet::withEq(Type a, Type b) const {
  Eq e = Eq::normalized(std::move(a), std::move(b));
  ConstraintSet out = *this;
  auto it = std::lower_bound(
      out.eqs_.begin(), out.eqs_.end(), e,
      [](const Eq& x, const Eq& y) { return compareEq(x, y) < 0; });
  if (it == out.eqs_.end() || compareEq(*it, e) != 0) out.eqs_.insert(it, e);
  return out;
}

ConstraintSet ConstraintSet::unionWith(const ConstraintSet& other) const {
  ConstraintSet out = *this;
  for (const Eq& e : other.eqs_) out = out.withEq(e.lhs, e.rhs);
  return out;
}

bool ConstraintSet::subsetOf(const ConstraintSet& other) const {
  // Both sides are sorted, so a single linear sweep suffices.
  size_t j = 0;
  for (const Eq& e : eqs_) {
    while (j < other.eqs_.size() && compareEq(other.eqs_[j], e) < 0) ++j;
    if (j == other.eqs_.size() || compareEq(other.eqs_[j], e) != 0) return false;
  }
  return true;
}

bool ConstraintSet::operator==(const ConstraintSet& other) const {
  if (eqs_.size() != other.eqs_.size()) return false;
  for (size_t i = 0; i < eqs_.size(); ++i)
    if (compareEq(eqs_[i], other.eqs_[i]) != 0) return false;
  return true;
}

std::optional<Type> Subst::lookupUnif(int id) const {
  auto it = u_.find(id);
  if (it == u_.end()) return std::nullopt;
  return it->second;
}

std::optional<Type> Subst::lookupRigid(const std::string& name) const {
  auto it = r_.find(name);
  if (it == r_.end()) return std::nullopt;
  return it->second;
}

Type Subst::apply(const Type& t) const {
  if (empty()) return t;
  switch (t.node().index()) {
    // Simultaneous substitution: bound variables are replaced once, the
    // replacement is not rewritten again. Solvers hand out idempotent
    // substitutions, so one pass is also a fixpoint for them.
    case 0: {
      auto it = u_.find(t.unifId());
      return it == u_.end() ? t : it->second;
    }
    case 1: {
      auto it = r_.find(t.rigidName());
      return it == r_.end() ? t : it->second;
    }
    case 2: {
      const DataTy& d = t.dataTy();
      bool changed = false;
      std::vector<Type> args;
      args.reserve(d.args.size());
      for (const Type& a : d.args) {
        Type a2 = apply(a);
        changed = changed || !(a2 == a);
        args.push_back(std::move(a2));
      }
      return changed ? Type::data(d.head, std::move(args)) : t;
    }
    default: {
      Type dom = apply(t.arrowDom());
      Type cod = apply(t.arrowCod());
      if (dom == t.arrowDom() && cod == t.arrowCod()) return t;
      return Type::arrow(std::move(dom), std::move(cod));
    }
  }
}

Eq Subst::apply(const Eq& e) const {
  return Eq::normalized(apply(e.lhs), apply(e.rhs));
}

ConstraintSet Subst::apply(const ConstraintSet& c) const {
  ConstraintSet out;
  for (const Eq& e : c.items()) out = out.withEq(apply(e.lhs), apply(e.rhs));
  return out;
}

Subst Subst::compose(const Subst& after, const Subst& before) {
  Subst out;
  for (const auto& [id, t] : before.u_) out.u_[id] = after.apply(t);
  for (const auto& [n, t] : before.r_) out.r_[n] = after.apply(t);
  for (const auto& [id, t] : after.u_)
    if (!out.u_.count(id)) out.u_[id] = t;
  for (const auto& [n, t] : after.r_)
    if (!out.r_.count(n)) out.r_[n] = t;
  return out;
}

Type CtorSig::resultType() const {
  std::vector<Type> args;
  args.reserve(quantified.size());
  for (const std::string& q : quantified) args.push_back(Type::rigid(q));
  return Type::data(resultHead, std::move(args));
}

Type CtorSig::fullType() const {
  Type t = resultType();
  for (auto it = argTypes.rbegin(); it != argTypes.rend(); ++it)
    t = Type::arrow(*it, t);
  return t;
}

const Scheme* Context::lookupVar(const std::string& name) const {
  // Later bindings shadow earlier ones.
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

const CtorSig* Context::lookupCtor(const std::string& name) const {
  for (const CtorSig& c : ctors)
    if (c.name == name) return &c;
  return nullptr;
}

const std::string* Context::lookupPolyConst(const std::string& name) const {
  for (const auto& [n, tv] : polyConsts)
    if (n == name) return &tv;
  return nullptr;
}

const DataDecl* Context::lookupData(const std::string& name) const {
  for (const DataDecl& d : datatypes)
    if (d.name == name) return &d;
  return nullptr;
}

bool Context::boundAnywhere(const std::string& name) const {
  return lookupVar(name) || lookupCtor(name) || lookupPolyConst(name);
}

Context Context::withVar(const std::string& name, Scheme s) const {
  Context out = *this;
  out.vars.emplace_back(name, std::move(s));
  return out;
}

static void collectUnif(const Type& t, std::set<int>& out) {
  switch (t.node().index()) {
    case 0:
      out.insert(t.unifId());
      break;
    case 1:
      break;
    case 2:
      for (const Type& a : t.dataTy().args) collectUnif(a, out);
      break;
    default:
      collectUnif(t.arrowDom(), out);
      collectUnif(t.arrowCod(), out);
  }
}

std::set<int> freeUnifVars(const Type& t) {
  std::set<int> out;
  collectUnif(t, out);
  return out;
}

std::set<int> freeUnifVars(const ConstraintSet& c) {
  std::set<int> out;
  for (const Eq& e : c.items()) {
    collectUnif(e.lhs, out);
    collectUnif(e.rhs, out);
  }
  return out;
}

std::set<int> freeUnifVars(const Subst& s) {
  // Syntactic occurrence anywhere in the substitution: keys and ranges.
  std::set<int> out;
  for (const auto& [id, t] : s.unifBindings()) {
    out.insert(id);
    collectUnif(t, out);
  }
  for (const auto& [n, t] : s.rigidBindings()) collectUnif(t, out);
  return out;
}

void collectRigidVars(const Type& t, std::set<std::string>& out) {
  switch (t.node().index()) {
    case 0:
      break;
    case 1:
      out.insert(t.rigidName());
      break;
    case 2:
      for (const Type& a : t.dataTy().args) collectRigidVars(a, out);
      break;
    default:
      collectRigidVars(t.arrowDom(), out);
      collectRigidVars(t.arrowCod(), out);
  }
}

std::set<std::string> freeRigidVars(const Type& t) {
  std::set<std::string> out;
  collectRigidVars(t, out);
  return out;
}

bool occursUnif(int id, const Type& t) {
  switch (t.node().index()) {
    case 0:
      return t.unifId() == id;
    case 1:
      return false;
    case 2:
      for (const Type& a : t.dataTy().args)
        if (occursUnif(id, a)) return true;
      return false;
    default:
      return occursUnif(id, t.arrowDom()) || occursUnif(id, t.arrowCod());
  }
}

bool occursRigid(const std::string& name, const Type& t) {
  switch (t.node().index()) {
    case 0:
      return false;
    case 1:
      return t.rigidName() == name;
    case 2:
      for (const Type& a : t.dataTy().args)
        if (occursRigid(name, a)) return true;
      return false;
    default:
      return occursRigid(name, t.arrowDom()) || occursRigid(name, t.arrowCod());
  }
}

Peeled peelArrows(const Type& t) {
  Peeled p;
  Type cur = t;
  while (cur.isArrow()) {
    p.doms.push_back(cur.arrowDom());
    cur = cur.arrowCod();
  }
  p.cod = cur;
  return p;
}

}  // namespace holeforge
