#include "holeforge/constraints.hpp"

namespace holeforge {

Type Solved::walk(const Type& t) const {
  Type cur = t;
  for (;;) {
    if (cur.isUnifVar()) {
      auto it = ubind_.find(cur.unifId());
      if (it != ubind_.end()) {
        cur = it->second;
        continue;
      }
    } else if (cur.isRigid()) {
      auto it = rbind_.find(cur.rigidName());
      if (it != rbind_.end()) {
        cur = it->second;
        continue;
      }
    }
    return cur;
  }
}

Type Solved::resolve(const Type& t) const {
  Type w = walk(t);
  switch (w.node().index()) {
    case 0:
    case 1:
      return w;
    case 2: {
      const DataTy& d = w.dataTy();
      std::vector<Type> args;
      args.reserve(d.args.size());
      for (const Type& a : d.args) args.push_back(resolve(a));
      return Type::data(d.head, std::move(args));
    }
    default:
      return Type::arrow(resolve(w.arrowDom()), resolve(w.arrowCod()));
  }
}

bool Solved::unite(const Type& a, const Type& b, Mode mode,
                   std::optional<UnifyFailure>& fail) {
  Type x = walk(a);
  Type y = walk(b);

  if (x.isUnifVar() && y.isUnifVar()) {
    int ix = x.unifId(), iy = y.unifId();
    if (ix == iy) return true;
    // Keep the smallest id as the class representative.
    if (ix < iy) std::swap(ix, iy);
    ubind_[ix] = Type::unifVar(iy);
    return true;
  }
  if (x.isUnifVar() || y.isUnifVar()) {
    if (y.isUnifVar()) std::swap(x, y);
    Type t = resolve(y);
    if (occursUnif(x.unifId(), t)) {
      fail = UnifyFailure{UnifyFailure::Kind::Occurs, Eq{x, t}};
      return false;
    }
    ubind_[x.unifId()] = t;
    return true;
  }

  if (x.isRigid() && y.isRigid()) {
    if (x.rigidName() == y.rigidName()) return true;
    if (mode == Mode::Wanted) {
      fail = UnifyFailure{UnifyFailure::Kind::Clash, Eq{x, y}};
      return false;
    }
    // Deterministic orientation: the lexicographically larger name is bound.
    std::string big = x.rigidName(), small = y.rigidName();
    if (big < small) std::swap(big, small);
    rbind_[big] = Type::rigid(small);
    return true;
  }
  if (x.isRigid() || y.isRigid()) {
    if (y.isRigid()) std::swap(x, y);
    if (mode == Mode::Wanted) {
      fail = UnifyFailure{UnifyFailure::Kind::Clash, Eq{x, resolve(y)}};
      return false;
    }
    Type t = resolve(y);
    if (occursRigid(x.rigidName(), t)) {
      fail = UnifyFailure{UnifyFailure::Kind::Occurs, Eq{x, t}};
      return false;
    }
    rbind_[x.rigidName()] = t;
    return true;
  }

  if (x.isData() && y.isData()) {
    const DataTy& dx = x.dataTy();
    const DataTy& dy = y.dataTy();
    if (dx.head != dy.head || dx.args.size() != dy.args.size()) {
      fail = UnifyFailure{UnifyFailure::Kind::Clash, Eq{x, y}};
      return false;
    }
    for (size_t i = 0; i < dx.args.size(); ++i)
      if (!unite(dx.args[i], dy.args[i], mode, fail)) return false;
    return true;
  }
  if (x.isArrow() && y.isArrow()) {
    return unite(x.arrowDom(), y.arrowDom(), mode, fail) &&
           unite(x.arrowCod(), y.arrowCod(), mode, fail);
  }

  fail = UnifyFailure{UnifyFailure::Kind::Clash, Eq{x, y}};
  return false;
}

std::variant<Solved, UnifyFailure> Solved::extended(const Eq& e,
                                                    Mode mode) const {
  Solved next = *this;
  next.set_ = set_.withEq(e.lhs, e.rhs);
  std::optional<UnifyFailure> fail;
  if (!next.unite(e.lhs, e.rhs, mode, fail)) {
    assert(fail);
    return *fail;
  }
  return next;
}

static std::optional<Solved> dropDetail(std::variant<Solved, UnifyFailure> r) {
  if (std::holds_alternative<Solved>(r)) return std::get<Solved>(std::move(r));
  return std::nullopt;
}

std::optional<Solved> Solved::assume(const Eq& e) const {
  return dropDetail(extended(e, Mode::Given));
}

std::optional<Solved> Solved::assumeAll(const ConstraintSet& c) const {
  Solved cur = *this;
  for (const Eq& e : c.items()) {
    auto next = cur.assume(e);
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return cur;
}

std::optional<Solved> Solved::require(const Eq& e) const {
  return dropDetail(extended(e, Mode::Wanted));
}

std::optional<Solved> Solved::requireAll(const ConstraintSet& c) const {
  Solved cur = *this;
  for (const Eq& e : c.items()) {
    auto next = cur.require(e);
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return cur;
}

std::optional<Solved> Solved::given(const ConstraintSet& c) {
  return Solved{}.assumeAll(c);
}

bool Solved::entails(const Eq& e) const {
  return resolve(e.lhs) == resolve(e.rhs);
}

Subst Solved::unifier() const {
  Subst out;
  for (const auto& [id, t] : ubind_) out.bindUnif(id, resolve(t));
  for (const auto& [name, t] : rbind_) out.bindRigid(name, resolve(t));
  return out;
}

UnifyResult unify(const ConstraintSet& c) {
  Solved cur;
  for (const Eq& e : c.items()) {
    auto r = cur.extended(e, Solved::Mode::Given);
    if (std::holds_alternative<UnifyFailure>(r))
      return std::get<UnifyFailure>(std::move(r));
    cur = std::get<Solved>(std::move(r));
  }
  return cur.unifier();
}

bool consistent(const ConstraintSet& c) { return Solved::given(c).has_value(); }

bool entails(const ConstraintSet& c, const Eq& e) {
  auto s = Solved::given(c);
  assert(s && "entails called on an inconsistent constraint set");
  return s->entails(e);
}

Type solveFor(const ConstraintSet& c, const Type& t) {
  auto s = Solved::given(c);
  assert(s && "solveFor called on an inconsistent constraint set");
  return s->resolve(t);
}

Instantiated instantiate(const Scheme& s, FreshSupply& supply) {
  Instantiated out;
  for (const std::string& q : s.quantified)
    out.theta.bindRigid(q, supply.freshUnifVar());
  out.body = out.theta.apply(s.body);
  out.bundled = out.theta.apply(s.constraints);
  return out;
}

}  // namespace holeforge
