#include "holeforge/pretty.hpp"

#include <sstream>

namespace holeforge {

namespace {

// atom < app < arrow, mirroring the grammar's precedence levels
enum class TyPos { Atom, AppArg, Top };

std::string printTypePrec(const Type& t, TyPos pos) {
  switch (t.node().index()) {
    case 0:
      return "?" + std::to_string(t.unifId());
    case 1:
      return t.rigidName();
    case 2: {
      const DataTy& d = t.dataTy();
      if (d.head == "[]") {
        assert(d.args.size() == 1);
        return "[" + printTypePrec(d.args[0], TyPos::Top) + "]";
      }
      if (d.args.empty()) return d.head;
      std::string s = d.head;
      for (const Type& a : d.args) s += " " + printTypePrec(a, TyPos::AppArg);
      if (pos == TyPos::AppArg) return "(" + s + ")";
      return s;
    }
    default: {
      // Only an arrow needs parens to the left of ->; data applications and
      // variables do not.
      std::string dom = printTypePrec(t.arrowDom(), TyPos::Top);
      if (t.arrowDom().isArrow()) dom = "(" + dom + ")";
      std::string s = dom + " -> " + printTypePrec(t.arrowCod(), TyPos::Top);
      if (pos != TyPos::Top) return "(" + s + ")";
      return s;
    }
  }
}

}  // namespace

std::string printType(const Type& t) { return printTypePrec(t, TyPos::Top); }

std::string printScheme(const Scheme& s) {
  std::string out;
  if (!s.constraints.empty())
    out += "(" + [&] {
      std::string inner;
      bool first = true;
      for (const Eq& e : s.constraints.items()) {
        if (!first) inner += ", ";
        first = false;
        inner += printEq(e);
      }
      return inner;
    }() + ") => ";
  out += printType(s.body);
  return out;
}

std::string printCtorSig(const CtorSig& c) {
  return ctorDisplayName(c.name) + " :: " + printScheme(c.scheme());
}

std::string ctorDisplayName(const std::string& name) {
  if (name == ":") return "(:)";
  return name;
}

namespace {

enum class ExPos { Top, Fn, Arg };

std::string printExprPrec(const Expr& e, int indent, ExPos pos) {
  switch (e.node().index()) {
    case 0:
      return std::get<VarE>(e.node()).name;
    case 1:
      return ctorDisplayName(std::get<CtorE>(e.node()).name);
    case 2:
      return std::get<PolyConstE>(e.node()).name;
    case 3:
      return "_";
    case 4: {
      const LamE& l = std::get<LamE>(e.node());
      std::string s =
          "\\" + l.binder + " -> " + printExprPrec(l.body, indent, ExPos::Top);
      if (pos != ExPos::Top) return "(" + s + ")";
      return s;
    }
    case 5: {
      const AppE& a = std::get<AppE>(e.node());
      std::string s = printExprPrec(a.fn, indent, ExPos::Fn) + " " +
                      printExprPrec(a.arg, indent, ExPos::Arg);
      if (pos == ExPos::Arg) return "(" + s + ")";
      return s;
    }
    default: {
      const CaseE& c = std::get<CaseE>(e.node());
      int inner = indent + 2;
      std::string pad(inner, ' ');
      std::ostringstream out;
      out << "case " << printExprPrec(c.scrutinee, indent, ExPos::Top)
          << " of {\n";
      for (size_t i = 0; i < c.branches.size(); ++i) {
        const MatchBranch& b = c.branches[i];
        out << pad << ctorDisplayName(b.ctor);
        for (const std::string& x : b.binders) out << " " << x;
        out << " -> " << printExprPrec(b.body, inner, ExPos::Top);
        if (i + 1 < c.branches.size()) out << ";";
        out << "\n";
      }
      out << std::string(indent, ' ') << "}";
      std::string s = out.str();
      if (pos != ExPos::Top) return "(" + s + ")";
      return s;
    }
  }
}

// True when the value is a cons chain ending in nil, collecting elements.
bool listElements(const Value& v, std::vector<Value>& out) {
  const ValueNode& n = v.node();
  if (!std::holds_alternative<CtorV>(n)) return false;
  const CtorV& c = std::get<CtorV>(n);
  if (c.name == "[]" && c.args.empty()) return true;
  if (c.name == ":" && c.args.size() == 2) {
    out.push_back(c.args[0]);
    return listElements(c.args[1], out);
  }
  return false;
}

bool listElementsEx(const Example& x, std::vector<Example>& out) {
  const ExampleNode& n = x.node();
  if (!std::holds_alternative<CtorExNode>(n)) return false;
  const CtorExNode& c = std::get<CtorExNode>(n);
  if (c.name == "[]" && c.args.empty()) return true;
  if (c.name == ":" && c.args.size() == 2) {
    out.push_back(c.args[0]);
    return listElementsEx(c.args[1], out);
  }
  return false;
}

std::string printValueAtom(const Value& v, bool atomPos) {
  switch (v.node().index()) {
    case 0:
      return std::get<PolyConstV>(v.node()).name;
    case 1: {
      const CtorV& c = std::get<CtorV>(v.node());
      std::vector<Value> elems;
      if (listElements(v, elems)) {
        std::string s = "[";
        for (size_t i = 0; i < elems.size(); ++i) {
          if (i) s += ", ";
          s += printValueAtom(elems[i], false);
        }
        return s + "]";
      }
      if (c.args.empty()) return ctorDisplayName(c.name);
      std::string s = ctorDisplayName(c.name);
      for (const Value& a : c.args) s += " " + printValueAtom(a, true);
      if (atomPos) return "(" + s + ")";
      return s;
    }
    case 2: {
      const ClosureV& cl = std::get<ClosureV>(v.node());
      std::string s = "\\" + cl.binder + " -> " + printExpr(cl.body);
      if (atomPos) return "(" + s + ")";
      return s;
    }
    case 3:
      return "<partial " + std::get<PartialFnV>(v.node()).name + ">";
    default:
      return "<rec " + std::get<FixV>(v.node()).name + ">";
  }
}

std::string printExampleAtom(const Example& x, bool atomPos) {
  switch (x.node().index()) {
    case 0:
      return std::get<ConstEx>(x.node()).name;
    case 1: {
      const CtorExNode& c = std::get<CtorExNode>(x.node());
      std::vector<Example> elems;
      if (listElementsEx(x, elems)) {
        std::string s = "[";
        for (size_t i = 0; i < elems.size(); ++i) {
          if (i) s += ", ";
          s += printExampleAtom(elems[i], false);
        }
        return s + "]";
      }
      if (c.args.empty()) return ctorDisplayName(c.name);
      std::string s = ctorDisplayName(c.name);
      for (const Example& a : c.args) s += " " + printExampleAtom(a, true);
      if (atomPos) return "(" + s + ")";
      return s;
    }
    default: {
      const IOExNode& io = std::get<IOExNode>(x.node());
      std::string s = printValueAtom(io.input, true) + " => " +
                      printExampleAtom(io.output, false);
      if (atomPos) return "(" + s + ")";
      return s;
    }
  }
}

}  // namespace

std::string printExpr(const Expr& e, int indent) {
  return printExprPrec(e, indent, ExPos::Top);
}

std::string printValue(const Value& v) { return printValueAtom(v, false); }

std::string printExample(const Example& x) { return printExampleAtom(x, false); }

std::string printEq(const Eq& e) {
  return printType(e.lhs) + " ~ " + printType(e.rhs);
}

std::string printConstraints(const ConstraintSet& c) {
  std::string s = "{";
  bool first = true;
  for (const Eq& e : c.items()) {
    if (!first) s += ", ";
    first = false;
    s += printEq(e);
  }
  return s + "}";
}

}  // namespace holeforge
