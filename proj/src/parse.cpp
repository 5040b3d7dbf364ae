#include "holeforge/parse.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "holeforge/pretty.hpp"

namespace holeforge {

std::string Diagnostic::render() const {
  std::ostringstream out;
  out << file << ":" << pos.line << ":" << pos.col << ": " << message << " ["
      << code << "]";
  return out.str();
}

bool isPolyConstName(const std::string& s, std::string* tyvar) {
  size_t i = 0;
  while (i < s.size() && std::islower(static_cast<unsigned char>(s[i]))) i++;
  if (i == 0 || i == s.size()) return false;
  for (size_t j = i; j < s.size(); j++)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  if (tyvar) *tyvar = s.substr(0, i);
  return true;
}

namespace {

enum class Tk {
  Ident,    // lowercase-led name
  ConId,    // uppercase-led name
  IntLit,
  KwData,
  KwWhere,
  KwCase,
  KwOf,
  KwExamples,
  DColon,    // ::
  Arrow,     // ->
  FatArrow,  // =>
  Tilde,
  Equals,
  Pipe,
  Lambda,
  LParen,
  RParen,
  LBrack,
  RBrack,
  LBrace,
  RBrace,
  Semi,
  Comma,
  Colon,
  Under,
  Newline,
  End,
};

struct Token {
  Tk k;
  std::string text;
  SourcePos pos;
};

struct ParseErrorEx {
  Diagnostic d;
};

[[noreturn]] void raise(const std::string& file, SourcePos pos,
                        const std::string& code, const std::string& msg) {
  throw ParseErrorEx{Diagnostic{file, pos, code, msg}};
}

// ---------------------------------------------------------------------------
// Lexer. Newlines are tokens of their own: suppressed inside ( ) and [ ],
// kept (as separators) inside { } and at the top level.

std::vector<Token> lexAll(const std::string& text, const std::string& file) {
  std::vector<Token> out;
  std::vector<std::pair<char, SourcePos>> brackets;
  size_t i = 0;
  SourcePos pos;

  auto peekc = [&](size_t k) -> char {
    return i + k < text.size() ? text[i + k] : '\0';
  };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; k++) {
      if (text[i] == '\n') {
        pos.line++;
        pos.col = 1;
      } else {
        pos.col++;
      }
      i++;
    }
  };
  auto push = [&](Tk k, std::string s, SourcePos p) {
    out.push_back(Token{k, std::move(s), p});
  };

  while (i < text.size()) {
    char c = text[i];
    SourcePos here = pos;

    if (c == '-' && peekc(1) == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '\n') {
      advance(1);
      char open = brackets.empty() ? '\0' : brackets.back().first;
      if (open == '(' || open == '[') continue;  // line continuation
      if (!out.empty() && out.back().k != Tk::Newline)
        push(Tk::Newline, "\n", here);
      continue;
    }

    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '\''))
        j++;
      std::string word = text.substr(i, j - i);
      advance(j - i);
      if (word == "data")
        push(Tk::KwData, word, here);
      else if (word == "where")
        push(Tk::KwWhere, word, here);
      else if (word == "case")
        push(Tk::KwCase, word, here);
      else if (word == "of")
        push(Tk::KwOf, word, here);
      else if (word == "examples")
        push(Tk::KwExamples, word, here);
      else if (std::isupper(static_cast<unsigned char>(word[0])))
        push(Tk::ConId, word, here);
      else
        push(Tk::Ident, word, here);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        j++;
      std::string digits = text.substr(i, j - i);
      advance(j - i);
      push(Tk::IntLit, digits, here);
      continue;
    }

    auto two = [&](const char* s) {
      return c == s[0] && peekc(1) == s[1];
    };
    if (two("::")) {
      advance(2);
      push(Tk::DColon, "::", here);
      continue;
    }
    if (two("->")) {
      advance(2);
      push(Tk::Arrow, "->", here);
      continue;
    }
    if (two("=>")) {
      advance(2);
      push(Tk::FatArrow, "=>", here);
      continue;
    }

    switch (c) {
      case '~':
        advance(1);
        push(Tk::Tilde, "~", here);
        continue;
      case '=':
        advance(1);
        push(Tk::Equals, "=", here);
        continue;
      case '|':
        advance(1);
        push(Tk::Pipe, "|", here);
        continue;
      case '\\':
        advance(1);
        push(Tk::Lambda, "\\", here);
        continue;
      case ';':
        advance(1);
        push(Tk::Semi, ";", here);
        continue;
      case ',':
        advance(1);
        push(Tk::Comma, ",", here);
        continue;
      case ':':
        advance(1);
        push(Tk::Colon, ":", here);
        continue;
      case '_':
        advance(1);
        if (std::isalnum(static_cast<unsigned char>(peekc(0))))
          raise(file, here, "E001",
                "'_' is the hole marker and cannot start an identifier");
        push(Tk::Under, "_", here);
        continue;
      case '(':
      case '[':
      case '{':
        brackets.push_back({c, here});
        advance(1);
        push(c == '(' ? Tk::LParen : c == '[' ? Tk::LBrack : Tk::LBrace,
             std::string(1, c), here);
        continue;
      case ')':
      case ']':
      case '}': {
        char want = c == ')' ? '(' : c == ']' ? '[' : '{';
        if (brackets.empty() || brackets.back().first != want)
          raise(file, here, "E002",
                std::string("unmatched '") + c + "'");
        brackets.pop_back();
        advance(1);
        push(c == ')' ? Tk::RParen : c == ']' ? Tk::RBrack : Tk::RBrace,
             std::string(1, c), here);
        continue;
      }
      default:
        raise(file, here, "E001",
              std::string("unexpected character '") + c + "'");
    }
  }
  if (!brackets.empty()) {
    std::ostringstream msg;
    msg << "unclosed '" << brackets.back().first << "' opened at line "
        << brackets.back().second.line;
    raise(file, pos, "E002", msg.str());
  }
  out.push_back(Token{Tk::End, "", pos});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file)
      : ts_(std::move(toks)), file_(std::move(file)) {}

  SourceFile parseFile() {
    SourceFile out;
    for (;;) {
      skipNewlines();
      if (at(Tk::End)) break;
      parseDecl(out);
      if (at(Tk::End)) break;
      expect(Tk::Newline, "E003", "newline expected after declaration");
    }
    return out;
  }

 private:
  const Token& cur() const { return ts_[i_]; }
  const Token& ahead(size_t n) const {
    return ts_[std::min(i_ + n, ts_.size() - 1)];
  }
  bool at(Tk k) const { return cur().k == k; }
  Token bump() { return ts_[i_++]; }

  [[noreturn]] void fail(const std::string& code, const std::string& msg) {
    raise(file_, cur().pos, code, msg);
  }
  [[noreturn]] void failAt(SourcePos pos, const std::string& code,
                           const std::string& msg) {
    raise(file_, pos, code, msg);
  }
  Token expect(Tk k, const std::string& code, const std::string& msg) {
    if (!at(k)) fail(code, msg + ", got '" + describe(cur()) + "'");
    return bump();
  }
  static std::string describe(const Token& t) {
    if (t.k == Tk::End) return "end of file";
    if (t.k == Tk::Newline) return "end of line";
    return t.text;
  }

  void skipNewlines() {
    while (at(Tk::Newline)) bump();
  }
  void skipSeps() {
    while (at(Tk::Newline) || at(Tk::Semi)) bump();
  }

  // ---- declarations ----

  void parseDecl(SourceFile& out) {
    if (at(Tk::KwData)) {
      out.datatypes.push_back(parseData());
      return;
    }
    if (at(Tk::KwExamples)) {
      if (out.bindings.empty() || !out.bindings.back().params)
        fail("E109", "examples block must follow a goal equation");
      Binding& b = out.bindings.back();
      if (b.examples || b.options.ctx || b.options.recArg || b.options.depth ||
          b.options.maxCandidates)
        fail("E109", "this binding already has an examples block");
      parseExamplesBlock(b);
      return;
    }
    if (at(Tk::Ident)) {
      if (ahead(1).k == Tk::DColon) {
        parseSignature(out);
        return;
      }
      parseEquation(out);
      return;
    }
    fail("E003", "declaration expected");
  }

  DataDef parseData() {
    DataDef d;
    d.pos = cur().pos;
    bump();  // data
    if (at(Tk::LBrack)) {
      bump();
      d.name = "[]";
      d.params.push_back(
          expect(Tk::Ident, "E003", "type parameter expected in [_]").text);
      expect(Tk::RBrack, "E003", "']' expected");
    } else {
      d.name = expect(Tk::ConId, "E003", "datatype name expected").text;
      while (at(Tk::Ident)) d.params.push_back(bump().text);
    }

    if (at(Tk::Newline) || at(Tk::End)) {
      d.opaque = true;
      return d;
    }

    if (at(Tk::Equals)) {
      bump();
      d.ctors.push_back(parseAdtCtor(d));
      while (at(Tk::Pipe)) {
        bump();
        d.ctors.push_back(parseAdtCtor(d));
      }
      return d;
    }

    if (at(Tk::KwWhere)) {
      bump();
      expect(Tk::LBrace, "E003", "'{' expected after where");
      skipSeps();
      while (!at(Tk::RBrace)) {
        d.ctors.push_back(parseGadtCtor(d));
        if (!at(Tk::RBrace) && !at(Tk::Newline) && !at(Tk::Semi))
          fail("E003", "separator expected between constructors");
        skipSeps();
      }
      bump();  // }
      return d;
    }
    fail("E003", "'=', 'where', or end of line expected in data declaration");
  }

  CtorSig parseAdtCtor(const DataDef& d) {
    CtorSig c;
    c.quantified = d.params;
    c.resultHead = d.name;
    if (at(Tk::LBrack)) {
      bump();
      expect(Tk::RBrack, "E003", "']' expected in nil constructor");
      c.name = "[]";
      return c;
    }
    if (at(Tk::LParen)) {
      bump();
      expect(Tk::Colon, "E003", "':' expected in cons constructor");
      expect(Tk::RParen, "E003", "')' expected");
      c.name = ":";
    } else {
      c.name = expect(Tk::ConId, "E003", "constructor name expected").text;
    }
    while (atTypeStart()) c.argTypes.push_back(parseAType());
    return c;
  }

  CtorSig parseGadtCtor(const DataDef& d) {
    CtorSig c;
    c.quantified = d.params;
    c.resultHead = d.name;
    SourcePos start = cur().pos;
    c.name = expect(Tk::ConId, "E003", "constructor name expected").text;
    expect(Tk::DColon, "E003", "'::' expected after constructor name");
    c.bundled = maybeConstraintPrefix();
    Type full = parseType();
    Peeled p = peelArrows(full);
    std::vector<Type> wantArgs;
    for (const std::string& q : d.params) wantArgs.push_back(Type::rigid(q));
    if (p.cod != Type::data(d.name, wantArgs)) {
      std::string want = d.name;
      for (const std::string& q : d.params) want += " " + q;
      failAt(start, "E214",
             "constructor result type must be exactly '" + want + "'");
    }
    c.argTypes = std::move(p.doms);
    return c;
  }

  // Backtracks: '(' t1 ~ t2, ... ')' '=>' is a constraint prefix; anything
  // else is left for the type parser.
  ConstraintSet maybeConstraintPrefix() {
    if (!at(Tk::LParen)) return {};
    size_t save = i_;
    try {
      bump();
      Type l = parseType();
      if (at(Tk::Tilde)) {
        bump();
        ConstraintSet cs = ConstraintSet().withEq(l, parseType());
        while (at(Tk::Comma)) {
          bump();
          Type l2 = parseType();
          expect(Tk::Tilde, "E003", "'~' expected in constraint");
          cs = cs.withEq(l2, parseType());
        }
        expect(Tk::RParen, "E003", "')' expected after constraints");
        expect(Tk::FatArrow, "E003", "'=>' expected after constraints");
        return cs;
      }
    } catch (const ParseErrorEx&) {
      // fall through to plain-type interpretation
    }
    i_ = save;
    return {};
  }

  void parseSignature(SourceFile& out) {
    Binding b;
    b.pos = cur().pos;
    b.name = bump().text;
    bump();  // ::
    for (const Binding& prev : out.bindings)
      if (prev.name == b.name)
        failAt(b.pos, "E207", "duplicate signature for '" + b.name + "'");
    b.signature = parseType();
    out.bindings.push_back(std::move(b));
  }

  void parseEquation(SourceFile& out) {
    SourcePos pos = cur().pos;
    std::string name = bump().text;
    Binding* b = nullptr;
    for (Binding& prev : out.bindings)
      if (prev.name == name) b = &prev;
    if (!b)
      failAt(pos, "E212", "equation for '" + name + "' has no signature");
    if (b->params)
      failAt(pos, "E213", "duplicate equation for '" + name + "'");
    std::vector<std::string> params;
    while (at(Tk::Ident)) params.push_back(bump().text);
    expect(Tk::Equals, "E003", "'=' expected in equation");
    b->params = std::move(params);
    b->body = parseExpr();
  }

  // ---- types ----

  bool atTypeStart() const {
    return at(Tk::Ident) || at(Tk::ConId) || at(Tk::LBrack) || at(Tk::LParen);
  }

  Type parseType() {
    Type l = parseBType();
    if (at(Tk::Arrow)) {
      bump();
      return Type::arrow(l, parseType());
    }
    return l;
  }

  Type parseBType() {
    SourcePos pos = cur().pos;
    Type head = parseAType();
    if (!atTypeStart()) return head;
    if (!head.isData())
      failAt(pos, "E215", "only a datatype constructor can be applied to type arguments");
    std::vector<Type> args = head.dataTy().args;
    while (atTypeStart()) args.push_back(parseAType());
    return Type::data(head.dataTy().head, std::move(args));
  }

  Type parseAType() {
    if (at(Tk::Ident)) return Type::rigid(bump().text);
    if (at(Tk::ConId)) return Type::data(bump().text, {});
    if (at(Tk::LBrack)) {
      bump();
      Type t = parseType();
      expect(Tk::RBrack, "E003", "']' expected in list type");
      return Type::data("[]", {t});
    }
    if (at(Tk::LParen)) {
      bump();
      Type t = parseType();
      expect(Tk::RParen, "E003", "')' expected in type");
      return t;
    }
    fail("E003", "type expected");
  }

  // ---- expressions ----

  bool atExprStart() const {
    return at(Tk::Ident) || at(Tk::ConId) || at(Tk::IntLit) || at(Tk::Under) ||
           at(Tk::LParen) || at(Tk::LBrack);
  }

  Expr parseExpr() {
    if (at(Tk::Lambda)) {
      bump();
      std::vector<std::string> binders;
      binders.push_back(
          expect(Tk::Ident, "E003", "binder expected after '\\'").text);
      while (at(Tk::Ident)) binders.push_back(bump().text);
      expect(Tk::Arrow, "E003", "'->' expected in lambda");
      Expr body = parseExpr();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = Expr::lam(*it, body);
      return body;
    }
    if (at(Tk::KwCase)) {
      bump();
      Expr scrut = parseExpr();
      expect(Tk::KwOf, "E003", "'of' expected in case expression");
      expect(Tk::LBrace, "E003", "'{' expected after of");
      skipSeps();
      std::vector<MatchBranch> branches;
      while (!at(Tk::RBrace)) {
        branches.push_back(parseBranch());
        if (!at(Tk::RBrace) && !at(Tk::Newline) && !at(Tk::Semi))
          fail("E003", "separator expected between branches");
        skipSeps();
      }
      bump();  // }
      if (branches.empty()) fail("E003", "case expression needs branches");
      return Expr::caseOf(scrut, std::move(branches));
    }
    Expr e = parseAExpr();
    while (atExprStart()) e = Expr::app(e, parseAExpr());
    return e;
  }

  Expr parseAExpr() {
    if (at(Tk::Ident)) return Expr::var(bump().text);
    if (at(Tk::ConId)) return Expr::ctor(bump().text);
    if (at(Tk::IntLit)) return Expr::ctor(bump().text);
    if (at(Tk::Under)) {
      bump();
      return Expr::hole(holeCounter_++);
    }
    if (at(Tk::LParen)) {
      bump();
      if (at(Tk::Colon)) {
        bump();
        expect(Tk::RParen, "E003", "')' expected after ':'");
        return Expr::ctor(":");
      }
      Expr e = parseExpr();
      expect(Tk::RParen, "E003", "')' expected");
      return e;
    }
    if (at(Tk::LBrack)) {
      bump();
      std::vector<Expr> elems;
      if (!at(Tk::RBrack)) {
        elems.push_back(parseExpr());
        while (at(Tk::Comma)) {
          bump();
          elems.push_back(parseExpr());
        }
      }
      expect(Tk::RBrack, "E003", "']' expected in list");
      Expr acc = Expr::ctor("[]");
      for (auto it = elems.rbegin(); it != elems.rend(); ++it)
        acc = Expr::app(Expr::app(Expr::ctor(":"), *it), acc);
      return acc;
    }
    fail("E003", "expression expected");
  }

  MatchBranch parseBranch() {
    MatchBranch b;
    if (at(Tk::LBrack)) {
      bump();
      expect(Tk::RBrack, "E003", "']' expected in nil pattern");
      b.ctor = "[]";
    } else if (at(Tk::LParen)) {
      bump();
      expect(Tk::Colon, "E003", "':' expected in cons pattern");
      expect(Tk::RParen, "E003", "')' expected");
      b.ctor = ":";
    } else {
      b.ctor = expect(Tk::ConId, "E003", "constructor pattern expected").text;
    }
    while (at(Tk::Ident)) b.binders.push_back(bump().text);
    expect(Tk::Arrow, "E003", "'->' expected after pattern");
    b.body = parseExpr();
    return b;
  }

  // ---- example blocks ----

  static bool isOptionKey(const std::string& s) {
    return s == "ctx" || s == "recArg" || s == "depth" || s == "maxCandidates";
  }

  void parseExamplesBlock(Binding& b) {
    bump();  // examples
    expect(Tk::LBrace, "E003", "'{' expected after examples");
    skipSeps();
    TopExample tx;
    while (!at(Tk::RBrace)) {
      if (at(Tk::Ident) && ahead(1).k == Tk::Equals && cur().text != b.name) {
        parseOption(b.options);
      } else if (at(Tk::Ident) && cur().text == b.name) {
        tx.rows.push_back(parseEquationRow(b.name));
      } else {
        tx.rows.push_back(parseExTerm());
      }
      if (!at(Tk::RBrace) && !at(Tk::Newline) && !at(Tk::Semi))
        fail("E003", "separator expected in examples block");
      skipSeps();
    }
    bump();  // }

    collectConstants(tx);
    if (!tx.rows.empty()) b.examples = std::move(tx);
  }

  void parseOption(SynthOptions& o) {
    SourcePos pos = cur().pos;
    std::string key = bump().text;
    if (!isOptionKey(key))
      failAt(pos, "E101", "unknown option '" + key + "'");
    bump();  // =
    if (key == "ctx") {
      if (o.ctx) failAt(pos, "E107", "duplicate option 'ctx'");
      expect(Tk::LParen, "E102", "'(' expected after ctx =");
      std::vector<std::string> names;
      if (!at(Tk::RParen)) {
        names.push_back(parseCtxName());
        while (at(Tk::Comma)) {
          bump();
          names.push_back(parseCtxName());
        }
      }
      expect(Tk::RParen, "E102", "')' expected in ctx option");
      o.ctx = std::move(names);
      return;
    }
    Token v = expect(Tk::IntLit, "E102", "number expected for option " + key);
    int n = std::stoi(v.text);
    auto setOnce = [&](std::optional<int>& slot, int lo) {
      if (slot) failAt(pos, "E107", "duplicate option '" + key + "'");
      if (n < lo)
        failAt(v.pos, "E102", "option " + key + " must be at least " +
                                  std::to_string(lo));
      slot = n;
    };
    if (key == "recArg")
      setOnce(o.recArg, 0);
    else if (key == "depth")
      setOnce(o.depth, 1);
    else
      setOnce(o.maxCandidates, 1);
  }

  std::string parseCtxName() {
    if (at(Tk::Ident) || at(Tk::ConId)) return bump().text;
    if (at(Tk::LBrack)) {
      bump();
      expect(Tk::RBrack, "E102", "']' expected in ctx name");
      return "[]";
    }
    if (at(Tk::LParen)) {
      bump();
      expect(Tk::Colon, "E102", "':' expected in ctx name");
      expect(Tk::RParen, "E102", "')' expected in ctx name");
      return ":";
    }
    fail("E102", "component name expected in ctx option");
  }

  // `name in1 in2 = out` desugars to io(in1, io(in2, out)).
  Example parseEquationRow(const std::string& name) {
    bump();  // the goal name
    std::vector<std::pair<Example, SourcePos>> inputs;
    while (!at(Tk::Equals)) {
      SourcePos pos = cur().pos;
      inputs.push_back({parseExAtom(), pos});
    }
    bump();  // =
    Example rhs = parseExTerm();
    for (auto it = inputs.rbegin(); it != inputs.rend(); ++it) {
      std::optional<Value> v = exampleToValue(it->first);
      if (!v)
        failAt(it->second, "E103",
               "example input for '" + name + "' must be a value");
      rhs = Example::io(*v, rhs);
    }
    return rhs;
  }

  bool atExAtomStart() const {
    return at(Tk::Ident) || at(Tk::ConId) || at(Tk::IntLit) || at(Tk::LParen) ||
           at(Tk::LBrack);
  }

  Example parseExTerm() {
    SourcePos pos = cur().pos;
    Example l = parseExApp();
    if (at(Tk::FatArrow)) {
      bump();
      std::optional<Value> v = exampleToValue(l);
      if (!v) failAt(pos, "E103", "left side of '=>' must be a value");
      return Example::io(*v, parseExTerm());
    }
    return l;
  }

  Example parseExApp() {
    SourcePos pos = cur().pos;
    Example head = parseExAtom();
    if (!atExAtomStart()) return head;
    const CtorExNode* c = std::get_if<CtorExNode>(&head.node());
    if (!c)
      failAt(pos, "E108", "only a constructor can take example arguments");
    std::vector<Example> args = c->args;
    while (atExAtomStart()) args.push_back(parseExAtom());
    return Example::ctor(c->name, std::move(args));
  }

  Example parseExAtom() {
    if (at(Tk::ConId)) return Example::ctor(bump().text, {});
    if (at(Tk::IntLit)) return Example::ctor(bump().text, {});
    if (at(Tk::Ident)) {
      SourcePos pos = cur().pos;
      std::string name = bump().text;
      if (!isPolyConstName(name))
        failAt(pos, "E106",
               "'" + name +
                   "' is not a polymorphic constant (expected a name like a1)");
      return Example::constant(name);
    }
    if (at(Tk::LBrack)) {
      bump();
      std::vector<Example> elems;
      if (!at(Tk::RBrack)) {
        elems.push_back(parseExApp());
        while (at(Tk::Comma)) {
          bump();
          elems.push_back(parseExApp());
        }
      }
      expect(Tk::RBrack, "E003", "']' expected in example list");
      Example acc = Example::ctor("[]", {});
      for (auto it = elems.rbegin(); it != elems.rend(); ++it)
        acc = Example::ctor(":", {*it, acc});
      return acc;
    }
    if (at(Tk::LParen)) {
      bump();
      if (at(Tk::Colon)) {
        bump();
        expect(Tk::RParen, "E003", "')' expected after ':'");
        return Example::ctor(":", {});
      }
      Example e = parseExTerm();
      expect(Tk::RParen, "E003", "')' expected in example");
      return e;
    }
    fail("E003", "example value expected");
  }

  // First-use order of the polymorphic constants across all rows.
  static void collectConstants(TopExample& tx) {
    auto record = [&tx](const std::string& n) {
      for (const auto& [name, stem] : tx.constants)
        if (name == n) return;
      std::string stem;
      if (isPolyConstName(n, &stem)) tx.constants.push_back({n, stem});
    };
    std::function<void(const Value&)> goVal = [&](const Value& v) {
      if (const auto* p = std::get_if<PolyConstV>(&v.node())) {
        record(p->name);
        return;
      }
      if (const auto* c = std::get_if<CtorV>(&v.node()))
        for (const Value& a : c->args) goVal(a);
    };
    std::function<void(const Example&)> goEx = [&](const Example& x) {
      if (const auto* c = std::get_if<ConstEx>(&x.node())) {
        record(c->name);
        return;
      }
      if (const auto* c = std::get_if<CtorExNode>(&x.node())) {
        for (const Example& a : c->args) goEx(a);
        return;
      }
      const auto& io = std::get<IOExNode>(x.node());
      goVal(io.input);
      goEx(io.output);
    };
    for (const Example& row : tx.rows) goEx(row);
  }

  std::vector<Token> ts_;
  size_t i_ = 0;
  std::string file_;
  int holeCounter_ = 0;
};

}  // namespace

ParseResult parseSourceFile(const std::string& text,
                            const std::string& filename) {
  try {
    Parser p(lexAll(text, filename), filename);
    return p.parseFile();
  } catch (const ParseErrorEx& e) {
    return e.d;
  }
}

// ---------------------------------------------------------------------------
// Surface printer

namespace {

std::string printAtomTypeSurface(const Type& t) {
  bool parens = t.isArrow() ||
                (t.isData() && t.dataTy().head != "[]" && !t.dataTy().args.empty());
  std::string s = printType(t);
  return parens ? "(" + s + ")" : s;
}

void printDataDef(std::ostringstream& out, const DataDef& d) {
  out << "data ";
  if (d.name == "[]")
    out << "[" << d.params[0] << "]";
  else {
    out << d.name;
    for (const std::string& p : d.params) out << " " << p;
  }
  if (d.opaque || d.ctors.empty()) {
    out << "\n";
    return;
  }

  bool anyConstrained = false;
  for (const CtorSig& c : d.ctors)
    if (!c.bundled.empty()) anyConstrained = true;

  if (anyConstrained) {
    out << " where {\n";
    for (const CtorSig& c : d.ctors) out << "  " << printCtorSig(c) << "\n";
    out << "}\n";
    return;
  }

  out << " =";
  for (size_t i = 0; i < d.ctors.size(); ++i) {
    const CtorSig& c = d.ctors[i];
    out << (i ? " | " : " ") << ctorDisplayName(c.name);
    for (const Type& a : c.argTypes) out << " " << printAtomTypeSurface(a);
  }
  out << "\n";
}

void printBinding(std::ostringstream& out, const Binding& b) {
  out << b.name << " :: " << printType(b.signature) << "\n";
  if (b.params) {
    std::string lhs = b.name;
    for (const std::string& p : *b.params) lhs += " " + p;
    lhs += " = ";
    out << lhs << printExpr(*b.body, static_cast<int>(lhs.size())) << "\n";
  }
  const SynthOptions& o = b.options;
  bool anyOption = o.ctx || o.recArg || o.depth || o.maxCandidates;
  if (b.examples || anyOption) {
    out << "examples {\n";
    if (b.examples)
      for (const Example& row : b.examples->rows)
        out << "  " << printExample(row) << "\n";
    if (o.ctx) {
      out << "  ctx = (";
      for (size_t i = 0; i < o.ctx->size(); ++i)
        out << (i ? ", " : "") << ctorDisplayName((*o.ctx)[i]);
      out << ")\n";
    }
    if (o.recArg) out << "  recArg = " << *o.recArg << "\n";
    if (o.depth) out << "  depth = " << *o.depth << "\n";
    if (o.maxCandidates) out << "  maxCandidates = " << *o.maxCandidates << "\n";
    out << "}\n";
  }
}

}  // namespace

std::string printSourceFile(const SourceFile& f) {
  std::ostringstream out;
  for (const DataDef& d : f.datatypes) printDataDef(out, d);
  for (const Binding& b : f.bindings) printBinding(out, b);
  return out.str();
}

}  // namespace holeforge
