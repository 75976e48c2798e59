#include "stagec/core_parser.hpp"

#include <set>

#include "stagec/lexer.hpp"

namespace stagec {

namespace {

class CoreParser {
 public:
  explicit CoreParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  CoreProgram program() {
    CoreProgram p;
    while (!at(TokKind::KwMain)) {
      p.decls.push_back(decl());
    }
    expect(TokKind::KwMain, "'main'");
    expect(TokKind::Colon, "':' after 'main'");
    p.main_type = type();
    expect(TokKind::Equal, "'='");
    p.main = expr();
    expect(TokKind::Eof, "end of input after main expression");
    return p;
  }

  CoreExprPtr single_expr() {
    CoreExprPtr e = expr();
    expect(TokKind::Eof, "end of input after expression");
    return e;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(TokKind k) const { return peek().kind == k; }
  Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(TokKind k) {
    if (at(k)) {
      advance();
      return true;
    }
    return false;
  }
  Token expect(TokKind k, const std::string& what) {
    if (!at(k)) {
      fail(Phase::Parse, "ParseError",
           "expected " + what + ", found " + tok_kind_name(peek().kind),
           peek().span);
    }
    return advance();
  }

  CoreDecl decl() {
    if (accept(TokKind::KwDef)) {
      CoreDef d;
      d.name = expect(TokKind::LIdent, "definition name").text;
      expect(TokKind::Colon, "':' after definition name");
      d.type = type();
      expect(TokKind::Equal, "'='");
      d.body = expr();
      expect(TokKind::Semi, "';' after definition");
      return d;
    }
    if (accept(TokKind::KwSpdef)) {
      CoreSpDef d;
      expect(TokKind::Lt, "'<' after 'spdef'");
      Token lvl = expect(TokKind::IntLit, "splice level");
      d.level = static_cast<int>(lvl.int_value);
      expect(TokKind::Gt, "'>' after splice level");
      d.delta = env();
      expect(TokKind::Turnstile, "'|-' after splice environment");
      d.name = expect(TokKind::LIdent, "splice name").text;
      expect(TokKind::Colon, "':' after splice name");
      d.type = type();
      expect(TokKind::Equal, "'='");
      d.body = expr();
      expect(TokKind::Semi, "';' after splice definition");
      return d;
    }
    fail(Phase::Parse, "ParseError",
         std::string("expected 'def', 'spdef' or 'main', found ") +
             tok_kind_name(peek().kind),
         peek().span);
  }

  CoreEnv env() {
    expect(TokKind::LParen, "'(' opening environment");
    CoreEnv out;
    if (!at(TokKind::RParen)) {
      out.push_back(env_entry());
      while (accept(TokKind::Comma)) out.push_back(env_entry());
    }
    expect(TokKind::RParen, "')' closing environment");
    return out;
  }

  CoreBind env_entry() {
    Token name = expect(TokKind::LIdent, "environment entry name");
    if (accept(TokKind::Colon)) {
      expect(TokKind::LParen, "'(' in environment entry");
      TypePtr t = type();
      expect(TokKind::Comma, "',' before binding level");
      Token lvl = expect(TokKind::IntLit, "binding level");
      expect(TokKind::RParen, "')' closing environment entry");
      return CValBind{name.text, t, static_cast<int>(lvl.int_value)};
    }
    return CTyVarBind{name.text};
  }

  TypePtr type() {
    if (accept(TokKind::KwForall)) {
      std::vector<std::string> binders;
      while (at(TokKind::LIdent)) binders.push_back(advance().text);
      if (binders.empty()) {
        fail(Phase::Parse, "ParseError",
             "expected type variables after 'forall'", peek().span);
      }
      expect(TokKind::Dot, "'.' after forall binders");
      TypePtr body = type();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        body = t_forall(*it, body);
      }
      return body;
    }
    TypePtr lhs = btype();
    if (accept(TokKind::Arrow)) return t_arrow(lhs, type());
    return lhs;
  }

  TypePtr btype() {
    if (accept(TokKind::KwList)) return t_list(atype());
    if (accept(TokKind::KwCode)) return t_code(atype());
    if (accept(TokKind::KwPair)) {
      TypePtr first = atype();
      return t_pair(first, atype());
    }
    return atype();
  }

  TypePtr atype() {
    Token t = peek();
    switch (t.kind) {
      case TokKind::KwInt:
        advance();
        return t_int();
      case TokKind::KwBool:
        advance();
        return t_bool();
      case TokKind::KwString:
        advance();
        return t_string();
      case TokKind::LIdent:
        advance();
        return t_var(t.text);
      case TokKind::LParen: {
        advance();
        TypePtr inner = type();
        expect(TokKind::RParen, "')' closing type");
        return inner;
      }
      default:
        fail(Phase::Parse, "ParseError",
             std::string("expected type, found ") + tok_kind_name(t.kind),
             t.span);
    }
  }

  CoreExprPtr expr() {
    if (accept(TokKind::Backslash)) {
      std::string var = expect(TokKind::LIdent, "lambda parameter").text;
      expect(TokKind::Colon, "':' after lambda parameter");
      TypePtr ann = type();
      expect(TokKind::Dot, "'.' after lambda annotation");
      return c_lam(var, ann, expr());
    }
    if (accept(TokKind::BigLambda)) {
      std::string var = expect(TokKind::LIdent, "type parameter").text;
      expect(TokKind::Dot, "'.' after type parameter");
      return c_tylam(var, expr());
    }
    if (accept(TokKind::KwIfz)) {
      CoreExprPtr cond = expr();
      expect(TokKind::KwThen, "'then'");
      CoreExprPtr zero = expr();
      expect(TokKind::KwElse, "'else'");
      CoreExprPtr succ = expr();
      return c_ifz(cond, zero, succ);
    }
    return app_expr();
  }

  bool at_atom_start() const {
    switch (peek().kind) {
      case TokKind::LIdent:
      case TokKind::IntLit:
      case TokKind::StrLit:
      case TokKind::KwTrue:
      case TokKind::KwFalse:
      case TokKind::QuoteOpen:
      case TokKind::LParen:
        return true;
      default:
        return false;
    }
  }

  CoreExprPtr app_expr() {
    CoreExprPtr fn = atom();
    for (;;) {
      if (accept(TokKind::Lt)) {
        TypePtr arg = type();
        expect(TokKind::Gt, "'>' closing type application");
        fn = c_tyapp(fn, arg);
        continue;
      }
      if (at_atom_start()) {
        fn = c_app(fn, atom());
        continue;
      }
      return fn;
    }
  }

  CoreExprPtr atom() {
    Token t = peek();
    switch (t.kind) {
      case TokKind::LIdent:
        advance();
        // Occurrences are resolved into variables, splice variables, or
        // globals by the resolution pass after parsing.
        return c_global(t.text);
      case TokKind::IntLit:
        advance();
        return c_int(t.int_value);
      case TokKind::StrLit:
        advance();
        return c_str(t.text);
      case TokKind::KwTrue:
        advance();
        return c_bool(true);
      case TokKind::KwFalse:
        advance();
        return c_bool(false);
      case TokKind::QuoteOpen: {
        advance();
        CoreExprPtr body = expr();
        expect(TokKind::QuoteClose, "'|]' closing quote");
        expect(TokKind::LBrace, "'{' opening splice environment");
        std::vector<SpliceEnvEntry> entries;
        if (!at(TokKind::RBrace)) {
          entries.push_back(splice_entry());
          while (accept(TokKind::Semi)) entries.push_back(splice_entry());
        }
        expect(TokKind::RBrace, "'}' closing splice environment");
        return c_quote(body, std::move(entries));
      }
      case TokKind::LParen: {
        advance();
        CoreExprPtr inner = expr();
        expect(TokKind::RParen, "')' closing expression");
        return inner;
      }
      default:
        fail(Phase::Parse, "ParseError",
             std::string("expected expression, found ") +
                 tok_kind_name(t.kind),
             t.span);
    }
  }

  SpliceEnvEntry splice_entry() {
    SpliceEnvEntry e;
    e.delta = env();
    expect(TokKind::Turnstile, "'|-' after entry environment");
    e.name = expect(TokKind::LIdent, "splice entry name").text;
    expect(TokKind::Colon, "':' after splice entry name");
    e.type = type();
    expect(TokKind::Equal, "'='");
    e.rhs = expr();
    return e;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// ---- name resolution ------------------------------------------------------

struct Scopes {
  std::set<std::string> values;
  std::set<std::string> splices;
};

CoreExprPtr resolve_expr(const CoreExprPtr& e, const Scopes& sc) {
  if (auto* g = std::get_if<CGlobal>(&e->node)) {
    if (sc.values.count(g->name)) return c_var(g->name);
    if (sc.splices.count(g->name)) return c_splice_var(g->name);
    return e;
  }
  if (std::get_if<CVar>(&e->node) || std::get_if<CSpliceVar>(&e->node) ||
      std::get_if<CIntLitE>(&e->node) || std::get_if<CBoolLitE>(&e->node) ||
      std::get_if<CStrLitE>(&e->node) || std::get_if<CEvHole>(&e->node)) {
    return e;
  }
  if (auto* l = std::get_if<CLam>(&e->node)) {
    Scopes inner = sc;
    inner.values.insert(l->var);
    return c_lam(l->var, l->ann, resolve_expr(l->body, inner));
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    return c_app(resolve_expr(a->fn, sc), resolve_expr(a->arg, sc));
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    return c_tylam(tl->var, resolve_expr(tl->body, sc));
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    return c_tyapp(resolve_expr(ta->fn, sc), ta->arg);
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    return c_ifz(resolve_expr(z->cond, sc), resolve_expr(z->zero, sc),
                 resolve_expr(z->succ, sc));
  }
  auto& q = std::get<CQuote>(e->node);
  std::vector<SpliceEnvEntry> entries;
  Scopes body_sc = sc;
  for (const auto& entry : q.entries) {
    Scopes entry_sc = sc;
    for (const auto& bind : entry.delta) {
      if (auto* vb = std::get_if<CValBind>(&bind)) {
        entry_sc.values.insert(vb->name);
      }
    }
    entries.push_back(SpliceEnvEntry{entry.delta, entry.name, entry.type,
                                     resolve_expr(entry.rhs, entry_sc)});
    body_sc.splices.insert(entry.name);
  }
  return c_quote(resolve_expr(q.body, body_sc), std::move(entries));
}

CoreProgram resolve_program(CoreProgram p) {
  Scopes top;
  for (auto& d : p.decls) {
    if (auto* def = std::get_if<CoreDef>(&d)) {
      def->body = resolve_expr(def->body, top);
    } else {
      auto& sp = std::get<CoreSpDef>(d);
      Scopes body_sc = top;
      for (const auto& bind : sp.delta) {
        if (auto* vb = std::get_if<CValBind>(&bind)) {
          body_sc.values.insert(vb->name);
        }
      }
      sp.body = resolve_expr(sp.body, body_sc);
      top.splices.insert(sp.name);
    }
  }
  p.main = resolve_expr(p.main, top);
  return p;
}

}  // namespace

CoreProgram parse_core(const std::string& text) {
  CoreProgram p = CoreParser(lex(text, LexMode::Core)).program();
  return resolve_program(std::move(p));
}

CoreExprPtr parse_core_expr(const std::string& text) {
  CoreExprPtr e = CoreParser(lex(text, LexMode::Core)).single_expr();
  Scopes sc;
  return resolve_expr(e, sc);
}

}  // namespace stagec
