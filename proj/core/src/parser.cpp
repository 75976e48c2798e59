#include "stagec/parser.hpp"

#include <set>

#include "stagec/lexer.hpp"

namespace stagec {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SourceProgram program() {
    SourceProgram p;
    while (!at(TokKind::KwMain)) {
      p.decls.push_back(decl());
      expect(TokKind::Semi, "';' after declaration");
    }
    p.main_span = peek().span;
    expect(TokKind::KwMain, "'main'");
    expect(TokKind::Equal, "'=' after 'main'");
    p.main = expr();
    expect(TokKind::Eof, "end of input after main expression");
    return p;
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

  // ---- declarations -------------------------------------------------------

  SrcDecl decl() {
    if (at(TokKind::KwDef)) return def_decl();
    if (at(TokKind::KwClass)) return class_decl();
    if (at(TokKind::KwInstance)) return inst_decl();
    fail(Phase::Parse, "ParseError",
         std::string("expected declaration or 'main', found ") +
             tok_kind_name(peek().kind),
         peek().span);
  }

  DefDecl def_decl() {
    DefDecl d;
    d.span = peek().span;
    expect(TokKind::KwDef, "'def'");
    d.name = expect(TokKind::LIdent, "definition name").text;
    expect(TokKind::ColonColon, "'::' after definition name");
    d.sig = scheme();
    expect(TokKind::Equal, "'=' after type signature");
    d.body = expr();
    return d;
  }

  ClassDecl class_decl() {
    ClassDecl c;
    c.span = peek().span;
    expect(TokKind::KwClass, "'class'");
    c.name = expect(TokKind::UIdent, "class name").text;
    c.tyvar = expect(TokKind::LIdent, "class type variable").text;
    expect(TokKind::KwWhere, "'where' in class declaration");
    c.method = expect(TokKind::LIdent, "method name").text;
    expect(TokKind::ColonColon, "'::' after method name");
    c.sig = scheme();
    return c;
  }

  InstDecl inst_decl() {
    InstDecl i;
    i.span = peek().span;
    expect(TokKind::KwInstance, "'instance'");
    size_t save = pos_;
    // Try an instance context first; backtrack when no '=>' follows.
    try {
      std::vector<Constraint> ctx = inst_context();
      if (accept(TokKind::FatArrow)) {
        i.context = std::move(ctx);
      } else {
        pos_ = save;
      }
    } catch (const CompileError&) {
      pos_ = save;
    }
    i.cls = expect(TokKind::UIdent, "class name").text;
    i.head = atype();
    expect(TokKind::KwWhere, "'where' in instance declaration");
    i.method = expect(TokKind::LIdent, "method name").text;
    expect(TokKind::Equal, "'=' after method name");
    i.body = expr();
    return i;
  }

  std::vector<Constraint> inst_context() {
    std::vector<Constraint> ctx;
    if (accept(TokKind::LParen)) {
      ctx.push_back(constraint());
      while (accept(TokKind::Comma)) ctx.push_back(constraint());
      expect(TokKind::RParen, "')' after instance context");
    } else {
      ctx.push_back(constraint());
    }
    return ctx;
  }

  // ---- types and constraints ---------------------------------------------

  Scheme scheme() {
    Scheme s;
    if (accept(TokKind::KwForall)) {
      std::set<std::string> seen;
      while (at(TokKind::LIdent)) {
        Token t = advance();
        if (!seen.insert(t.text).second) {
          fail(Phase::Parse, "ParseError",
               "duplicate type variable '" + t.text + "' in forall", t.span);
        }
        s.binders.push_back(t.text);
      }
      if (s.binders.empty()) {
        fail(Phase::Parse, "ParseError",
             "expected type variables after 'forall'", peek().span);
      }
      expect(TokKind::Dot, "'.' after forall binders");
    }
    while (at(TokKind::UIdent) || at(TokKind::KwCodeC)) {
      s.qualifiers.push_back(constraint());
      expect(TokKind::FatArrow, "'=>' after constraint");
    }
    s.mono = type();
    return s;
  }

  Constraint constraint() {
    if (accept(TokKind::KwCodeC)) {
      expect(TokKind::LParen, "'(' after 'CodeC'");
      Constraint inner = constraint();
      expect(TokKind::RParen, "')' closing 'CodeC' constraint");
      inner.depth += 1;
      return inner;
    }
    Constraint c;
    c.cls = expect(TokKind::UIdent, "class name in constraint").text;
    c.arg = atype();
    return c;
  }

  TypePtr type() {
    TypePtr lhs = btype();
    if (accept(TokKind::Arrow)) {
      return t_arrow(lhs, type());
    }
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

  // ---- expressions --------------------------------------------------------

  SrcExprPtr expr() {
    Span span = peek().span;
    if (accept(TokKind::Backslash)) {
      std::string var = expect(TokKind::LIdent, "lambda parameter").text;
      expect(TokKind::Colon, "':' after lambda parameter");
      // Annotations bind tighter than '->'; parenthesize arrow types.
      TypePtr ann = btype();
      expect(TokKind::Arrow, "'->' after lambda annotation");
      SrcExprPtr body = expr();
      return mk_src(SrcExpr{ELam{var, ann, body}, span});
    }
    if (accept(TokKind::KwIfz)) {
      SrcExprPtr cond = expr();
      expect(TokKind::KwThen, "'then'");
      SrcExprPtr zero = expr();
      expect(TokKind::KwElse, "'else'");
      SrcExprPtr succ = expr();
      return mk_src(SrcExpr{EIfz{cond, zero, succ}, span});
    }
    return app_expr();
  }

  bool at_aexpr_start() const {
    switch (peek().kind) {
      case TokKind::LIdent:
      case TokKind::IntLit:
      case TokKind::StrLit:
      case TokKind::KwTrue:
      case TokKind::KwFalse:
      case TokKind::QuoteOpen:
      case TokKind::SpliceOpen:
      case TokKind::LParen:
        return true;
      default:
        return false;
    }
  }

  SrcExprPtr app_expr() {
    SrcExprPtr fn = aexpr();
    while (at_aexpr_start()) {
      Span span = fn->span;
      fn = mk_src(SrcExpr{EApp{fn, aexpr()}, span});
    }
    return fn;
  }

  SrcExprPtr aexpr() {
    Token t = peek();
    switch (t.kind) {
      case TokKind::LIdent:
        advance();
        return mk_src(SrcExpr{EIdent{t.text}, t.span});
      case TokKind::IntLit:
        advance();
        return mk_src(SrcExpr{EIntLit{t.int_value}, t.span});
      case TokKind::StrLit:
        advance();
        return mk_src(SrcExpr{EStrLit{t.text}, t.span});
      case TokKind::KwTrue:
        advance();
        return mk_src(SrcExpr{EBoolLit{true}, t.span});
      case TokKind::KwFalse:
        advance();
        return mk_src(SrcExpr{EBoolLit{false}, t.span});
      case TokKind::QuoteOpen: {
        advance();
        SrcExprPtr body = expr();
        expect(TokKind::QuoteClose, "'|]' closing quote");
        return mk_src(SrcExpr{EQuote{body}, t.span});
      }
      case TokKind::SpliceOpen: {
        advance();
        SrcExprPtr body = expr();
        expect(TokKind::RParen, "')' closing splice");
        return mk_src(SrcExpr{ESplice{body}, t.span});
      }
      case TokKind::LParen: {
        advance();
        SrcExprPtr inner = expr();
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

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

SrcExprPtr mk_src(SrcExpr e) { return std::make_shared<const SrcExpr>(std::move(e)); }

SourceProgram parse_source(const std::string& text) {
  return Parser(lex(text, LexMode::Source)).program();
}

}  // namespace stagec
