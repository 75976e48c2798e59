#include "stagec/pretty.hpp"

#include <sstream>

namespace stagec {

namespace {

// Type precedence mirrors the grammar: 0 = full type (forall/arrow
// position), 1 = constructor position (arrow operand), 2 = constructor
// argument.
void print_type(std::ostream& os, const TypePtr& t, int prec) {
  if (auto* v = std::get_if<TyVar>(&t->node)) {
    os << v->name;
    return;
  }
  if (auto* b = std::get_if<TyBase>(&t->node)) {
    os << b->name;
    return;
  }
  if (auto* m = std::get_if<TyMeta>(&t->node)) {
    os << "?" << m->id;
    return;
  }
  if (auto* l = std::get_if<TyList>(&t->node)) {
    if (prec > 1) os << "(";
    os << "List ";
    print_type(os, l->elem, 2);
    if (prec > 1) os << ")";
    return;
  }
  if (auto* p = std::get_if<TyPair>(&t->node)) {
    if (prec > 1) os << "(";
    os << "Pair ";
    print_type(os, p->first, 2);
    os << " ";
    print_type(os, p->second, 2);
    if (prec > 1) os << ")";
    return;
  }
  if (auto* c = std::get_if<TyCode>(&t->node)) {
    if (prec > 1) os << "(";
    os << "Code ";
    print_type(os, c->body, 2);
    if (prec > 1) os << ")";
    return;
  }
  if (auto* r = std::get_if<TyArrow>(&t->node)) {
    if (prec > 0) os << "(";
    print_type(os, r->dom, 1);
    os << " -> ";
    print_type(os, r->cod, 0);
    if (prec > 0) os << ")";
    return;
  }
  auto* f = std::get_if<TyForall>(&t->node);
  if (prec > 0) os << "(";
  os << "forall";
  const Type* cur = t.get();
  while (auto* ff = std::get_if<TyForall>(&cur->node)) {
    os << " " << ff->var;
    cur = ff->body.get();
  }
  os << " . ";
  // Re-walk to the innermost body.
  TypePtr body = f->body;
  while (auto* ff = std::get_if<TyForall>(&body->node)) body = ff->body;
  print_type(os, body, 0);
  if (prec > 0) os << ")";
}

}  // namespace

std::string pretty_type(const TypePtr& t) {
  std::ostringstream os;
  print_type(os, t, 0);
  return os.str();
}

std::string pretty_constraint(const Constraint& c) {
  std::ostringstream os;
  for (int i = 0; i < c.depth; ++i) os << "CodeC (";
  os << c.cls << " ";
  print_type(os, c.arg, 2);
  for (int i = 0; i < c.depth; ++i) os << ")";
  return os.str();
}

std::string pretty_scheme(const Scheme& s) {
  std::ostringstream os;
  if (!s.binders.empty()) {
    os << "forall";
    for (const auto& b : s.binders) os << " " << b;
    os << " . ";
  }
  for (const auto& q : s.qualifiers) os << pretty_constraint(q) << " => ";
  os << pretty_type(s.mono);
  return os.str();
}

std::string quote_string_literal(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out.push_back(c);
    }
  }
  out += "\"";
  return out;
}

namespace {

// Expression precedence: 0 = binder position, 1 = application head,
// 2 = application argument.
void print_expr(std::ostream& os, const CoreExprPtr& e, int prec);

void print_env(std::ostream& os, const CoreEnv& env) {
  os << "(";
  bool first = true;
  for (const auto& bind : env) {
    if (!first) os << ", ";
    first = false;
    if (auto* tv = std::get_if<CTyVarBind>(&bind)) {
      os << tv->name;
    } else {
      const auto& vb = std::get<CValBind>(bind);
      os << vb.name << " : (";
      print_type(os, vb.type, 0);
      os << ", " << vb.level << ")";
    }
  }
  os << ")";
}

void print_splice_entry(std::ostream& os, const SpliceEnvEntry& entry) {
  print_env(os, entry.delta);
  os << " |- " << entry.name << " : ";
  print_type(os, entry.type, 0);
  os << " = ";
  print_expr(os, entry.rhs, 0);
}

void print_expr(std::ostream& os, const CoreExprPtr& e, int prec) {
  if (auto* v = std::get_if<CVar>(&e->node)) {
    os << v->name;
    return;
  }
  if (auto* g = std::get_if<CGlobal>(&e->node)) {
    os << g->name;
    return;
  }
  if (auto* s = std::get_if<CSpliceVar>(&e->node)) {
    os << s->name;
    return;
  }
  if (auto* i = std::get_if<CIntLitE>(&e->node)) {
    os << i->value;
    return;
  }
  if (auto* b = std::get_if<CBoolLitE>(&e->node)) {
    os << (b->value ? "true" : "false");
    return;
  }
  if (auto* s = std::get_if<CStrLitE>(&e->node)) {
    os << quote_string_literal(s->value);
    return;
  }
  if (auto* h = std::get_if<CEvHole>(&e->node)) {
    os << "{hole " << h->id << "}";
    return;
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    os << "[| ";
    print_expr(os, q->body, 0);
    os << " |]{";
    bool first = true;
    for (const auto& entry : q->entries) {
      if (!first) os << " ; ";
      first = false;
      print_splice_entry(os, entry);
    }
    os << "}";
    return;
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    if (prec > 1) os << "(";
    print_expr(os, a->fn, 1);
    os << " ";
    print_expr(os, a->arg, 2);
    if (prec > 1) os << ")";
    return;
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    if (prec > 1) os << "(";
    print_expr(os, ta->fn, 1);
    os << " <";
    print_type(os, ta->arg, 0);
    os << ">";
    if (prec > 1) os << ")";
    return;
  }
  if (auto* l = std::get_if<CLam>(&e->node)) {
    if (prec > 0) os << "(";
    os << "\\" << l->var << " : ";
    print_type(os, l->ann, 0);
    os << " . ";
    print_expr(os, l->body, 0);
    if (prec > 0) os << ")";
    return;
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    if (prec > 0) os << "(";
    os << "/\\" << tl->var << " . ";
    print_expr(os, tl->body, 0);
    if (prec > 0) os << ")";
    return;
  }
  auto& z = std::get<CIfz>(e->node);
  if (prec > 0) os << "(";
  os << "ifz ";
  print_expr(os, z.cond, 0);
  os << " then ";
  print_expr(os, z.zero, 0);
  os << " else ";
  print_expr(os, z.succ, 0);
  if (prec > 0) os << ")";
}

}  // namespace

std::string pretty_core_env(const CoreEnv& env) {
  std::ostringstream os;
  print_env(os, env);
  return os.str();
}

std::string pretty_core_expr(const CoreExprPtr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string pretty_core_decl(const CoreDecl& d) {
  std::ostringstream os;
  if (auto* def = std::get_if<CoreDef>(&d)) {
    os << "def " << def->name << " : ";
    print_type(os, def->type, 0);
    os << " = ";
    print_expr(os, def->body, 0);
    os << " ;";
  } else {
    const auto& sp = std::get<CoreSpDef>(d);
    os << "spdef<" << sp.level << "> ";
    print_env(os, sp.delta);
    os << " |- " << sp.name << " : ";
    print_type(os, sp.type, 0);
    os << " = ";
    print_expr(os, sp.body, 0);
    os << " ;";
  }
  return os.str();
}

std::string pretty_core_program(const CoreProgram& p) {
  std::ostringstream os;
  for (const auto& d : p.decls) os << pretty_core_decl(d) << "\n";
  os << "main : ";
  print_type(os, p.main_type, 0);
  os << " = ";
  print_expr(os, p.main, 0);
  os << "\n";
  return os.str();
}

std::string pretty_value(const CoreExprPtr& e) { return pretty_core_expr(e); }

}  // namespace stagec
