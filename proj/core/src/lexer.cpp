#include "stagec/lexer.hpp"

#include <cctype>
#include <map>

namespace stagec {

const char* tok_kind_name(TokKind k) {
  switch (k) {
    case TokKind::Eof:
      return "end of input";
    case TokKind::LIdent:
      return "identifier";
    case TokKind::UIdent:
      return "constructor name";
    case TokKind::IntLit:
      return "integer literal";
    case TokKind::StrLit:
      return "string literal";
    case TokKind::LParen:
      return "'('";
    case TokKind::RParen:
      return "')'";
    case TokKind::LBrace:
      return "'{'";
    case TokKind::RBrace:
      return "'}'";
    case TokKind::Lt:
      return "'<'";
    case TokKind::Gt:
      return "'>'";
    case TokKind::Semi:
      return "';'";
    case TokKind::Comma:
      return "','";
    case TokKind::Dot:
      return "'.'";
    case TokKind::Equal:
      return "'='";
    case TokKind::Backslash:
      return "'\\'";
    case TokKind::Colon:
      return "':'";
    case TokKind::ColonColon:
      return "'::'";
    case TokKind::Arrow:
      return "'->'";
    case TokKind::FatArrow:
      return "'=>'";
    case TokKind::QuoteOpen:
      return "'[|'";
    case TokKind::QuoteClose:
      return "'|]'";
    case TokKind::SpliceOpen:
      return "'$('";
    case TokKind::Turnstile:
      return "'|-'";
    case TokKind::BigLambda:
      return "'/\\'";
    case TokKind::KwDef:
      return "'def'";
    case TokKind::KwClass:
      return "'class'";
    case TokKind::KwInstance:
      return "'instance'";
    case TokKind::KwWhere:
      return "'where'";
    case TokKind::KwMain:
      return "'main'";
    case TokKind::KwSpdef:
      return "'spdef'";
    case TokKind::KwForall:
      return "'forall'";
    case TokKind::KwIfz:
      return "'ifz'";
    case TokKind::KwThen:
      return "'then'";
    case TokKind::KwElse:
      return "'else'";
    case TokKind::KwTrue:
      return "'true'";
    case TokKind::KwFalse:
      return "'false'";
    case TokKind::KwInt:
      return "'Int'";
    case TokKind::KwBool:
      return "'Bool'";
    case TokKind::KwString:
      return "'String'";
    case TokKind::KwList:
      return "'List'";
    case TokKind::KwPair:
      return "'Pair'";
    case TokKind::KwCode:
      return "'Code'";
    case TokKind::KwCodeC:
      return "'CodeC'";
  }
  return "token";
}

bool is_reserved_ident(const std::string& name) {
  for (const char* prefix : {"sp", "ev"}) {
    std::string p = prefix;
    if (name.size() > p.size() && name.compare(0, p.size(), p) == 0) {
      bool digits = true;
      for (size_t i = p.size(); i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
          digits = false;
          break;
        }
      }
      if (digits) return true;
    }
  }
  return false;
}

namespace {

const std::map<std::string, TokKind>& keywords() {
  static const std::map<std::string, TokKind> table = {
      {"def", TokKind::KwDef},       {"class", TokKind::KwClass},
      {"instance", TokKind::KwInstance},
      {"where", TokKind::KwWhere},   {"main", TokKind::KwMain},
      {"spdef", TokKind::KwSpdef},   {"forall", TokKind::KwForall},
      {"ifz", TokKind::KwIfz},       {"then", TokKind::KwThen},
      {"else", TokKind::KwElse},     {"true", TokKind::KwTrue},
      {"false", TokKind::KwFalse},   {"Int", TokKind::KwInt},
      {"Bool", TokKind::KwBool},     {"String", TokKind::KwString},
      {"List", TokKind::KwList},     {"Pair", TokKind::KwPair},
      {"Code", TokKind::KwCode},     {"CodeC", TokKind::KwCodeC},
  };
  return table;
}

class Lexer {
 public:
  Lexer(const std::string& text, LexMode mode) : text_(text), mode_(mode) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t = next_token();
      bool done = t.kind == TokKind::Eof;
      out.push_back(std::move(t));
      if (done) break;
    }
    return out;
  }

 private:
  [[noreturn]] void error(const std::string& code, const std::string& msg,
                          Span span) {
    fail(Phase::Parse, code, msg, span);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  Span here() const { return Span{line_, col_}; }

  void skip_trivia() {
    for (;;) {
      if (eof()) return;
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      if (c == '-' && peek(1) == '-') {
        while (!eof() && peek() != '\n') advance();
        continue;
      }
      return;
    }
  }

  Token make(TokKind kind, Span span, std::string text = {}) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.span = span;
    return t;
  }

  Token lex_number(Span span, bool negative) {
    std::string digits;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      digits.push_back(advance());
    }
    Token t = make(TokKind::IntLit, span, (negative ? "-" : "") + digits);
    t.int_value = std::stoll(t.text);
    return t;
  }

  Token lex_ident(Span span) {
    std::string name;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '\'') {
        name.push_back(advance());
      } else {
        break;
      }
    }
    auto it = keywords().find(name);
    if (it != keywords().end()) return make(it->second, span, name);
    if (mode_ == LexMode::Source && is_reserved_ident(name)) {
      error("ReservedName",
            "identifier '" + name +
                "' is reserved for generated splice and evidence names",
            span);
    }
    bool upper = std::isupper(static_cast<unsigned char>(name[0]));
    return make(upper ? TokKind::UIdent : TokKind::LIdent, span, name);
  }

  Token lex_string(Span span) {
    std::string value;
    advance();  // opening quote
    for (;;) {
      if (eof()) error("ParseError", "unterminated string literal", span);
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) error("ParseError", "unterminated string literal", span);
        char e = advance();
        switch (e) {
          case 'n':
            value.push_back('\n');
            break;
          case 't':
            value.push_back('\t');
            break;
          case '"':
            value.push_back('"');
            break;
          case '\\':
            value.push_back('\\');
            break;
          default:
            error("ParseError",
                  std::string("unknown escape sequence '\\") + e + "'", span);
        }
      } else {
        value.push_back(c);
      }
    }
    return make(TokKind::StrLit, span, value);
  }

  Token next_token() {
    Span span = here();
    if (eof()) return make(TokKind::Eof, span);
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return lex_number(span, false);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return lex_ident(span);
    }
    if (c == '"') return lex_string(span);
    advance();
    switch (c) {
      case '(':
        return make(TokKind::LParen, span);
      case ')':
        return make(TokKind::RParen, span);
      case ';':
        return make(TokKind::Semi, span);
      case ',':
        return make(TokKind::Comma, span);
      case '.':
        return make(TokKind::Dot, span);
      case '\\':
        return make(TokKind::Backslash, span);
      case '{':
        if (mode_ == LexMode::Core) return make(TokKind::LBrace, span);
        break;
      case '}':
        if (mode_ == LexMode::Core) return make(TokKind::RBrace, span);
        break;
      case '<':
        if (mode_ == LexMode::Core) return make(TokKind::Lt, span);
        break;
      case '>':
        if (mode_ == LexMode::Core) return make(TokKind::Gt, span);
        break;
      case '=':
        if (peek() == '>') {
          advance();
          return make(TokKind::FatArrow, span);
        }
        return make(TokKind::Equal, span);
      case ':':
        if (peek() == ':') {
          advance();
          return make(TokKind::ColonColon, span);
        }
        return make(TokKind::Colon, span);
      case '-':
        if (peek() == '>') {
          advance();
          return make(TokKind::Arrow, span);
        }
        if (mode_ == LexMode::Core &&
            std::isdigit(static_cast<unsigned char>(peek()))) {
          return lex_number(span, true);
        }
        break;
      case '[':
        if (peek() == '|') {
          advance();
          return make(TokKind::QuoteOpen, span);
        }
        break;
      case '|':
        if (peek() == ']') {
          advance();
          return make(TokKind::QuoteClose, span);
        }
        if (mode_ == LexMode::Core && peek() == '-') {
          advance();
          return make(TokKind::Turnstile, span);
        }
        break;
      case '$':
        if (peek() == '(') {
          advance();
          return make(TokKind::SpliceOpen, span);
        }
        break;
      case '/':
        if (mode_ == LexMode::Core && peek() == '\\') {
          advance();
          return make(TokKind::BigLambda, span);
        }
        break;
      default:
        break;
    }
    error("ParseError", std::string("unexpected character '") + c + "'", span);
  }

  const std::string& text_;
  LexMode mode_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> lex(const std::string& text, LexMode mode) {
  return Lexer(text, mode).run();
}

}  // namespace stagec
