#pragma once

#include <string>

#include "stagec/diagnostics.hpp"

namespace stagec {

enum class TokKind {
  Eof,
  LIdent,  // lower-case identifier
  UIdent,  // upper-case identifier (class constructor)
  IntLit,
  StrLit,
  // punctuation
  LParen,
  RParen,
  LBrace,
  RBrace,
  Lt,
  Gt,
  Semi,
  Comma,
  Dot,
  Equal,
  Backslash,
  Colon,
  ColonColon,
  Arrow,       // ->
  FatArrow,    // =>
  QuoteOpen,   // [|
  QuoteClose,  // |]
  SpliceOpen,  // $(
  Turnstile,   // |-
  BigLambda,   // /\
  // keywords
  KwDef,
  KwClass,
  KwInstance,
  KwWhere,
  KwMain,
  KwSpdef,
  KwForall,
  KwIfz,
  KwThen,
  KwElse,
  KwTrue,
  KwFalse,
  KwInt,
  KwBool,
  KwString,
  KwList,
  KwPair,
  KwCode,
  KwCodeC,
};

const char* tok_kind_name(TokKind k);

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  long long int_value = 0;
  Span span;
};

}  // namespace stagec
