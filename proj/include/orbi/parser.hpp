#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "orbi/ast.hpp"
#include "orbi/diagnostic.hpp"

namespace orbi {

enum class TokenKind {
  Ident,       // starts with a lower-case letter
  UpperIdent,  // starts with an upper-case letter
  Keyword,     // type schema block inductive prop theorem true false
  Punct,
  LamDot,      // the `.` of `\x.`, distinct from the declaration terminator
  Directive,   // a whole `%%` line; lexeme is the text after `%%`, trimmed
  End
};

struct Token {
  TokenKind kind;
  std::string lexeme;
  SourceLoc loc;
  size_t offset = 0;  // byte offsets into the source
  size_t end = 0;

  bool is(TokenKind k, std::string_view text) const {
    return kind == k && lexeme == text;
  }
  bool is_punct(std::string_view text) const {
    return is(TokenKind::Punct, text);
  }
  bool is_keyword(std::string_view text) const {
    return is(TokenKind::Keyword, text);
  }
  bool is_ident() const {
    return kind == TokenKind::Ident || kind == TokenKind::UpperIdent;
  }
};

/// Throws OrbiError(E-LEX) on the first illegal character. The trailing End
/// token is not included.
std::vector<Token> tokenize(std::string_view source,
                            const std::string& file = "<input>");

/// Parses the text after `%%`. Throws OrbiError(E-DIR).
Directive parse_directive_line(std::string_view line, SourceLoc loc = {});

/// Parses a whole file. Syntax errors are reported per item into `diags` and
/// parsing resumes after the next `.` or `;`; the returned spec holds every
/// item that parsed.
OrbiSpec parse_spec(std::string_view source, Diagnostics& diags,
                    const std::string& file = "<input>");

/// Convenience for tests and tools: throws the first diagnostic on failure.
OrbiSpec parse_spec_or_throw(std::string_view source,
                             const std::string& file = "<input>");

// Fragment parsers (whole input must be consumed; throw OrbiError).
TermRef parse_term(std::string_view source);
TpRef parse_tp(std::string_view source);
KindRef parse_kind(std::string_view source);
PrpRef parse_prp(std::string_view source);
CtxPattern parse_ctx(std::string_view source);

}  // namespace orbi
