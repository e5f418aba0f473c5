#include "orbi/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace orbi {

namespace {

const std::set<std::string> kKeywords = {"type",    "schema", "block",
                                         "inductive", "prop", "theorem",
                                         "true",    "false"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Directive: return "directive line";
    default: return "`" + t.lexeme + "`";
  }
}

}  // namespace

std::vector<Token> tokenize(std::string_view src, const std::string& file) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](TokenKind kind, std::string lexeme, size_t start,
                  SourceLoc loc) {
    out.push_back(Token{kind, std::move(lexeme), std::move(loc), start, i});
  };

  static const char* const kMulti[] = {"->", "<-", "|-", "||"};
  static const std::string kSingle = ":.{}()[]\\=+,;|&<>";

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourceLoc loc{file, line, col};
    size_t start = i;
    if (c == '%') {
      if (i + 1 < src.size() && src[i + 1] == '%') {
        size_t eol = src.find('\n', i);
        if (eol == std::string_view::npos) eol = src.size();
        std::string text(src.substr(i + 2, eol - i - 2));
        auto b = text.find_first_not_of(" \t\r");
        auto e = text.find_last_not_of(" \t\r");
        text = b == std::string::npos ? "" : text.substr(b, e - b + 1);
        advance(eol - i);
        push(TokenKind::Directive, std::move(text), start, loc);
      } else if (i + 1 < src.size() && src[i + 1] == '{') {
        size_t close = src.find("}%", i + 2);
        if (close == std::string_view::npos)
          fail(codes::Lex, "unterminated block comment", loc);
        advance(close + 2 - i);
      } else {
        size_t eol = src.find('\n', i);
        advance((eol == std::string_view::npos ? src.size() : eol) - i);
      }
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      advance(j - i);
      TokenKind kind = kKeywords.count(word) ? TokenKind::Keyword
                       : std::isupper(static_cast<unsigned char>(word[0]))
                           ? TokenKind::UpperIdent
                           : TokenKind::Ident;
      push(kind, std::move(word), start, loc);
      continue;
    }
    bool matched = false;
    for (const char* m : kMulti) {
      if (src.substr(i, 2) == m) {
        advance(2);
        push(TokenKind::Punct, m, start, loc);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kSingle.find(c) != std::string::npos) {
      advance(1);
      TokenKind kind = TokenKind::Punct;
      if (c == '.' && out.size() >= 2 && out[out.size() - 1].is_ident() &&
          out[out.size() - 2].is_punct("\\"))
        kind = TokenKind::LamDot;
      push(kind, std::string(1, c), start, loc);
      continue;
    }
    fail(codes::Lex, std::string("illegal character `") + c + "`", loc);
  }
  return out;
}

// ---------------------------------------------------------------------------

Directive parse_directive_line(std::string_view line, SourceLoc loc) {
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
  };
  auto word = [&] {
    skip_ws();
    size_t j = i;
    while (j < line.size() && ident_char(line[j])) ++j;
    std::string w(line.substr(i, j - i));
    i = j;
    return w;
  };
  auto expect = [&](char c, const char* what) {
    skip_ws();
    if (i >= line.size() || line[i] != c)
      fail(codes::Directive, std::string("malformed directive: expected ") +
                                 what,
           loc);
    ++i;
  };

  std::string first = word();
  skip_ws();
  if (auto sec = section_from_name(first)) {
    if (i != line.size())
      fail(codes::Directive, "unexpected text after section separator", loc);
    return Separator{*sec};
  }
  Annotation ann;
  if (first == "wf") {
    ann.what = What::Wf;
  } else if (first == "explicit") {
    ann.what = What::Explicit;
  } else if (first == "implicit") {
    ann.what = What::Implicit;
  } else {
    fail(codes::Directive,
         "unknown directive `" + first +
             "`; expected a section name or wf/explicit/implicit",
         loc);
  }
  expect('[', "`[` opening the system set");
  while (true) {
    std::string id = word();
    auto sys = system_from_name(id);
    if (!sys)
      fail(codes::Directive,
           id.empty() ? "empty system set" : "unknown system `" + id + "`",
           loc, "systems are hy, ab, bel, tw");
    ann.systems.insert(*sys);
    skip_ws();
    if (i < line.size() && line[i] == ',') {
      ++i;
      continue;
    }
    break;
  }
  expect(']', "`]` closing the system set");
  if (word() != "in")
    fail(codes::Directive, "malformed directive: expected `in`", loc);
  std::string name = word();
  if (name.empty())
    fail(codes::Directive, "malformed directive: missing destination", loc);
  skip_ws();
  if (i < line.size() && line[i] == '.') {
    ++i;
    std::string inner = word();
    if (inner.empty())
      fail(codes::Directive, "malformed directive: expected a name after `.`",
           loc);
    ann.dest = Dest{name, inner};
  } else {
    ann.dest = Dest{std::nullopt, name};
  }
  skip_ws();
  if (i != line.size())
    fail(codes::Directive, "unexpected text after directive destination", loc);
  return ann;
}

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view src, std::vector<Token> toks)
      : src_(src), toks_(std::move(toks)) {
    SourceLoc end_loc = toks_.empty() ? SourceLoc{} : toks_.back().loc;
    toks_.push_back(Token{TokenKind::End, "", end_loc, src.size(), src.size()});
  }

  OrbiSpec spec(Diagnostics& diags, const std::string& file) {
    OrbiSpec out;
    out.file = file;
    std::optional<Section> section;  // none until the first separator
    while (!at_end()) {
      const Token& start = peek();
      size_t start_pos = pos_;
      try {
        if (start.kind == TokenKind::Directive) {
          ++pos_;
          Directive d = parse_directive_line(start.lexeme, start.loc);
          if (const auto* sep = std::get_if<Separator>(&d)) {
            section = sep->section;
          } else {
            if (!section)
              fail(codes::Parse, "directive before the first section separator", start.loc,
                   "start the file with a separator such as `%% Syntax`");
            out.items.push_back(Item{*section, start.loc, "%% " + start.lexeme,
                                     std::get<Annotation>(d)});
          }
          continue;
        }
        if (!section)
          fail(codes::Parse, "item before the first section separator", start.loc,
               "start the file with a separator such as `%% Syntax`");
        Item item;
        item.section = *section;
        item.loc = start.loc;
        if (start.is_keyword("schema")) {
          item.node = schema();
        } else if (start.is_keyword("inductive")) {
          item.node = inductive();
        } else if (start.is_keyword("theorem")) {
          item.node = theorem();
        } else if (start.is_ident()) {
          item.node = decl();
        } else {
          error("a declaration, schema, inductive definition or theorem",
                "item");
        }
        item.source_text = std::string(
            src_.substr(start.offset, toks_[pos_ - 1].end - start.offset));
        out.items.push_back(std::move(item));
      } catch (const OrbiError& e) {
        diags.add(e.diagnostic());
        binders_.clear();
        recover(start_pos);
      }
    }
    classify_quantifiers(out);
    return out;
  }

  // Fragment entry points -----------------------------------------------

  TermRef whole_term() {
    auto t = term();
    expect_end();
    return t;
  }
  TpRef whole_tp() {
    auto t = as_tp(classifier());
    expect_end();
    return t;
  }
  KindRef whole_kind() {
    auto c = classifier();
    expect_end();
    if (!std::holds_alternative<KindRef>(c))
      fail(codes::Parse, "expected a kind", peek().loc);
    return std::get<KindRef>(c);
  }
  PrpRef whole_prp() {
    auto p = prp();
    expect_end();
    return p;
  }
  CtxPattern whole_ctx() {
    auto c = ctx_bracketed();
    expect_end();
    return c;
  }

  static PrpRef classify(const PrpRef& p, const std::set<std::string>& schemas,
                         const std::set<std::string>& families);

 private:
  using Classifier = std::variant<TpRef, KindRef>;

  const Token& peek(size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == TokenKind::End; }

  [[noreturn]] void error(const std::string& expected,
                          const std::string& production) const {
    fail(codes::Parse,
         "expected " + expected + " while parsing " + production +
             ", found " + describe(peek()),
         peek().loc);
  }

  void expect_punct(const char* p, const char* production) {
    if (!peek().is_punct(p)) error(std::string("`") + p + "`", production);
    ++pos_;
  }
  void expect_keyword(const char* k, const char* production) {
    if (!peek().is_keyword(k)) error(std::string("`") + k + "`", production);
    ++pos_;
  }
  std::string expect_ident(const char* production) {
    if (!peek().is_ident()) error("an identifier", production);
    return toks_[pos_++].lexeme;
  }
  void expect_end() {
    if (!at_end()) error("end of input", "fragment");
  }

  void recover(size_t start_pos) {
    if (pos_ < start_pos) pos_ = start_pos;
    if (pos_ == start_pos && !at_end() &&
        peek().kind == TokenKind::Directive) {
      ++pos_;
      return;
    }
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind == TokenKind::Directive) {
        if (pos_ == start_pos) ++pos_;
        return;
      }
      ++pos_;
      if (t.is_punct(".") || t.is_punct(";")) return;
    }
  }

  // Declarations ----------------------------------------------------------

  Decl decl() {
    Decl d;
    d.name = expect_ident("decl");
    expect_punct(":", "decl");
    d.classifier = classifier();
    expect_punct(".", "decl");
    return d;
  }

  // kind ::= type | tp op_arrow kind | {x:tp} kind
  // tp   ::= id {term} | tp op_arrow tp | {x:tp} tp
  // parsed jointly; the terminal decides whether the result is a kind.
  Classifier classifier() {
    if (peek().is_punct("{")) {
      ++pos_;
      std::string x = expect_ident("Pi binder");
      expect_punct(":", "Pi binder");
      TpRef dom = as_tp(classifier());
      expect_punct("}", "Pi binder");
      binders_.push_back(x);
      Classifier body = classifier();
      binders_.pop_back();
      if (auto* k = std::get_if<KindRef>(&body)) return mk_kpi(x, dom, *k);
      return mk_pi(x, dom, std::get<TpRef>(body));
    }
    Classifier lhs = classifier_app();
    if (peek().is_punct("->")) {
      ++pos_;
      Classifier rhs = classifier();
      return arrow(as_tp(lhs), rhs);
    }
    if (peek().is_punct("<-")) {
      Classifier acc = lhs;
      while (peek().is_punct("<-")) {
        ++pos_;
        acc = arrow(as_tp(classifier_app()), acc);
      }
      if (peek().is_punct("->"))
        fail(codes::Parse, "`->` and `<-` cannot be mixed without parentheses",
             peek().loc);
      return acc;
    }
    return lhs;
  }

  Classifier classifier_app() {
    const Token& t = peek();
    if (t.is_keyword("type")) {
      ++pos_;
      return mk_type();
    }
    if (t.is_punct("(")) {
      ++pos_;
      Classifier c = classifier();
      expect_punct(")", "parenthesized type");
      return c;
    }
    if (t.is_ident()) {
      ++pos_;
      std::vector<TermRef> args;
      while (starts_term_atom()) {
        if (peek().is_punct("\\")) {
          args.push_back(term());
          break;
        }
        args.push_back(term_atom());
      }
      return mk_atom(t.lexeme, std::move(args));
    }
    error("a type (identifier, `(`, `{` or `type`)", "tp");
  }

  static TpRef as_tp(const Classifier& c) {
    if (const auto* t = std::get_if<TpRef>(&c)) return *t;
    return kind_as_tp(std::get<KindRef>(c));
  }

  // A kind written where a type is expected is kept as a type over the
  // pseudo-family `type`; the LF checker rejects it with a level error.
  static TpRef kind_as_tp(const KindRef& k) {
    if (k->as<Kind::Type>()) return mk_atom("type");
    if (const auto* a = k->as<Kind::Arrow>())
      return mk_arrow(a->dom, kind_as_tp(a->cod));
    const auto* p = k->as<Kind::Pi>();
    return mk_pi(p->hint, p->dom, kind_as_tp(p->cod));
  }

  static Classifier arrow(TpRef dom, const Classifier& cod) {
    if (const auto* k = std::get_if<KindRef>(&cod)) return mk_karrow(dom, *k);
    return mk_arrow(std::move(dom), std::get<TpRef>(cod));
  }

  // Terms -----------------------------------------------------------------

  bool starts_term_atom() const {
    const Token& t = peek();
    return t.is_ident() || t.is_punct("(") || t.is_punct("\\");
  }

  TermRef term() {
    if (peek().is_punct("\\")) {
      ++pos_;
      std::string x = expect_ident("lambda");
      if (peek().kind != TokenKind::LamDot) error("`.`", "lambda");
      ++pos_;
      binders_.push_back(x);
      TermRef body = term();
      binders_.pop_back();
      return mk_lam(x, body);
    }
    TermRef head = term_atom();
    while (starts_term_atom()) {
      if (peek().is_punct("\\")) {
        head = mk_app(head, term());
        break;
      }
      head = mk_app(head, term_atom());
    }
    return head;
  }

  TermRef term_atom() {
    const Token& t = peek();
    if (t.is_ident()) {
      ++pos_;
      for (size_t k = binders_.size(); k-- > 0;)
        if (binders_[k] == t.lexeme)
          return mk_var(static_cast<int>(binders_.size() - 1 - k), t.lexeme);
      return mk_const(t.lexeme);
    }
    if (t.is_punct("(")) {
      ++pos_;
      TermRef inner = term();
      expect_punct(")", "parenthesized term");
      return inner;
    }
    error("a term", "term");
  }

  // Schemas and contexts --------------------------------------------------

  Schema schema() {
    expect_keyword("schema", "s_decl");
    Schema s;
    s.name = expect_ident("s_decl");
    expect_punct("=", "s_decl");
    s.alternatives.push_back(block());
    while (peek().is_punct("+")) {
      ++pos_;
      s.alternatives.push_back(block());
    }
    expect_punct(";", "s_decl");
    return s;
  }

  BlockEntry block_entry() {
    BlockEntry e;
    e.label = expect_ident("blk");
    expect_punct(":", "blk");
    e.type = as_tp(classifier());
    return e;
  }

  // blk ::= block id ":" tp {"," id ":" tp}, optionally parenthesized.
  // Unparenthesized, entries are absorbed greedily until `, id : block`,
  // which starts the next context entry.
  Block block() {
    expect_keyword("block", "blk");
    Block b;
    if (peek().is_punct("(")) {
      ++pos_;
      b.entries.push_back(block_entry());
      while (peek().is_punct(",")) {
        ++pos_;
        b.entries.push_back(block_entry());
      }
      expect_punct(")", "blk");
      return b;
    }
    b.entries.push_back(block_entry());
    while (peek().is_punct(",") && peek(1).is_ident() &&
           peek(2).is_punct(":") && !peek(3).is_keyword("block")) {
      ++pos_;
      b.entries.push_back(block_entry());
    }
    return b;
  }

  // Contents of a context between its delimiters.
  CtxPattern ctx_inner() {
    CtxPattern c;
    if (peek().is_punct("]") || peek().is_punct("|-")) return c;
    bool first = true;
    while (true) {
      if (!peek().is_ident()) error("a context variable or `id : block`", "ctx");
      if (peek(1).is_punct(":")) {
        CtxEntry e;
        e.label = toks_[pos_++].lexeme;
        ++pos_;
        e.block = block();
        c.entries.push_back(std::move(e));
      } else {
        if (!first)
          fail(codes::Parse,
               "context variable `" + peek().lexeme +
                   "` may only appear at the head of a context",
               peek().loc);
        c.head = toks_[pos_++].lexeme;
      }
      first = false;
      if (!peek().is_punct(",")) break;
      ++pos_;
    }
    return c;
  }

  CtxPattern ctx_bracketed() {
    expect_punct("[", "ctx");
    CtxPattern c = ctx_inner();
    expect_punct("]", "ctx");
    return c;
  }

  // Inductive definitions -------------------------------------------------

  InductiveDef inductive() {
    expect_keyword("inductive", "def_dec");
    InductiveDef d;
    d.name = expect_ident("def_dec");
    expect_punct(":", "def_dec");
    while (peek().is_punct("{")) {
      ++pos_;
      std::string var = expect_ident("r_kind");
      expect_punct(":", "r_kind");
      std::string schema = expect_ident("r_kind");
      expect_punct("}", "r_kind");
      d.params.emplace_back(var, schema);
    }
    expect_keyword("prop", "r_kind");
    expect_punct("=", "def_dec");
    if (!peek().is_punct("|")) error("`|`", "def_body");
    while (peek().is_punct("|")) {
      ++pos_;
      DefClause c;
      c.name = expect_ident("def_body");
      expect_punct(":", "def_body");
      c.body = def_prp();
      d.clauses.push_back(std::move(c));
    }
    expect_punct(";", "def_dec");
    return d;
  }

  PrpRef rel_app(const char* production) {
    Prp::RelApp r;
    r.name = expect_ident(production);
    while (peek().is_punct("[")) r.ctxs.push_back(ctx_bracketed());
    return mk_prp(std::move(r));
  }

  PrpRef def_prp() {
    PrpRef lhs = rel_app("def_prp");
    if (peek().is_punct("->")) {
      ++pos_;
      return mk_prp(Prp::Imp{lhs, def_prp()});
    }
    return lhs;
  }

  // Theorems --------------------------------------------------------------

  Theorem theorem() {
    expect_keyword("theorem", "thm");
    Theorem t;
    t.name = expect_ident("thm");
    expect_punct(":", "thm");
    t.statement = prp();
    expect_punct(";", "thm");
    return t;
  }

  PrpRef quantifier() {
    bool exists = peek().is_punct("<");
    ++pos_;
    std::string var = expect_ident("quantif");
    expect_punct(":", "quantif");
    TpRef type = as_tp(classifier());
    expect_punct(exists ? ">" : "}", "quantif");
    PrpRef body = prp();
    if (exists) return mk_prp(Prp::ExistsTm{var, type, body});
    return mk_prp(Prp::ForallTm{var, type, body});
  }

  // Quantifiers are weakest, then `->` (right), `||`, `&`.
  PrpRef prp() {
    if (peek().is_punct("{") || peek().is_punct("<")) return quantifier();
    PrpRef lhs = prp_or();
    if (peek().is_punct("->")) {
      ++pos_;
      return mk_prp(Prp::Imp{lhs, prp()});
    }
    return lhs;
  }

  PrpRef prp_or() {
    PrpRef lhs = prp_and();
    if (peek().is_punct("||")) {
      ++pos_;
      return mk_prp(Prp::Or{lhs, prp_or()});
    }
    return lhs;
  }

  PrpRef prp_and() {
    PrpRef lhs = prp_atom();
    if (peek().is_punct("&")) {
      ++pos_;
      return mk_prp(Prp::And{lhs, prp_and()});
    }
    return lhs;
  }

  std::optional<PrpRef> try_term_eq() {
    size_t save = pos_;
    try {
      TermRef lhs = term();
      if (!peek().is_punct("=")) {
        pos_ = save;
        return std::nullopt;
      }
      ++pos_;
      TermRef rhs = term();
      return mk_prp(Prp::TermEq{lhs, rhs});
    } catch (const OrbiError&) {
      pos_ = save;
      return std::nullopt;
    }
  }

  PrpRef prp_atom() {
    const Token& t = peek();
    if (t.is_keyword("true")) {
      ++pos_;
      return mk_prp(Prp::True{});
    }
    if (t.is_keyword("false")) {
      ++pos_;
      return mk_prp(Prp::False{});
    }
    if (t.is_punct("{") || t.is_punct("<")) return quantifier();
    if (t.is_punct("[")) {
      ++pos_;
      Prp::Judgment j;
      j.ctx = ctx_inner();
      expect_punct("|-", "judgment");
      j.family = expect_ident("judgment");
      while (starts_term_atom()) {
        if (peek().is_punct("\\")) {
          j.args.push_back(term());
          break;
        }
        j.args.push_back(term_atom());
      }
      expect_punct("]", "judgment");
      return mk_prp(std::move(j));
    }
    if (t.is_punct("(")) {
      if (auto eq = try_term_eq()) return *eq;
      ++pos_;
      PrpRef inner = prp();
      expect_punct(")", "parenthesized proposition");
      return inner;
    }
    if (t.is_ident() && peek(1).is_punct("[")) return rel_app("prp");
    if (t.is_ident() || t.is_punct("\\")) {
      if (auto eq = try_term_eq()) return *eq;
      if (t.is_ident()) return rel_app("prp");
    }
    error("a proposition", "prp");
  }

  void classify_quantifiers(OrbiSpec& spec) {
    std::set<std::string> schemas, families;
    for (const auto& it : spec.items) {
      if (const auto* s = it.as<Schema>()) schemas.insert(s->name);
      if (const auto* d = it.as<Decl>())
        if (d->is_family()) families.insert(d->name);
    }
    for (auto& it : spec.items)
      if (auto* th = std::get_if<Theorem>(&it.node))
        th->statement = classify(th->statement, schemas, families);
  }

  std::string_view src_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<std::string> binders_;
};

// `{x:A}` is ambiguous between context and term quantification. A bare
// identifier naming a schema makes it a context quantifier; an identifier
// that is neither a schema nor a family falls back on the case convention
// (lower-case variables range over contexts).
PrpRef Parser::classify(const PrpRef& p, const std::set<std::string>& schemas,
                        const std::set<std::string>& families) {
  auto rec = [&](const PrpRef& q) { return classify(q, schemas, families); };
  if (const auto* f = p->as<Prp::ForallTm>()) {
    const auto* atom = f->type->as<Tp::Atom>();
    if (atom && atom->args.empty()) {
      bool is_schema = schemas.count(atom->family) > 0;
      bool undeclared = !is_schema && !families.count(atom->family);
      bool lower = std::islower(static_cast<unsigned char>(f->var[0]));
      if (is_schema || (undeclared && lower))
        return mk_prp(Prp::ForallCtx{f->var, atom->family, rec(f->body)});
    }
    return mk_prp(Prp::ForallTm{f->var, f->type, rec(f->body)});
  }
  if (const auto* e = p->as<Prp::ExistsTm>())
    return mk_prp(Prp::ExistsTm{e->var, e->type, rec(e->body)});
  if (const auto* c = p->as<Prp::ForallCtx>())
    return mk_prp(Prp::ForallCtx{c->var, c->schema, rec(c->body)});
  if (const auto* a = p->as<Prp::And>())
    return mk_prp(Prp::And{rec(a->lhs), rec(a->rhs)});
  if (const auto* o = p->as<Prp::Or>())
    return mk_prp(Prp::Or{rec(o->lhs), rec(o->rhs)});
  if (const auto* i = p->as<Prp::Imp>())
    return mk_prp(Prp::Imp{rec(i->lhs), rec(i->rhs)});
  return p;
}

Parser fragment(std::string_view src) { return Parser(src, tokenize(src)); }

}  // namespace

OrbiSpec parse_spec(std::string_view source, Diagnostics& diags,
                    const std::string& file) {
  std::vector<Token> toks;
  try {
    toks = tokenize(source, file);
  } catch (const OrbiError& e) {
    diags.add(e.diagnostic());
    OrbiSpec empty;
    empty.file = file;
    return empty;
  }
  return Parser(source, std::move(toks)).spec(diags, file);
}

OrbiSpec parse_spec_or_throw(std::string_view source, const std::string& file) {
  Diagnostics diags;
  OrbiSpec spec = parse_spec(source, diags, file);
  for (const auto& d : diags.items())
    if (d.severity == Severity::Error) throw OrbiError(d);
  return spec;
}

TermRef parse_term(std::string_view source) {
  return fragment(source).whole_term();
}
TpRef parse_tp(std::string_view source) { return fragment(source).whole_tp(); }
KindRef parse_kind(std::string_view source) {
  return fragment(source).whole_kind();
}
PrpRef parse_prp(std::string_view source) {
  return Parser::classify(fragment(source).whole_prp(), {}, {});
}
CtxPattern parse_ctx(std::string_view source) {
  return fragment(source).whole_ctx();
}

}  // namespace orbi
