#include <doctest.h>

#include "orbi/parser.hpp"
#include "support.hpp"

using namespace orbi;

namespace {
std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const OrbiError& e) {
    return e.code();
  }
  return "";
}
}  // namespace

TEST_CASE("lexer distinguishes identifiers, keywords and the lambda dot") {
  auto toks = tokenize("lam: (tm -> tm) -> tm. \\x. M x");
  REQUIRE(toks.size() >= 11);
  CHECK(toks[0].kind == TokenKind::Ident);
  CHECK(toks[1].is_punct(":"));
  bool saw_lamdot = false, saw_end_dot = false;
  for (const auto& t : toks) {
    saw_lamdot = saw_lamdot || t.kind == TokenKind::LamDot;
    saw_end_dot = saw_end_dot || t.is_punct(".");
  }
  CHECK(saw_lamdot);
  CHECK(saw_end_dot);
  CHECK(toks[toks.size() - 2].kind == TokenKind::UpperIdent);
}

TEST_CASE("lexer reports illegal characters with their position") {
  try {
    tokenize("tm: type.\nz: $tm.", "f.orbi");
    FAIL("expected an error");
  } catch (const OrbiError& e) {
    CHECK(e.code() == codes::Lex);
    CHECK(e.diagnostic().loc.line == 2);
    CHECK(e.diagnostic().loc.col == 4);
  }
}

TEST_CASE("comments are skipped but directives are tokens") {
  auto toks = tokenize("% a comment\n%% Syntax\ntm: type.");
  REQUIRE(!toks.empty());
  CHECK(toks[0].kind == TokenKind::Directive);
  CHECK(toks[0].lexeme == "Syntax");
}

TEST_CASE("application is left associative and arrows right associative") {
  TermRef t = parse_term("app a b");
  const auto* a = t->as<Term::App>();
  REQUIRE(a);
  CHECK(a->fn->as<Term::App>());
  TpRef ty = parse_tp("tm -> tm -> tm");
  const auto* ar = ty->as<Tp::Arrow>();
  REQUIRE(ar);
  CHECK(ar->cod->as<Tp::Arrow>());
}

TEST_CASE("Pi binders become de Bruijn indices") {
  TpRef ty = parse_tp("{x:tm} aeq x x");
  const auto* pi = ty->as<Tp::Pi>();
  REQUIRE(pi);
  const auto* at = pi->cod->as<Tp::Atom>();
  REQUIRE(at);
  CHECK(at->args[0]->as<Term::Var>());
  CHECK(at->args[0]->as<Term::Var>()->index == 0);
}

TEST_CASE("directive lines parse into separators and annotations") {
  auto sep = parse_directive_line("Rules");
  CHECK(std::get<Separator>(sep).section == Section::Rules);
  auto ann = std::get<Annotation>(parse_directive_line("explicit [hy,ab] in Rxa.g"));
  CHECK(ann.what == What::Explicit);
  CHECK(ann.systems == std::set<System>{System::Hy, System::Ab});
  CHECK(ann.dest.owner == std::optional<std::string>("Rxa"));
  CHECK(ann.dest.name == "g");
  CHECK(code_of([] { parse_directive_line("explicit [xb] in foo"); }) == codes::Directive);
  CHECK(code_of([] { parse_directive_line("sometimes [ab] in foo"); }) == codes::Directive);
}

TEST_CASE("the corpus parses into the expected sections") {
  OrbiSpec s = parse_spec_or_throw(testing::corpus_text());
  CHECK(s.decls(Section::Syntax).size() == 3);
  CHECK(s.decls(Section::Judgments).size() == 2);
  CHECK(s.decls(Section::Rules).size() == 7);
  CHECK(s.schemas().size() == 4);
  CHECK(s.definitions().size() == 2);
  CHECK(s.directives().size() == 8);
  CHECK(s.theorems().size() == 4);
}

TEST_CASE("theorem quantifiers over schemas are context quantifiers") {
  OrbiSpec s = parse_spec_or_throw(
      "%% Syntax\ntm: type.\n%% Schemas\nschema xG = block (x:tm);\n"
      "%% Theorems\ntheorem t: {g:xG}{M:tm} [g |- tm];");
  const Theorem* t = s.theorems().front();
  const auto* f = t->statement->as<Prp::ForallCtx>();
  REQUIRE(f);
  CHECK(f->var == "g");
  CHECK(f->schema == "xG");
  CHECK(f->body->as<Prp::ForallTm>());
}

TEST_CASE("source text of every item is kept verbatim") {
  OrbiSpec s = parse_spec_or_throw(testing::corpus_text());
  const Item* first_rule = s.in_section(Section::Rules).front();
  CHECK(first_rule->source_text ==
        "ae_a: aeq M1 N1 -> aeq M2 N2 -> aeq (app M1 M2) (app N1 N2).");
}

TEST_CASE("parse errors recover at the next terminator") {
  Diagnostics d;
  OrbiSpec s = parse_spec("%% Syntax\ntm: type.\nbad: tm tm ->.\nz: tm.\n", d);
  CHECK(d.has_errors());
  CHECK(d.items().front().code == codes::Parse);
  CHECK(s.decls(Section::Syntax).size() == 2);
}

TEST_CASE("items before any separator are rejected") {
  Diagnostics d;
  parse_spec("tm: type.\n", d);
  CHECK(d.has_errors());
}

TEST_CASE("the corpus is a fixpoint of fmt") {
  std::string text = testing::corpus_text();
  OrbiSpec s = parse_spec_or_throw(text);
  CHECK(pretty(s) == text);
}

TEST_CASE("pretty then parse is the identity on generated specs") {
  testing::SpecGen gen(3);
  for (int i = 0; i < 50; ++i) {
    OrbiSpec s = gen.spec();
    std::string text = pretty(s);
    Diagnostics d;
    OrbiSpec back = parse_spec(text, d);
    CHECK_MESSAGE(!d.has_errors(), text);
    CHECK_MESSAGE(equal(s, back), text);
  }
}
