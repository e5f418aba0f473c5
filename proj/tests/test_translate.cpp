#include <doctest.h>

#include "orbi/parser.hpp"
#include "orbi/translate.hpp"
#include "support.hpp"

using namespace orbi;

namespace {

CheckedSpec load(const std::string& text) {
  Diagnostics d;
  CheckedSpec cs = check_source(text, d);
  for (const auto& x : d.items()) MESSAGE(x.code << " " << x.message);
  REQUIRE_FALSE(d.has_errors());
  return cs;
}

const Decl& rule(const CheckedSpec& cs, const std::string& name) {
  const SigEntry* e = cs.sig.find(name);
  REQUIRE(e);
  return e->decl;
}

std::string translated(System target, const std::string& text = testing::corpus_text()) {
  CheckedSpec cs = load(text);
  Diagnostics d;
  TargetDoc doc = translate_spec(cs, target, d);
  for (const auto& x : d.items()) MESSAGE(x.code << " " << x.message);
  CHECK_FALSE(d.has_errors());
  return doc.render();
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const OrbiError& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("wf predicates for the corpus") {
  CheckedSpec cs = load(testing::corpus_text());
  auto clauses = gen_wf_predicates(cs.sig, {"tm"});
  REQUIRE(clauses.size() == 2);
  CHECK(render_ab(clauses[0]) == "is_tm (app M N) :- is_tm M, is_tm N.");
  CHECK(render_ab(clauses[1]) == "is_tm (lam M) :- pi x\\ is_tm x => is_tm (M x).");
  CHECK(code_of([&] { gen_wf_predicates(cs.sig, {"aeq"}); }) == codes::Level);
}

TEST_CASE("wf predicates skip families without a predicate") {
  CheckedSpec cs = load("%% Syntax\ntm: type.\nnat: type.\nz: nat.\nc: nat -> tm -> tm.\n");
  auto clauses = gen_wf_predicates(cs.sig, {"tm"});
  REQUIRE(clauses.size() == 1);
  CHECK(render_ab(clauses[0]) == "is_tm (c M N) :- is_tm N.");
}

TEST_CASE("rule translation, implicit and explicit") {
  CheckedSpec cs = load(testing::corpus_text());
  AnnotationTable none;
  none.wf_families = {"tm"};
  AnnotationTable expl = none;
  expl.explicit_rules = {"de_l", "de_r", "ae_l"};

  CHECK(render_ab(translate_rule(cs.sig, rule(cs, "ae_l"), none)) + "\n" ==
        testing::golden("ab_ae_l.txt"));
  CHECK(render_ab(translate_rule(cs.sig, rule(cs, "de_l"), expl)) + "\n" ==
        testing::golden("ab_de_l.txt"));
  CHECK(render_ab(translate_rule(cs.sig, rule(cs, "de_r"), expl)) + "\n" ==
        testing::golden("ab_de_r.txt"));
  CHECK(render_ab(translate_rule(cs.sig, rule(cs, "de_t"), none)) == "deq M N :- deq M L, deq L N.");
  CHECK(render_ab(translate_rule(cs.sig, rule(cs, "de_r"), none)) == "deq M M.");
}

TEST_CASE("hy rendering of a rule") {
  CheckedSpec cs = load(testing::corpus_text());
  AnnotationTable t;
  t.wf_families = {"tm"};
  t.explicit_rules = {"de_r"};
  CHECK(render_hy(translate_rule(cs.sig, rule(cs, "de_r"), t)) ==
        "| de_r : forall (M:uexp),\n    prog (deq M M) (atom (is_tm M))");
}

TEST_CASE("erasing wf atoms from an explicit rule gives the implicit rule") {
  CheckedSpec cs = load(testing::corpus_text());
  AnnotationTable impl;
  impl.wf_families = {"tm"};
  AnnotationTable expl = impl;
  for (const auto* e : cs.sig.rules()) expl.explicit_rules.insert(e->decl.name);
  for (const auto* e : cs.sig.rules()) {
    Clause a = translate_rule(cs.sig, e->decl, expl);
    Clause b = translate_rule(cs.sig, e->decl, impl);
    CHECK_MESSAGE(render_ab(testing::erase_wf(a)) == render_ab(b), e->decl.name);
  }
}

TEST_CASE("a vacuous Pi over a judgment is an implication") {
  CheckedSpec cs = load(
      "%% Syntax\ntm: type.\n%% Judgments\nok: tm -> type.\nprf: tm -> type.\n"
      "%% Rules\nr: ({d:ok M} prf M) -> ok M.\n");
  AnnotationTable t;
  CHECK(render_ab(translate_rule(cs.sig, rule(cs, "r"), t)) == "ok M :- ok M => prf M.");
}

TEST_CASE("a rule depending on a level-1 premise has no clause shape") {
  CheckedSpec cs = load("%% Syntax\ntm: type.\n%% Judgments\nok: tm -> type.\n");
  // {d:ok z} ok d is ill-typed LF, but it is the shape that must be refused
  Decl bad{"r", mk_pi("d", mk_atom("ok", {mk_const("z")}), mk_atom("ok", {mk_var(0, "d")})), 0};
  CHECK(code_of([&] { translate_rule(cs.sig, bad, AnnotationTable{}); }) == codes::Shape);
}

TEST_CASE("ab document contains the transcribed snippets") {
  std::string ab = translated(System::Ab);
  for (const char* g : {"ab_ae_l.txt", "ab_de_l.txt", "ab_de_r.txt", "ab_xaG.txt", "ab_reflG.txt"})
    CHECK_MESSAGE(testing::contains_lines(ab, testing::golden(g)), g);
  CHECK(testing::contains_lines(ab, "Theorem reflG :"));
}

TEST_CASE("hy document contains the daG context definition") {
  std::string hy = translated(System::Hy);
  CHECK(testing::contains_lines(hy, testing::golden("hy_daG.txt")));
  CHECK(testing::contains_lines(hy, "Inductive prog : atm -> oo -> Prop :="));
}

TEST_CASE("bel lifts explicit theorem variables into boxes") {
  std::string bel = translated(System::Bel);
  CHECK(testing::contains_lines(bel, testing::golden("bel_reflG.txt")));
  CHECK(testing::contains_lines(bel, "{g:daG} {M:tm} {N:tm} [g |- deq M N] -> [g |- aeq M N]."));
}

TEST_CASE("tw passes the LF part through and comments the rest") {
  std::string tw = translated(System::Tw);
  CHECK(testing::contains_lines(tw, "lam: (tm -> tm) -> tm."));
  CHECK(testing::contains_lines(tw, "% schema xG = block (x:tm);"));
  CHECK(tw.find("\nschema") == std::string::npos);
}

TEST_CASE("relation translation honours explicit parameters") {
  std::string ab = translated(System::Ab);
  CHECK(testing::contains_lines(ab, "  nabla x, Rxa (is_tm x :: G) (aeq x x :: H) := Rxa G H."));
}

TEST_CASE("a block with nothing to render is an error") {
  std::string src = testing::corpus_text();
  auto pos = src.find("%% explicit [hy,ab] in xG\n");
  src.erase(pos, std::string("%% explicit [hy,ab] in xG\n").size());
  CheckedSpec cs = load(src);
  Diagnostics d;
  translate_spec(cs, System::Ab, d);
  CHECK(d.has_errors());
  CHECK(d.items().front().code == codes::EmptyRendering);
}

TEST_CASE("explicit theorem variables need a context in scope") {
  std::string src =
      "%% Syntax\ntm: type.\n%% Judgments\nok: tm -> type.\n%% Schemas\nschema xG = block (x:tm, u:ok x);\n"
      "%% Directives\n%% wf [ab] in tm\n%% explicit [ab] in t.M\n"
      "%% Theorems\ntheorem t: {M:tm} [ |- ok M];\n";
  CheckedSpec cs = load(src);
  Diagnostics d;
  translate_spec(cs, System::Ab, d);
  REQUIRE(d.has_errors());
  CHECK(d.items().front().code == codes::NoCtxInScope);
}

TEST_CASE("an explicit variable used in several contexts picks the first with a warning") {
  std::string src =
      "%% Syntax\ntm: type.\n%% Judgments\nok: tm -> type.\n%% Schemas\nschema xG = block (x:tm, u:ok x);\n"
      "%% Directives\n%% wf [ab] in tm\n%% explicit [ab] in t.M\n"
      "%% Theorems\ntheorem t: {g:xG}{h:xG}{M:tm} [g |- ok M] -> [h |- ok M];\n";
  CheckedSpec cs = load(src);
  Diagnostics d;
  TargetDoc doc = translate_spec(cs, System::Ab, d);
  CHECK_FALSE(d.has_errors());
  REQUIRE(d.items().size() == 1);
  CHECK(d.items().front().code == codes::CtxChoice);
  CHECK(testing::contains_lines(doc.render(), "forall G H M, xG G -> xG H -> {G |- is_tm M} -> {G |- ok M} -> {H |- ok M}."));
}

TEST_CASE("documents end with one newline and separate blocks by a blank line") {
  std::string ab = translated(System::Ab);
  CHECK(ab.back() == '\n');
  CHECK(ab.substr(ab.size() - 2) != "\n\n");
  CHECK(ab.find("\n\n\n") == std::string::npos);
}
