#include <doctest.h>

#include "orbi/directives.hpp"
#include "support.hpp"

using namespace orbi;

namespace {

CheckedSpec load(const std::string& text) {
  Diagnostics d;
  CheckedSpec cs = check_source(text, d);
  REQUIRE_FALSE(d.has_errors());
  return cs;
}

std::vector<std::string> resolve_codes(const std::string& text, System target) {
  CheckedSpec cs = load(text);
  Diagnostics d;
  resolve(cs, target, d);
  std::vector<std::string> out;
  for (const auto& x : d.items()) out.push_back(x.code);
  return out;
}

std::string with_directive(const std::string& line) {
  std::string src = testing::corpus_text();
  auto pos = src.find("\n%% Theorems");
  return src.insert(pos, line + "\n");
}

}  // namespace

TEST_CASE("the corpus resolves per target") {
  CheckedSpec cs = load(testing::corpus_text());
  AnnotationTable ab = resolve_or_throw(cs, System::Ab);
  CHECK(ab.wf_families == std::set<std::string>{"tm"});
  CHECK(ab.explicit_rules == std::set<std::string>{"de_l", "de_r"});
  CHECK(ab.explicit_schemas == std::set<std::string>{"xG"});
  CHECK(ab.param_explicit("Rxa", "g"));
  CHECK_FALSE(ab.param_explicit("Rxa", "h"));
  CHECK(ab.theorem_var_explicit("reflG", "M"));

  AnnotationTable hy = resolve_or_throw(cs, System::Hy);
  CHECK(hy.explicit_schemas == std::set<std::string>{"daG", "xG"});

  AnnotationTable bel = resolve_or_throw(cs, System::Bel);
  CHECK(bel.wf_families.empty());
  CHECK(bel.explicit_rules.empty());
  CHECK(bel.theorem_var_explicit("reflG", "M"));

  AnnotationTable tw = resolve_or_throw(cs, System::Tw);
  CHECK(tw.theorem_var_explicit("reflG", "M") == false);
}

TEST_CASE("resolution is deterministic") {
  CheckedSpec cs = load(testing::corpus_text());
  CHECK(resolve_or_throw(cs, System::Hy) == resolve_or_throw(cs, System::Hy));
}

TEST_CASE("unknown and ambiguous destinations") {
  CHECK(resolve_codes(with_directive("%% explicit [ab] in de_q"), System::Ab) ==
        std::vector<std::string>{codes::UnknownDest});
  // g is a parameter of both relations
  CHECK(resolve_codes(with_directive("%% explicit [ab] in g"), System::Ab) ==
        std::vector<std::string>{codes::AmbiguousDest});
  CHECK(resolve_codes(with_directive("%% explicit [ab] in Rxa.q"), System::Ab) ==
        std::vector<std::string>{codes::UnknownDest});
}

TEST_CASE("directives only matter for the systems they name") {
  CHECK(resolve_codes(with_directive("%% explicit [ab] in de_q"), System::Hy).empty());
}

TEST_CASE("conflicting directives cancel out") {
  std::string src = with_directive("%% implicit [ab] in Rxa.g");
  CHECK(resolve_codes(src, System::Ab) == std::vector<std::string>{codes::Conflict});
  CheckedSpec cs = load(src);
  Diagnostics d;
  AnnotationTable t = resolve(cs, System::Ab, d);
  CHECK_FALSE(t.param_explicit("Rxa", "g"));
  CHECK(resolve_codes(src, System::Hy).empty());
}

TEST_CASE("directive kinds must suit their destinations") {
  CHECK(resolve_codes(with_directive("%% wf [ab] in de_l"), System::Ab) ==
        std::vector<std::string>{codes::Directive});
  CHECK(resolve_codes(with_directive("%% wf [ab] in aeq"), System::Ab) ==
        std::vector<std::string>{codes::Level});
  CHECK(resolve_codes(with_directive("%% explicit [ab] in tm"), System::Ab) ==
        std::vector<std::string>{codes::Directive});
  CHECK(resolve_codes(with_directive("%% explicit [ab] in reflR.g"), System::Ab) ==
        std::vector<std::string>{codes::Directive});
}

TEST_CASE("explicit theorem variables need a wf predicate for ab and hy") {
  std::string src = testing::corpus_text();
  auto pos = src.find("%% wf [hy,ab] in tm\n");
  src.erase(pos, std::string("%% wf [hy,ab] in tm\n").size());
  auto c = resolve_codes(src, System::Ab);
  CHECK(std::find(c.begin(), c.end(), codes::Directive) != c.end());
  CHECK(resolve_codes(src, System::Bel).empty());
}
