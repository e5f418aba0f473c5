#include <doctest.h>

#include "orbi/lint.hpp"
#include "support.hpp"

using namespace orbi;

namespace {

std::vector<Diagnostic> lint_text(const std::string& text) {
  Diagnostics d;
  CheckedSpec cs = check_source(text, d);
  for (const auto& x : d.items()) MESSAGE(x.code << " " << x.message);
  REQUIRE_FALSE(d.has_errors());
  return lint(cs);
}

std::vector<std::string> codes_of(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

const char* kHead =
    "%% Syntax\ntm: type.\napp: tm -> tm -> tm.\nlam: (tm -> tm) -> tm.\n"
    "%% Judgments\naeq: tm -> tm -> type.\n";

}  // namespace

TEST_CASE("the corpus is lint-clean") { CHECK(lint_text(testing::corpus_text()).empty()); }

TEST_CASE("L1: schematic variables are upper case, eigenvariables lower case") {
  auto ds = lint_text(std::string(kHead) + "%% Rules\nr: aeq m m.\n");
  REQUIRE(codes_of(ds) == std::vector<std::string>{"L1"});
  CHECK(ds[0].severity == Severity::Warning);
  CHECK(ds[0].hint.find("`M`") != std::string::npos);

  CHECK(codes_of(lint_text(std::string(kHead) + "%% Rules\nr: ({X:tm} aeq X X) -> aeq M M.\n")) ==
        std::vector<std::string>{"L1"});
  CHECK(codes_of(lint_text(std::string(kHead) + "%% Rules\nr: aeq (lam (\\X. X)) M.\n")) ==
        std::vector<std::string>{"L1"});
}

TEST_CASE("L1: context variables are lower case") {
  std::string src = std::string(kHead) +
                    "%% Schemas\nschema xG = block (x:tm);\n"
                    "%% Theorems\ntheorem t: {G:xG}{M:tm} [G |- aeq M M];\n";
  CHECK(codes_of(lint_text(src)) == std::vector<std::string>{"L1"});
}

TEST_CASE("L2: quantifying over a judgment with a dependency") {
  // The checker already rejects this rule; lint still reports the guideline.
  std::string src = std::string(kHead) +
                    "%% Judgments\nprf: tm -> type.\n"
                    "%% Rules\nr: ({u:aeq M M} prf (F u)) -> aeq M M.\n";
  Diagnostics d;
  CheckedSpec cs = check_source(src, d);
  CHECK(d.has_errors());
  CHECK(codes_of(lint(cs)) == std::vector<std::string>{"L2"});
}

TEST_CASE("L3: vacuous Pi binders") {
  auto ds = lint_text(std::string(kHead) + "%% Rules\nr: ({x:tm} aeq M M) -> aeq M M.\n");
  CHECK(codes_of(ds) == std::vector<std::string>{"L3"});
  CHECK(codes_of(lint_text("%% Syntax\ntm: type.\n%% Judgments\nj: {x:tm} type.\n")) ==
        std::vector<std::string>{"L3"});
}

TEST_CASE("L4: a variable repeated across blocks of one context") {
  std::string src = std::string(kHead) +
                    "%% Schemas\nschema xG = block (x:tm);\n"
                    "%% Theorems\ntheorem t: {g:xG}{M:tm} [g, b:block (x:tm), c:block (x:tm) |- aeq M M];\n";
  CHECK(codes_of(lint_text(src)) == std::vector<std::string>{"L4"});
}
