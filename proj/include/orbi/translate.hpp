#pragma once

// ORBI2X: well-formedness predicate generation and rendering of checked
// specs into the Abella (ab), Hybrid/Coq (hy), Beluga (bel) and Twelf (tw)
// dialects.

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "orbi/context.hpp"
#include "orbi/directives.hpp"

namespace orbi {

class Goal;
using GoalRef = std::shared_ptr<const Goal>;

/// Hereditary Harrop goals. Variables (clause variables and pi-bound ones)
/// appear in terms as named constants.
class Goal {
 public:
  struct Atom {
    std::string pred;
    std::vector<TermRef> args;
    bool wf = false;  // an is_f well-formedness atom
  };
  struct Pi {
    std::string var;
    GoalRef body;
  };
  struct Imp {
    GoalRef hyp;
    GoalRef body;
  };
  using Node = std::variant<Atom, Pi, Imp>;

  explicit Goal(Node n) : node(std::move(n)) {}

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }

  Node node;
};

GoalRef mk_goal_atom(std::string pred, std::vector<TermRef> args,
                     bool wf = false);
GoalRef mk_goal_pi(std::string var, GoalRef body);
GoalRef mk_goal_imp(GoalRef hyp, GoalRef body);

struct Clause {
  std::string name;  // rule name, or is_f_c for generated wf clauses
  Goal::Atom head;
  std::vector<GoalRef> body;
  std::vector<std::pair<std::string, TpRef>> vars;  // universally quantified
};

/// `is_f` clauses, one per constructor of every family in `wf_families`.
/// Throws E-LEVEL for a family that is not level 0.
std::vector<Clause> gen_wf_predicates(const Signature& sig,
                                      const std::set<std::string>& wf_families);

/// `rule` must be a checked Rules entry (closed by reconstruction).
/// Throws E-SHAPE.
Clause translate_rule(const Signature& sig, const Decl& rule,
                      const AnnotationTable& ann);

/// `head :- g1, g2.` in Abella syntax.
std::string render_ab(const Clause& c);
std::string render_ab(const GoalRef& g);
/// `| name : forall (...), prog head body` in Hybrid syntax (no terminator).
std::string render_hy(const Clause& c);

struct DocBlock {
  std::string source;  // the ORBI item the block came from
  std::string text;    // no trailing newline
};

struct TargetDoc {
  System target = System::Ab;
  std::vector<DocBlock> blocks;

  /// Blocks separated by one blank line, newline-terminated.
  std::string render() const;
};

/// Throw E-EMPTY when a block would be rendered without any atoms.
DocBlock translate_schema(const CheckedSpec& cs, const Schema& s,
                          const AnnotationTable& ann);
DocBlock translate_relation(const CheckedSpec& cs, const InductiveDef& d,
                            const AnnotationTable& ann);
/// Throws E-NOCTX; context-choice warnings go to `diags`.
DocBlock translate_theorem(const CheckedSpec& cs, const Theorem& t,
                           const AnnotationTable& ann, Diagnostics& diags,
                           const SourceLoc& loc = {});

/// Resolves directives for `target` and renders the whole spec. Errors are
/// reported per item; the document holds every block that translated.
TargetDoc translate_spec(const CheckedSpec& cs, System target,
                         Diagnostics& diags);

}  // namespace orbi
