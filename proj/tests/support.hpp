#pragma once

// Test-side helpers: a named-variable lambda calculus used as an oracle
// against the library's de Bruijn machinery, random generators, and small
// file utilities.

#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbi/ast.hpp"
#include "orbi/context.hpp"
#include "orbi/syntax.hpp"
#include "orbi/translate.hpp"

namespace testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string corpus_path() { return std::string(ORBI_SOURCE_DIR) + "/corpus/eq.orbi"; }
inline std::string corpus_text() { return read_file(corpus_path()); }
inline std::string golden(const std::string& name) {
  return read_file(std::string(ORBI_SOURCE_DIR) + "/tests/golden/" + name);
}

/// `needle` occurs in `hay` as a run of whole lines.
inline bool contains_lines(const std::string& hay, std::string needle) {
  while (!needle.empty() && needle.back() == '\n') needle.pop_back();
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + 1)) {
    bool start = pos == 0 || hay[pos - 1] == '\n';
    size_t end = pos + needle.size();
    bool stop = end == hay.size() || hay[end] == '\n';
    if (start && stop) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Named lambda terms. Substitution renames binders to avoid capture; this is
// the textbook definition, written independently of the library.

namespace named {

struct Node;
using Ref = std::shared_ptr<const Node>;
struct Node {
  enum Kind { Var, Lam, App } kind;
  std::string name;  // Var, Lam binder
  Ref a, b;          // Lam body in a; App fn in a, arg in b
};

inline Ref var(std::string n) { return std::make_shared<Node>(Node{Node::Var, std::move(n), {}, {}}); }
inline Ref lam(std::string n, Ref body) {
  return std::make_shared<Node>(Node{Node::Lam, std::move(n), std::move(body), {}});
}
inline Ref app(Ref f, Ref x) { return std::make_shared<Node>(Node{Node::App, "", std::move(f), std::move(x)}); }

inline int& counter() {
  static thread_local int c = 0;
  return c;
}
inline std::string fresh() { return "_v" + std::to_string(counter()++); }

inline Ref from_lib(const orbi::TermRef& t, std::vector<std::string>& env) {
  using orbi::Term;
  if (const auto* v = t->as<Term::Var>()) {
    if (v->index < 0 || static_cast<size_t>(v->index) >= env.size()) return var("?loose");
    return var(env[env.size() - 1 - static_cast<size_t>(v->index)]);
  }
  if (const auto* c = t->as<Term::Const>()) return var(c->name);
  if (const auto* l = t->as<Term::Lam>()) {
    std::string x = fresh();
    env.push_back(x);
    Ref body = from_lib(l->body, env);
    env.pop_back();
    return lam(x, body);
  }
  const auto* a = t->as<Term::App>();
  return app(from_lib(a->fn, env), from_lib(a->arg, env));
}
inline Ref from_lib(const orbi::TermRef& t) {
  std::vector<std::string> env;
  return from_lib(t, env);
}

inline void free_vars(const Ref& t, std::set<std::string>& out, std::set<std::string> bound = {}) {
  switch (t->kind) {
    case Node::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      break;
    case Node::Lam:
      bound.insert(t->name);
      free_vars(t->a, out, bound);
      break;
    case Node::App:
      free_vars(t->a, out, bound);
      free_vars(t->b, out, bound);
      break;
  }
}

/// t[x := s]
inline Ref subst(const Ref& t, const std::string& x, const Ref& s) {
  switch (t->kind) {
    case Node::Var:
      return t->name == x ? s : t;
    case Node::App:
      return app(subst(t->a, x, s), subst(t->b, x, s));
    case Node::Lam: {
      if (t->name == x) return t;
      std::set<std::string> fv;
      free_vars(s, fv);
      if (fv.count(t->name)) {
        std::string y = fresh();
        return lam(y, subst(subst(t->a, t->name, var(y)), x, s));
      }
      return lam(t->name, subst(t->a, x, s));
    }
  }
  return t;
}

inline Ref normalize(const Ref& t) {
  switch (t->kind) {
    case Node::Var:
      return t;
    case Node::Lam:
      return lam(t->name, normalize(t->a));
    case Node::App: {
      Ref f = normalize(t->a);
      if (f->kind == Node::Lam) return normalize(subst(f->a, f->name, t->b));
      return app(f, normalize(t->b));
    }
  }
  return t;
}

inline bool alpha_eq(const Ref& a, const Ref& b, std::vector<std::pair<std::string, std::string>>& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Node::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        bool l = it->first == a->name, r = it->second == b->name;
        if (l || r) return l && r;
      }
      return a->name == b->name;
    }
    case Node::Lam: {
      env.emplace_back(a->name, b->name);
      bool ok = alpha_eq(a->a, b->a, env);
      env.pop_back();
      return ok;
    }
    case Node::App:
      return alpha_eq(a->a, b->a, env) && alpha_eq(a->b, b->b, env);
  }
  return false;
}
inline bool alpha_eq(const Ref& a, const Ref& b) {
  std::vector<std::pair<std::string, std::string>> env;
  return alpha_eq(a, b, env);
}

// Simple types over one base type, written as strings: "o", "(A>B)".
inline std::string arrow(const std::string& a, const std::string& b) { return "(" + a + ">" + b + ")"; }

/// Splits "(A>B)" into A and B.
inline bool split(const std::string& t, std::string& a, std::string& b) {
  if (t.size() < 2 || t.front() != '(') return false;
  int depth = 0;
  for (size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    if (t[i] == ')') --depth;
    if (t[i] == '>' && depth == 0) {
      a = t.substr(1, i - 1);
      b = t.substr(i + 1, t.size() - i - 2);
      return true;
    }
  }
  return false;
}

/// Church-style checking with lambda domains taken from the expected type.
inline bool check(const Ref& t, const std::string& ty, std::map<std::string, std::string> ctx);

inline std::optional<std::string> infer(const Ref& t, const std::map<std::string, std::string>& ctx) {
  if (t->kind == Node::Var) {
    auto it = ctx.find(t->name);
    if (it == ctx.end()) return std::nullopt;
    return it->second;
  }
  if (t->kind == Node::App) {
    if (t->a->kind == Node::Lam) {
      auto at = infer(t->b, ctx);
      if (!at) return std::nullopt;
      auto inner = ctx;
      inner[t->a->name] = *at;
      return infer(subst(t->a->a, t->a->name, var(t->a->name)), inner);
    }
    auto ft = infer(t->a, ctx);
    std::string a, b;
    if (!ft || !split(*ft, a, b) || !check(t->b, a, ctx)) return std::nullopt;
    return b;
  }
  return std::nullopt;
}

inline bool check(const Ref& t, const std::string& ty, std::map<std::string, std::string> ctx) {
  if (t->kind == Node::Lam) {
    std::string a, b;
    if (!split(ty, a, b)) return false;
    ctx[t->name] = a;
    return check(t->a, b, ctx);
  }
  auto got = infer(t, ctx);
  return got && *got == ty;
}

}  // namespace named

// ---------------------------------------------------------------------------
// Generators.

/// Signature used for random terms: one base type and four constructors.
inline const char* kTermSig =
    "%% Syntax\n"
    "tm: type.\n"
    "z: tm.\n"
    "app: tm -> tm -> tm.\n"
    "lam: (tm -> tm) -> tm.\n"
    "pair: tm -> (tm -> tm) -> tm.\n";

inline std::map<std::string, std::string> term_sig_types() {
  std::string o = "o", oo = named::arrow("o", "o");
  return {{"z", o},
          {"app", named::arrow(o, named::arrow(o, o))},
          {"lam", named::arrow(oo, o)},
          {"pair", named::arrow(o, named::arrow(oo, o))}};
}

/// Random well-typed terms of simple type, built directly as de Bruijn terms
/// and containing beta-redexes. With `checkable`, a redex argument of
/// function type is never a bare lambda, since a bidirectional checker cannot
/// infer the type of `(\\x. M) (\\y. N)`.
class TermGen {
 public:
  explicit TermGen(unsigned seed, bool checkable = false) : rng_(seed), checkable_(checkable) {}

  orbi::TermRef gen(const std::string& ty, int depth) { return gen_at(ty, depth); }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  orbi::TermRef var_ref(size_t pos) {
    return orbi::mk_var(static_cast<int>(ctx_.size() - 1 - pos), ctx_[pos].first);
  }

  orbi::TermRef gen_at(const std::string& ty, int depth) {
    std::string a, b;
    if (named::split(ty, a, b)) {
      ctx_.emplace_back(hint(), a);
      orbi::TermRef body = gen_at(b, depth - 1);
      ctx_.pop_back();
      return orbi::mk_lam(ctx_.empty() ? "x" : "y", body);
    }
    // base type
    std::vector<size_t> base_vars, fn_vars;
    for (size_t i = 0; i < ctx_.size(); ++i) {
      if (ctx_[i].second == "o") base_vars.push_back(i);
      if (ctx_[i].second == named::arrow("o", "o")) fn_vars.push_back(i);
    }
    if (depth <= 0) {
      if (!base_vars.empty() && pick(2)) return var_ref(base_vars[pick(static_cast<int>(base_vars.size()))]);
      return orbi::mk_const("z");
    }
    switch (pick(7)) {
      case 0:
        return orbi::mk_apps(orbi::mk_const("app"), {gen_at("o", depth - 1), gen_at("o", depth - 1)});
      case 1:
        return orbi::mk_app(orbi::mk_const("lam"), gen_at(named::arrow("o", "o"), depth - 1));
      case 2:
        return orbi::mk_apps(orbi::mk_const("pair"),
                             {gen_at("o", depth - 1), gen_at(named::arrow("o", "o"), depth - 1)});
      case 3: {  // redex at base type
        std::string dom = pick(2) ? "o" : named::arrow("o", "o");
        orbi::TermRef arg = checkable_ && dom != "o" ? neutral_fn(depth - 1) : gen_at(dom, depth - 1);
        ctx_.emplace_back(hint(), dom);
        orbi::TermRef body = gen_at("o", depth - 1);
        ctx_.pop_back();
        return orbi::mk_app(orbi::mk_lam("r", body), arg);
      }
      case 4:
        if (!fn_vars.empty())
          return orbi::mk_app(var_ref(fn_vars[pick(static_cast<int>(fn_vars.size()))]), gen_at("o", depth - 1));
        [[fallthrough]];
      case 5:
        if (!base_vars.empty()) return var_ref(base_vars[pick(static_cast<int>(base_vars.size()))]);
        [[fallthrough]];
      default:
        return orbi::mk_const("z");
    }
  }

  // An inferable term of type o -> o.
  orbi::TermRef neutral_fn(int depth) {
    for (size_t i = ctx_.size(); i-- > 0;)
      if (ctx_[i].second == named::arrow("o", "o") && pick(2)) return var_ref(i);
    return orbi::mk_app(orbi::mk_const("app"), gen_at("o", depth));
  }

  std::string hint() { return std::string(1, static_cast<char>('a' + ctx_.size() % 20)); }

  std::mt19937 rng_;
  bool checkable_;
  std::vector<std::pair<std::string, std::string>> ctx_;  // (hint, simple type)
};

/// Signature for random rules: two syntax constructors, a binder, and three
/// judgments of arity one and two.
inline const char* kRuleSig =
    "%% Syntax\n"
    "tm: type.\n"
    "z: tm.\n"
    "app: tm -> tm -> tm.\n"
    "lam: (tm -> tm) -> tm.\n"
    "%% Judgments\n"
    "ok: tm -> type.\n"
    "eq: tm -> tm -> type.\n"
    "red: tm -> tm -> type.\n";

/// Random well-typed rule text over kRuleSig: schematic variables `M1..M3`
/// of type tm and `F1, F2` of type tm -> tm (always applied to one bound
/// variable, or eta-expanded under `lam`); premises nest `{x:tm}` and
/// embedded implications up to the given depth.
class RuleGen {
 public:
  explicit RuleGen(unsigned seed) : rng_(seed) {}

  std::string rule(const std::string& name, int depth) {
    bound_.clear();
    std::string s = name + ":";
    int premises = pick(3);
    for (int i = 0; i < premises; ++i) s += " " + premise(depth, true) + " ->";
    return s + " " + atom(depth) + ".";
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string term(int depth) {
    int choice = pick(depth <= 0 ? 3 : 6);
    switch (choice) {
      case 0:
        return "M" + std::to_string(1 + pick(3));
      case 1:
        if (!bound_.empty()) return bound_[static_cast<size_t>(pick(static_cast<int>(bound_.size())))];
        return "z";
      case 2:
        if (!bound_.empty())
          return "(F" + std::to_string(1 + pick(2)) + " " +
                 bound_[static_cast<size_t>(pick(static_cast<int>(bound_.size())))] + ")";
        return "z";
      case 3:
        return "(app " + term(depth - 1) + " " + term(depth - 1) + ")";
      case 4: {
        std::string x = next_var();
        bound_.push_back(x);
        std::string body = term(depth - 1);
        bound_.pop_back();
        return "(lam (\\" + x + ". " + body + "))";
      }
      default: {
        std::string x = next_var();
        return "(lam (\\" + x + ". F" + std::to_string(1 + pick(2)) + " " + x + "))";
      }
    }
  }

  std::string atom(int depth) {
    switch (pick(3)) {
      case 0: return "ok " + term(depth);
      case 1: return "eq " + term(depth) + " " + term(depth);
      default: return "red " + term(depth) + " " + term(depth);
    }
  }

  std::string premise(int depth, bool top) {
    if (depth <= 0) return atom(1);
    switch (pick(3)) {
      case 0: {
        std::string x = next_var();
        bound_.push_back(x);
        std::string body = premise(depth - 1, false);
        bound_.pop_back();
        return (top ? "({" : "{") + x + ":tm} " + body + (top ? ")" : "");
      }
      case 1: {
        std::string hyp = atom(1);
        std::string body = premise(depth - 1, false);
        return (top ? "(" : "") + hyp + " -> " + body + (top ? ")" : "");
      }
      default:
        return atom(depth);
    }
  }

  std::string next_var() {
    static const char* names[] = {"x", "y", "w", "v", "u"};
    for (const char* n : names)
      if (std::find(bound_.begin(), bound_.end(), n) == bound_.end()) return n;
    return "x" + std::to_string(bound_.size());
  }

  std::mt19937 rng_;
  std::vector<std::string> bound_;
};

/// Random (not necessarily well-typed) specs for print/parse round trips.
class SpecGen {
 public:
  explicit SpecGen(unsigned seed) : rng_(seed) {}

  orbi::OrbiSpec spec() {
    using namespace orbi;
    OrbiSpec s;
    s.file = "<gen>";
    families_.clear();
    schemas_.clear();
    int nfam = 1 + pick(3);
    for (int i = 0; i < nfam; ++i) families_.push_back("f" + std::to_string(i));
    int nsch = 1 + pick(2);
    for (int i = 0; i < nsch; ++i) schemas_.push_back("S" + std::to_string(i) + "G");

    for (const auto& f : families_)
      add(s, Section::Syntax, Decl{f, mk_type(), 0});
    for (int i = 0, n = pick(3); i < n; ++i)
      add(s, Section::Syntax, Decl{"c" + std::to_string(i), tp(2, 0), 0});
    for (int i = 0, n = 1 + pick(2); i < n; ++i)
      add(s, Section::Judgments, Decl{"j" + std::to_string(i), kind(2, 0), 0});
    for (int i = 0, n = pick(3); i < n; ++i)
      add(s, Section::Rules, Decl{"r" + std::to_string(i), tp(3, 0), 0});
    for (const auto& name : schemas_) {
      Schema sc{name, {}};
      for (int i = 0, n = 1 + pick(2); i < n; ++i) sc.alternatives.push_back(block());
      add(s, Section::Schemas, sc);
    }
    for (int i = 0, n = pick(2); i < n; ++i) {
      InductiveDef d;
      d.name = "R" + std::to_string(i);
      int arity = 1 + pick(2);
      for (int k = 0; k < arity; ++k) d.params.emplace_back("g" + std::to_string(k), pick_of(schemas_));
      for (int c = 0, n2 = 1 + pick(2); c < n2; ++c) {
        PrpRef body = rel_app(d.name, arity, true);
        if (pick(2)) body = mk_prp(Prp::Imp{rel_app(d.name, arity, false), body});
        d.clauses.push_back({d.name + "_c" + std::to_string(c), body});
      }
      add(s, Section::Definitions, d);
    }
    for (int i = 0, n = 1 + pick(3); i < n; ++i) {
      Annotation a;
      a.what = static_cast<What>(pick(3));
      a.systems.insert(static_cast<System>(pick(4)));
      if (pick(2)) a.systems.insert(static_cast<System>(pick(4)));
      a.dest.name = pick(2) ? "r0" : "M";
      if (pick(2)) a.dest.owner = "t0";
      add(s, Section::Directives, a);
    }
    for (int i = 0, n = 1 + pick(2); i < n; ++i)
      add(s, Section::Theorems, Theorem{"t" + std::to_string(i), prp(3)});
    return s;
  }

 private:
  template <class T>
  void add(orbi::OrbiSpec& s, orbi::Section sec, T node) {
    orbi::Item it;
    it.section = sec;
    it.node = std::move(node);
    s.items.push_back(std::move(it));
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  const std::string& pick_of(const std::vector<std::string>& v) {
    return v[static_cast<size_t>(pick(static_cast<int>(v.size())))];
  }

  orbi::TermRef term(int depth, int binders) {
    using namespace orbi;
    int choice = pick(depth <= 0 ? 2 : 4);
    if (choice == 0 && binders > 0) return mk_var(pick(binders), "x");
    if (choice <= 1) {
      static const std::vector<std::string> names = {"a", "b", "M", "N1", "k'", "x"};
      return mk_const(pick_of(names));
    }
    if (choice == 2) return mk_app(term(depth - 1, binders), term(depth - 1, binders));
    return mk_lam(pick(2) ? "x" : "y", term(depth - 1, binders + 1));
  }

  orbi::TpRef atom(int depth, int binders) {
    std::vector<orbi::TermRef> args;
    for (int i = 0, n = pick(3); i < n; ++i) args.push_back(term(depth, binders));
    return orbi::mk_atom(pick_of(families_), std::move(args));
  }

  orbi::TpRef tp(int depth, int binders) {
    using namespace orbi;
    switch (depth <= 0 ? 0 : pick(3)) {
      case 0: return atom(1, binders);
      case 1: return mk_arrow(tp(depth - 1, binders), tp(depth - 1, binders));
      default: return mk_pi(pick(2) ? "x" : "M", tp(depth - 1, binders), tp(depth - 1, binders + 1));
    }
  }

  orbi::KindRef kind(int depth, int binders) {
    using namespace orbi;
    switch (depth <= 0 ? 0 : pick(3)) {
      case 0: return mk_type();
      case 1: return mk_karrow(tp(1, binders), kind(depth - 1, binders));
      default: return mk_kpi("x", tp(1, binders), kind(depth - 1, binders + 1));
    }
  }

  orbi::Block block() {
    orbi::Block b;
    for (int i = 0, n = 1 + pick(3); i < n; ++i)
      b.entries.push_back({"l" + std::to_string(i), tp(1, 0)});
    return b;
  }

  orbi::CtxPattern ctx(bool allow_blocks) {
    orbi::CtxPattern c;
    if (pick(3)) c.head = "g" + std::to_string(pick(2));
    if (allow_blocks)
      for (int i = 0, n = pick(3); i < n; ++i) c.entries.push_back({"b" + std::to_string(i), block()});
    return c;
  }

  orbi::PrpRef rel_app(const std::string& name, int arity, bool blocks) {
    orbi::Prp::RelApp r{name, {}};
    for (int i = 0; i < arity; ++i) r.ctxs.push_back(ctx(blocks));
    return orbi::mk_prp(std::move(r));
  }

  orbi::PrpRef prp(int depth) {
    using namespace orbi;
    if (depth <= 0) {
      switch (pick(5)) {
        case 0: return mk_prp(Prp::True{});
        case 1: return mk_prp(Prp::False{});
        case 2: return mk_prp(Prp::TermEq{term(1, 0), term(1, 0)});
        case 3: return rel_app("R0", 1 + pick(2), true);
        default: {
          Prp::Judgment j{ctx(true), "j0", {}};
          for (int i = 0, n = pick(3); i < n; ++i) j.args.push_back(term(1, 0));
          return mk_prp(std::move(j));
        }
      }
    }
    switch (pick(7)) {
      case 0: return mk_prp(Prp::And{prp(depth - 1), prp(depth - 1)});
      case 1: return mk_prp(Prp::Or{prp(depth - 1), prp(depth - 1)});
      case 2: return mk_prp(Prp::Imp{prp(depth - 1), prp(depth - 1)});
      case 3: return mk_prp(Prp::ForallCtx{"g" + std::to_string(pick(2)), pick_of(schemas_), prp(depth - 1)});
      case 4: return mk_prp(Prp::ForallTm{pick(2) ? "M" : "N", mk_atom(pick_of(families_)), prp(depth - 1)});
      case 5: return mk_prp(Prp::ExistsTm{"K", atom(1, 0), prp(depth - 1)});
      default: return prp(0);
    }
  }

  std::mt19937 rng_;
  std::vector<std::string> families_, schemas_;
};

// ---------------------------------------------------------------------------
// Erasure of well-formedness information from a translated clause: drop wf
// atoms, drop implications whose hypothesis vanished, drop pi binders that
// are no longer mentioned.

inline bool goal_mentions(const orbi::GoalRef& g, const std::string& x) {
  if (const auto* a = g->as<orbi::Goal::Atom>()) {
    for (const auto& t : a->args)
      if (orbi::mentions_free(t, x)) return true;
    return false;
  }
  if (const auto* p = g->as<orbi::Goal::Pi>()) return p->var != x && goal_mentions(p->body, x);
  const auto* i = g->as<orbi::Goal::Imp>();
  return goal_mentions(i->hyp, x) || goal_mentions(i->body, x);
}

inline orbi::GoalRef erase_wf(const orbi::GoalRef& g) {
  using orbi::Goal;
  if (const auto* a = g->as<Goal::Atom>()) return a->wf ? nullptr : g;
  if (const auto* p = g->as<Goal::Pi>()) {
    orbi::GoalRef body = erase_wf(p->body);
    if (!body) return nullptr;
    return goal_mentions(body, p->var) ? orbi::mk_goal_pi(p->var, body) : body;
  }
  const auto* i = g->as<Goal::Imp>();
  orbi::GoalRef hyp = erase_wf(i->hyp), body = erase_wf(i->body);
  if (!body) return nullptr;
  return hyp ? orbi::mk_goal_imp(hyp, body) : body;
}

inline orbi::Clause erase_wf(const orbi::Clause& c) {
  orbi::Clause out = c;
  out.body.clear();
  for (const auto& g : c.body)
    if (auto e = erase_wf(g)) out.body.push_back(e);
  return out;
}

}  // namespace testing
